#include "ipmesh/csv.hpp"

#include <cstdio>
#include <fstream>

#include "ipmesh/errors.hpp"

namespace ipmesh {

namespace {

std::string optional_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_csv(const RunRecord& record) {
    std::string out = kRunCsvHeader;
    out += '\n';
    for (const auto& s : record.steps) {
        out += format_number(s.t) + ',' + format_number(s.energy) + ',' + format_number(s.rel_energy_err) + ',' +
               optional_field(s.l2_err) + ',' + optional_field(s.phase_err) + ',' + optional_field(s.shape_err) +
               ',' + std::to_string(s.newton_iters) + '\n';
    }
    return out;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = kSweepCsvHeader;
    out += '\n';
    for (const auto& r : rows) {
        out += r.param + ',' + format_number(r.value) + ',' + optional_field(r.l2_err) + ',' +
               optional_field(r.phase_err) + ',' + optional_field(r.shape_err) + ',' +
               format_number(r.rel_energy_err) + '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("error writing '" + path + "'");
}

void write_csv(const RunRecord& record, const std::string& path) { write_text_file(path, format_csv(record)); }

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    write_text_file(path, format_sweep_csv(rows));
}

}  // namespace ipmesh
