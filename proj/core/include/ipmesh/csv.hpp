#pragma once

#include <string>
#include <vector>

#include "ipmesh/harness.hpp"

namespace ipmesh {

inline constexpr const char* kRunCsvHeader = "t,energy,rel_energy_err,l2_err,phase_err,shape_err,newton_iters";
inline constexpr const char* kSweepCsvHeader = "param,value,l2_err,phase_err,shape_err,rel_energy_err";

/// Shortest round-trip-safe form: 17 significant digits.
std::string format_number(double v);

/// Header plus one row per step; missing metrics are empty fields.
std::string format_csv(const RunRecord& record);
std::string format_sweep_csv(const std::vector<SweepRow>& rows);

/// Writes `content` to `path`. Throws IoError naming the path.
void write_text_file(const std::string& path, const std::string& content);

void write_csv(const RunRecord& record, const std::string& path);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace ipmesh
