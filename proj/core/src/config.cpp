#include "ipmesh/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ipmesh/errors.hpp"

namespace ipmesh {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    const char* begin = v.c_str();
    char* end = nullptr;
    errno = 0;
    const double d = std::strtod(begin, &end);
    if (v.empty() || end != begin + v.size() || errno == ERANGE || !std::isfinite(d)) {
        throw ConfigError("invalid number for '" + key + "': '" + v + "'");
    }
    return d;
}

long long parse_int(const std::string& key, const std::string& v) {
    const char* begin = v.c_str();
    char* end = nullptr;
    errno = 0;
    const long long n = std::strtoll(begin, &end, 10);
    if (v.empty() || end != begin + v.size() || errno == ERANGE) {
        throw ConfigError("invalid integer for '" + key + "': '" + v + "'");
    }
    return n;
}

template <class E>
E parse_enum(const std::string& key, const std::string& v, std::initializer_list<std::pair<const char*, E>> opts) {
    std::string allowed;
    for (const auto& [name, value] : opts) {
        if (v == name) return value;
        allowed += allowed.empty() ? name : std::string("|") + name;
    }
    throw ConfigError("invalid value for '" + key + "': '" + v + "' (expected " + allowed + ")");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "model", "method",   "M",   "dt",       "T",          "L",          "c",         "k",
        "smoothing_passes", "deboor_iterations", "transfer", "z_mode", "tol", "max_iter", "jacobian",
        "seed", "quad_order", "mesh_every"};
    return keys;
}

void apply_setting(SchemeConfig& cfg, const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "model") {
        cfg.model = parse_enum<Model>(key, v, {{"sine-gordon", Model::SineGordon}, {"kdv", Model::Kdv}});
    } else if (key == "method") {
        cfg.method = parse_enum<Method>(
            key, v, {{"DG", Method::DG}, {"DGMM", Method::DGMM}, {"MP", Method::MP}, {"MPMM", Method::MPMM}});
    } else if (key == "M") {
        cfg.M = static_cast<Index>(parse_int(key, v));
    } else if (key == "dt") {
        cfg.dt = parse_double(key, v);
    } else if (key == "T") {
        cfg.T = parse_double(key, v);
    } else if (key == "L") {
        cfg.L = parse_double(key, v);
    } else if (key == "c") {
        cfg.c = parse_double(key, v);
    } else if (key == "k") {
        cfg.monitor.k = parse_double(key, v);
    } else if (key == "smoothing_passes") {
        cfg.monitor.smoothing_passes = static_cast<int>(parse_int(key, v));
    } else if (key == "deboor_iterations") {
        cfg.monitor.deboor_iterations = static_cast<int>(parse_int(key, v));
    } else if (key == "transfer") {
        cfg.transfer = parse_enum<TransferKind>(key, v,
                                                {{"linear", TransferKind::Linear},
                                                 {"cubic", TransferKind::Cubic},
                                                 {"preserving", TransferKind::Preserving}});
    } else if (key == "z_mode") {
        cfg.z_mode = parse_enum<ZMode>(key, v, {{"avf", ZMode::Avf}, {"weighted", ZMode::Weighted}});
    } else if (key == "tol") {
        cfg.solver.tol = parse_double(key, v);
    } else if (key == "max_iter") {
        cfg.solver.max_iter = static_cast<int>(parse_int(key, v));
    } else if (key == "jacobian") {
        cfg.solver.jacobian = parse_enum<JacobianMode>(
            key, v, {{"analytic", JacobianMode::Analytic}, {"finite-difference", JacobianMode::FiniteDifference}});
    } else if (key == "seed") {
        const long long s = parse_int(key, v);
        if (s < 0) throw ConfigError("seed must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "quad_order") {
        cfg.quad_order = static_cast<int>(parse_int(key, v));
    } else if (key == "mesh_every") {
        cfg.mesh_every = static_cast<int>(parse_int(key, v));
    } else {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> parse_key_values(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading config file '" + path + "'");
    return parse_key_values(ss.str());
}

std::string format_config(const SchemeConfig& c) {
    std::ostringstream o;
    o << "model = " << to_string(c.model) << '\n'
      << "method = " << to_string(c.method) << '\n'
      << "M = " << c.M << '\n'
      << "dt = " << fmt(c.dt) << '\n'
      << "T = " << fmt(c.T) << '\n'
      << "L = " << fmt(c.L) << '\n'
      << "c = " << fmt(c.c) << '\n'
      << "k = " << fmt(c.monitor.k) << '\n'
      << "smoothing_passes = " << c.monitor.smoothing_passes << '\n'
      << "deboor_iterations = " << c.monitor.deboor_iterations << '\n'
      << "transfer = " << to_string(c.transfer) << '\n'
      << "z_mode = " << to_string(c.z_mode) << '\n'
      << "tol = " << fmt(c.solver.tol) << '\n'
      << "max_iter = " << c.solver.max_iter << '\n'
      << "jacobian = " << (c.solver.jacobian == JacobianMode::Analytic ? "analytic" : "finite-difference") << '\n'
      << "seed = " << c.seed << '\n'
      << "quad_order = " << c.quad_order << '\n'
      << "mesh_every = " << c.mesh_every << '\n';
    return o.str();
}

}  // namespace ipmesh
