// ipmesh command line: run | sweep | verify.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ipmesh/config.hpp"
#include "ipmesh/csv.hpp"
#include "ipmesh/errors.hpp"
#include "ipmesh/harness.hpp"
#include "ipmesh/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

struct ConfigOptions {
    std::string file;
    std::map<std::string, std::string> flags;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
    cmd->add_option("--config", opts.file, "key = value configuration file; flags override its entries");
    for (const auto& key : ipmesh::config_keys()) {
        cmd->add_option_function<std::string>(
            "--" + key, [&opts, key](const std::string& v) { opts.flags[key] = v; },
            "SchemeConfig field '" + key + "'");
    }
}

// Model defaults, then the file, then command line flags.
ipmesh::SchemeConfig build_config(const ConfigOptions& opts) {
    std::vector<std::pair<std::string, std::string>> entries;
    if (!opts.file.empty()) entries = ipmesh::read_config_file(opts.file);
    for (const auto& kv : opts.flags) entries.push_back(kv);

    ipmesh::SchemeConfig model_probe;
    for (const auto& [k, v] : entries) {
        if (k == "model") ipmesh::apply_setting(model_probe, k, v);
    }
    ipmesh::SchemeConfig cfg = model_probe.model == ipmesh::Model::SineGordon
                                   ? ipmesh::SchemeConfig::sine_gordon_defaults()
                                   : ipmesh::SchemeConfig::kdv_defaults();
    for (const auto& [k, v] : entries) ipmesh::apply_setting(cfg, k, v);
    cfg.validate();
    return cfg;
}

void emit(const std::string& content, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << content;
        std::cout.flush();
        if (!std::cout) throw ipmesh::IoError("error writing to standard output");
    } else {
        ipmesh::write_text_file(out, content);
    }
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> values;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ipmesh::ConfigError("invalid sweep value '" + item + "'");
        }
        if (used != item.size()) throw ipmesh::ConfigError("invalid sweep value '" + item + "'");
        values.push_back(v);
    }
    if (values.empty()) throw ipmesh::ConfigError("--values must list at least one value");
    return values;
}

ipmesh::SweepAxis parse_axis(const std::string& s) {
    if (s == "M") return ipmesh::SweepAxis::M;
    if (s == "N") return ipmesh::SweepAxis::N;
    if (s == "c") return ipmesh::SweepAxis::C;
    if (s == "epsilon") return ipmesh::SweepAxis::Epsilon;
    throw ipmesh::ConfigError("--param must be one of M|N|c|epsilon, got '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Integral-preserving schemes on moving meshes: sine-Gordon (FDM) and KdV (FEM)"};
    app.require_subcommand(1);

    ConfigOptions run_opts;
    std::string run_out;
    bool print_config = false;
    auto* run = app.add_subcommand("run", "Run one experiment and write the per-step CSV");
    add_config_options(run, run_opts);
    run->add_option("--out,-o", run_out, "output CSV path (default: stdout)");
    run->add_flag("--print-config", print_config, "print the effective configuration to stderr");

    ConfigOptions sweep_opts;
    std::string sweep_out;
    std::string sweep_param;
    std::string sweep_values;
    unsigned threads = 0;
    auto* sw = app.add_subcommand("sweep", "Vary one parameter and write the summary CSV");
    add_config_options(sw, sweep_opts);
    sw->add_option("--param", sweep_param, "M | N | c | epsilon")->required();
    sw->add_option("--values", sweep_values, "comma-separated values")->required();
    sw->add_option("--threads", threads, "concurrent runs (0: hardware concurrency)");
    sw->add_option("--out,-o", sweep_out, "output CSV path (default: stdout)");

    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "Run the randomized invariant suite");
    verify->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*run) {
            const ipmesh::SchemeConfig cfg = build_config(run_opts);
            if (print_config) std::cerr << ipmesh::format_config(cfg);
            const ipmesh::RunRecord record = ipmesh::run_experiment(cfg);
            emit(ipmesh::format_csv(record), run_out);
        } else if (*sw) {
            const ipmesh::SchemeConfig cfg = build_config(sweep_opts);
            const auto rows = ipmesh::sweep(cfg, parse_axis(sweep_param), parse_values(sweep_values), threads);
            emit(ipmesh::format_sweep_csv(rows), sweep_out);
        } else if (*verify) {
            bool ok = true;
            for (const auto& check : ipmesh::run_invariant_suite(seed)) {
                std::printf("%s  %s  (%s)\n", check.passed ? "PASS" : "FAIL", check.name.c_str(),
                            check.detail.c_str());
                ok = ok && check.passed;
            }
            return ok ? kExitOk : kExitSolver;
        }
    } catch (const ipmesh::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ipmesh::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ipmesh::Error& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitOk;
}
