#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ipmesh/errors.hpp"
#include "ipmesh/mesh.hpp"
#include "ipmesh/mesh_adapt.hpp"
#include "ipmesh/newton.hpp"

namespace ipmesh {

enum class Model { SineGordon, Kdv };
enum class Method { DG, DGMM, MP, MPMM };
enum class TransferKind { Linear, Cubic, Preserving };
enum class ZMode { Avf, Weighted };

struct SchemeConfig {
    Model model = Model::Kdv;
    Method method = Method::DG;
    Index M = 400;
    double dt = 0.01;
    double T = 1.0;
    double L = 100.0;
    double c = 6.0;
    MonitorConfig monitor;
    TransferKind transfer = TransferKind::Cubic;
    ZMode z_mode = ZMode::Avf;
    SolverConfig solver;
    std::uint64_t seed = 0;
    int quad_order = 4;       // AVF quadrature for sine-Gordon
    int mesh_every = 0;       // keep every n-th mesh in the record; 0 keeps none

    /// Throws ConfigError.
    void validate() const;
    /// Number of time steps, round(T / dt).
    Index steps() const;
    bool moving_mesh() const { return method == Method::DGMM || method == Method::MPMM; }

    /// Parameters of the reference sine-Gordon (dt 0.01, M 300, L 30,
    /// c 0.99) and KdV (dt 0.01, M 400, L 100, c 6) experiments.
    static SchemeConfig sine_gordon_defaults();
    static SchemeConfig kdv_defaults();
};

struct StepRecord {
    double t = 0.0;
    double energy = 0.0;
    double rel_energy_err = 0.0;  // (I_n - I_0) / |I_0|
    std::optional<double> l2_err;
    std::optional<double> phase_err;
    std::optional<double> shape_err;
    int newton_iters = 0;
};

struct RunRecord {
    SchemeConfig config;
    double initial_energy = 0.0;
    std::vector<StepRecord> steps;
    std::vector<std::pair<double, std::vector<double>>> meshes;  // (t, points), thinned
    std::vector<double> final_mesh;
    Vector final_state;

    /// max_n |rel_energy_err|
    double max_rel_energy_err() const;
};

/// A run stopped by a stepper or transfer failure.
class RunAborted : public SolverError {
public:
    RunAborted(const std::string& what, Index step, double residual_norm)
        : SolverError(what, residual_norm), step_(step) {}
    Index step() const noexcept { return step_; }

private:
    Index step_;
};

/// Runs one experiment. Fixed-mesh methods use a static mesh equidistributed
/// for the initial condition; moving-mesh methods start on the same mesh and
/// adapt it once per step before transferring and advancing the solution.
/// Deterministic given the config.
RunRecord run_experiment(const SchemeConfig& config);

enum class SweepAxis { M, N, C, Epsilon };

struct SweepRow {
    std::string param;
    double value = 0.0;
    std::optional<double> l2_err;
    std::optional<double> phase_err;
    std::optional<double> shape_err;
    double rel_energy_err = 0.0;
};

/// Runs `base` once per value of the axis (N: dt = T / N; epsilon: c = 1 - eps)
/// and reports the terminal errors and max |rel_energy_err|. Runs execute
/// concurrently on up to `threads` threads (0: hardware concurrency); rows are
/// returned in the order of `values`.
std::vector<SweepRow> sweep(const SchemeConfig& base, SweepAxis axis, const std::vector<double>& values,
                            unsigned threads = 0);

std::string to_string(Model m);
std::string to_string(Method m);
std::string to_string(TransferKind t);
std::string to_string(ZMode z);
std::string to_string(SweepAxis a);

}  // namespace ipmesh
