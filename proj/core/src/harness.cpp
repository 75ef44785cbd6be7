#include "ipmesh/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <thread>

#include "ipmesh/kdv.hpp"
#include "ipmesh/metrics.hpp"
#include "ipmesh/sine_gordon.hpp"
#include "ipmesh/time_stepping.hpp"
#include "ipmesh/transfer.hpp"

namespace ipmesh {

void SchemeConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (M < 3) fail("M must be at least 3");
    if (!(dt > 0.0) || !std::isfinite(dt)) fail("dt must be positive");
    if (!(T >= dt * (1.0 - 1e-12)) || !std::isfinite(T)) fail("T must be at least dt");
    if (!(L > 0.0) || !std::isfinite(L)) fail("L must be positive");
    if (model == Model::SineGordon && !(c > 0.0 && c < 1.0)) fail("sine-Gordon needs 0 < c < 1");
    if (model == Model::Kdv && !(c > 0.0 && std::isfinite(c))) fail("KdV needs c > 0");
    if (quad_order < 1) fail("quad_order must be at least 1");
    if (mesh_every < 0) fail("mesh_every must be nonnegative");
    try {
        monitor.validate();
        solver.validate();
    } catch (const Error& e) {
        fail(e.what());
    }
    const double n = T / dt;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) fail("T must be an integer multiple of dt");
}

Index SchemeConfig::steps() const { return static_cast<Index>(std::llround(T / dt)); }

SchemeConfig SchemeConfig::sine_gordon_defaults() {
    SchemeConfig c;
    c.model = Model::SineGordon;
    c.M = 300;
    c.dt = 0.01;
    c.T = 2.0;
    c.L = 30.0;
    c.c = 0.99;
    return c;
}

SchemeConfig SchemeConfig::kdv_defaults() {
    SchemeConfig c;
    c.model = Model::Kdv;
    c.M = 400;
    c.dt = 0.01;
    c.T = 5.0;
    c.L = 100.0;
    c.c = 6.0;
    return c;
}

double RunRecord::max_rel_energy_err() const {
    double m = 0.0;
    for (const auto& s : steps) m = std::max(m, std::abs(s.rel_energy_err));
    return m;
}

namespace {

// Model-specific pieces of the time loop.
class ModelAdapter {
public:
    virtual ~ModelAdapter() = default;
    virtual std::unique_ptr<SemidiscreteSystem> make_system(const Mesh1D& mesh) const = 0;
    virtual Vector initial_state(const Mesh1D& mesh) const = 0;
    virtual double initial_profile(double x) const = 0;
    /// Field driving the monitor function.
    virtual Vector monitor_field(const Vector& state, const Mesh1D& mesh) const = 0;
    virtual Vector transfer(const Mesh1D& mesh_old, const Vector& state, const Mesh1D& mesh_new,
                            const SemidiscreteSystem& system_new, double I_prev) const = 0;
    virtual void record_errors(const Mesh1D& mesh, const Vector& state, double t, StepRecord& rec) const = 0;
};

InterpKind interp_kind(TransferKind t) { return t == TransferKind::Linear ? InterpKind::Linear : InterpKind::Cubic; }

class SineGordonAdapter final : public ModelAdapter {
public:
    explicit SineGordonAdapter(const SchemeConfig& cfg) : cfg_(cfg) {}

    std::unique_ptr<SemidiscreteSystem> make_system(const Mesh1D& mesh) const override {
        return std::make_unique<SineGordonSystem>(mesh, cfg_.quad_order);
    }
    Vector initial_state(const Mesh1D& mesh) const override { return sg_exact_state(mesh, 0.0, cfg_.c); }
    double initial_profile(double x) const override { return sg_exact(x, 0.0, cfg_.c); }
    Vector monitor_field(const Vector& state, const Mesh1D& mesh) const override {
        return state.head(mesh.dofs());
    }
    Vector transfer(const Mesh1D& mesh_old, const Vector& state, const Mesh1D& mesh_new,
                    const SemidiscreteSystem& system_new, double I_prev) const override {
        if (cfg_.transfer == TransferKind::Preserving) {
            return transfer_preserving_fdm(mesh_old, state, mesh_new, 2, system_new.integral(), I_prev, cfg_.solver)
                .u;
        }
        return interpolate_state(mesh_old, state, mesh_new, interp_kind(cfg_.transfer), 2);
    }
    void record_errors(const Mesh1D& mesh, const Vector& state, double t, StepRecord& rec) const override {
        const double c = cfg_.c;
        rec.l2_err = error_l2(mesh, state.head(mesh.dofs()), [&](double x) { return sg_exact(x, t, c); });
    }

private:
    const SchemeConfig& cfg_;
};

class KdvAdapter final : public ModelAdapter {
public:
    explicit KdvAdapter(const SchemeConfig& cfg) : cfg_(cfg) {}

    std::unique_ptr<SemidiscreteSystem> make_system(const Mesh1D& mesh) const override {
        return std::make_unique<KdvSystem>(mesh);
    }
    Vector initial_state(const Mesh1D& mesh) const override { return kdv_exact_state(mesh, 0.0, cfg_.c); }
    double initial_profile(double x) const override { return kdv_exact_periodic(x, 0.0, cfg_.c, cfg_.L); }
    Vector monitor_field(const Vector& state, const Mesh1D&) const override { return state; }
    Vector transfer(const Mesh1D& mesh_old, const Vector& state, const Mesh1D& mesh_new,
                    const SemidiscreteSystem& system_new, double I_prev) const override {
        if (cfg_.transfer == TransferKind::Preserving) {
            const auto& kdv = static_cast<const KdvSystem&>(system_new);
            const SparseMatrix C = cross_mass_matrix(mesh_new, mesh_old);
            return transfer_preserving_pum(kdv.operators(), C, state, kdv.integral(), I_prev, cfg_.solver).u;
        }
        return transfer_nodal(mesh_old, state, mesh_new, interp_kind(cfg_.transfer));
    }
    void record_errors(const Mesh1D& mesh, const Vector& state, double t, StepRecord& rec) const override {
        const double c = cfg_.c;
        const double L = cfg_.L;
        rec.l2_err = error_l2(mesh, state, [&](double x) { return kdv_exact_periodic(x, t, c, L); });
        rec.phase_err = error_phase(mesh, state, c, t);
        rec.shape_err = error_shape(mesh, state, c);
    }

private:
    const SchemeConfig& cfg_;
};

std::unique_ptr<ModelAdapter> make_adapter(const SchemeConfig& cfg) {
    if (cfg.model == Model::SineGordon) return std::make_unique<SineGordonAdapter>(cfg);
    return std::make_unique<KdvAdapter>(cfg);
}

}  // namespace

RunRecord run_experiment(const SchemeConfig& config) {
    config.validate();
    RunRecord record;
    record.config = config;
    const SchemeConfig& cfg = record.config;
    const auto model = make_adapter(cfg);

    Mesh1D mesh = equidistributed_mesh([&](double x) { return model->initial_profile(x); },
                                       Mesh1D::uniform(-cfg.L, cfg.L, cfg.M, true), cfg.monitor);
    std::unique_ptr<SemidiscreteSystem> system = model->make_system(mesh);
    Vector u = model->initial_state(mesh);
    record.initial_energy = system->integral().value(u);
    const double scale = std::abs(record.initial_energy) > 0.0 ? std::abs(record.initial_energy) : 1.0;

    const CorrectionDirection z =
        cfg.z_mode == ZMode::Weighted ? CorrectionDirection::weighted() : CorrectionDirection::avf();
    const Index N = cfg.steps();
    record.steps.reserve(static_cast<std::size_t>(N));
    for (Index n = 1; n <= N; ++n) {
        const double t = static_cast<double>(n) * cfg.dt;
        try {
            const double I_prev = system->integral().value(u);
            Vector u_hat = u;
            if (cfg.moving_mesh()) {
                Mesh1D mesh_new = adapt_mesh(model->monitor_field(u, mesh), mesh, cfg.monitor);
                auto system_new = model->make_system(mesh_new);
                u_hat = model->transfer(mesh, u, mesh_new, *system_new, I_prev);
                mesh = std::move(mesh_new);
                system = std::move(system_new);
            }
            StepResult step;
            switch (cfg.method) {
                case Method::DG: step = step_dg(*system, u_hat, cfg.dt, cfg.solver); break;
                case Method::DGMM:
                    step = step_dg_corrected(*system, u_hat, I_prev, z, cfg.dt, cfg.solver);
                    break;
                case Method::MP:
                case Method::MPMM: step = step_midpoint(*system, u_hat, cfg.dt, cfg.solver); break;
            }
            u = std::move(step.u);

            StepRecord rec;
            rec.t = t;
            rec.energy = system->integral().value(u);
            rec.rel_energy_err = (rec.energy - record.initial_energy) / scale;
            rec.newton_iters = step.iterations;
            model->record_errors(mesh, u, t, rec);
            record.steps.push_back(rec);
        } catch (const SolverError& e) {
            throw RunAborted("step " + std::to_string(n) + " (t = " + std::to_string(t) + "): " + e.what(), n,
                             e.residual_norm());
        }
        if (cfg.mesh_every > 0 && n % cfg.mesh_every == 0) {
            record.meshes.emplace_back(t, std::vector<double>(mesh.points().begin(), mesh.points().end()));
        }
    }
    record.final_mesh.assign(mesh.points().begin(), mesh.points().end());
    record.final_state = u;
    return record;
}

std::vector<SweepRow> sweep(const SchemeConfig& base, SweepAxis axis, const std::vector<double>& values,
                            unsigned threads) {
    std::vector<SchemeConfig> configs;
    configs.reserve(values.size());
    for (double v : values) {
        SchemeConfig cfg = base;
        switch (axis) {
            case SweepAxis::M:
                if (!(v >= 3.0) || v != std::floor(v)) throw ConfigError("sweep over M needs integers >= 3");
                cfg.M = static_cast<Index>(v);
                break;
            case SweepAxis::N:
                if (!(v >= 1.0) || v != std::floor(v)) throw ConfigError("sweep over N needs integers >= 1");
                cfg.dt = cfg.T / v;
                break;
            case SweepAxis::C: cfg.c = v; break;
            case SweepAxis::Epsilon: cfg.c = 1.0 - v; break;
        }
        cfg.validate();
        configs.push_back(cfg);
    }

    std::vector<SweepRow> rows(values.size());
    std::vector<std::exception_ptr> errors(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                const RunRecord rec = run_experiment(configs[i]);
                SweepRow& row = rows[i];
                row.param = to_string(axis);
                row.value = values[i];
                if (!rec.steps.empty()) {
                    const StepRecord& last = rec.steps.back();
                    row.l2_err = last.l2_err;
                    row.phase_err = last.phase_err;
                    row.shape_err = last.shape_err;
                }
                row.rel_energy_err = rec.max_rel_energy_err();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned n_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(configs.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n_threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

std::string to_string(Model m) { return m == Model::SineGordon ? "sine-gordon" : "kdv"; }

std::string to_string(Method m) {
    switch (m) {
        case Method::DG: return "DG";
        case Method::DGMM: return "DGMM";
        case Method::MP: return "MP";
        case Method::MPMM: return "MPMM";
    }
    return "?";
}

std::string to_string(TransferKind t) {
    switch (t) {
        case TransferKind::Linear: return "linear";
        case TransferKind::Cubic: return "cubic";
        case TransferKind::Preserving: return "preserving";
    }
    return "?";
}

std::string to_string(ZMode z) { return z == ZMode::Avf ? "avf" : "weighted"; }

std::string to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::M: return "M";
        case SweepAxis::N: return "N";
        case SweepAxis::C: return "c";
        case SweepAxis::Epsilon: return "epsilon";
    }
    return "?";
}

}  // namespace ipmesh
