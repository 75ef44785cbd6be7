#include "ipmesh/mesh_adapt.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ipmesh/errors.hpp"

namespace ipmesh {

void MonitorConfig::validate() const {
    if (!(k >= 0.0)) throw DomainError("MonitorConfig: k must be nonnegative");
    if (smoothing_passes < 0) throw DomainError("MonitorConfig: smoothing_passes must be nonnegative");
    if (deboor_iterations < 1) throw DomainError("MonitorConfig: deboor_iterations must be >= 1");
}

Vector monitor_arclength(const Vector& u, const Mesh1D& mesh, double k) {
    const Vector uf = full_nodal(mesh, u);
    const Index M = mesh.intervals();

    Vector slope(M);
    for (Index e = 0; e < M; ++e) slope[e] = (uf[e + 1] - uf[e]) / mesh.spacing(e);

    Vector omega(M + 1);
    auto monitor = [k](double s) { return std::sqrt(1.0 + k * k * s * s); };
    for (Index i = 1; i < M; ++i) omega[i] = monitor(0.5 * (slope[i - 1] + slope[i]));
    if (mesh.periodic()) {
        omega[0] = omega[M] = monitor(0.5 * (slope[M - 1] + slope[0]));
    } else {
        omega[0] = monitor(slope[0]);
        omega[M] = monitor(slope[M - 1]);
    }
    return omega;
}

Vector smooth_monitor(const Vector& omega, int passes, bool periodic) {
    const Index n = omega.size();
    if (n < 3) throw DimensionError("smooth_monitor: need at least 3 values, got " + std::to_string(n));
    if (passes < 0) throw DomainError("smooth_monitor: negative pass count");

    Vector cur = omega;
    Vector next(n);
    for (int p = 0; p < passes; ++p) {
        for (Index i = 1; i + 1 < n; ++i) next[i] = 0.25 * (cur[i - 1] + 2.0 * cur[i] + cur[i + 1]);
        if (periodic) {
            next[0] = 0.25 * (cur[n - 1] + 2.0 * cur[0] + cur[1]);
            next[n - 1] = 0.25 * (cur[n - 2] + 2.0 * cur[n - 1] + cur[0]);
        } else {
            next[0] = next[1];
            next[n - 1] = next[n - 2];
        }
        cur.swap(next);
    }
    return cur;
}

Vector smooth_nodal_monitor(const Vector& omega, const Mesh1D& mesh, int passes) {
    const Index M = mesh.intervals();
    if (omega.size() != M + 1) throw DimensionError("smooth_nodal_monitor: expected M + 1 values");
    if (!mesh.periodic()) return smooth_monitor(omega, passes, false);
    Vector cyc = smooth_monitor(omega.head(M), passes, true);
    Vector out(M + 1);
    out.head(M) = cyc;
    out[M] = cyc[0];
    return out;
}

Mesh1D equidistribute_cells(const Vector& cell_density, const Mesh1D& mesh_old, Index M) {
    const Index m_old = mesh_old.intervals();
    if (cell_density.size() != m_old) throw DimensionError("equidistribute_cells: density size != intervals");
    if (M < 2) throw DomainError("equidistribute_cells: need at least 2 intervals");

    std::vector<double> cum(static_cast<std::size_t>(m_old) + 1, 0.0);
    for (Index e = 0; e < m_old; ++e) {
        const double w = cell_density[e];
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw DomainError("equidistribute: monitor must be positive and finite (interval " +
                              std::to_string(e) + ")");
        }
        cum[e + 1] = cum[e] + w * mesh_old.spacing(e);
    }
    const double total = cum.back();

    std::vector<double> pts(static_cast<std::size_t>(M) + 1);
    pts.front() = mesh_old.a();
    pts.back() = mesh_old.b();
    Index e = 0;
    for (Index j = 1; j < M; ++j) {
        const double target = total * static_cast<double>(j) / static_cast<double>(M);
        while (e + 1 < m_old && cum[e + 1] <= target) ++e;
        const double frac = (target - cum[e]) / (cum[e + 1] - cum[e]);
        pts[j] = mesh_old[e] + frac * mesh_old.spacing(e);
    }
    return Mesh1D(std::move(pts), mesh_old.periodic());
}

namespace {

Vector interval_averages(const Vector& nodal) {
    const Index m = nodal.size() - 1;
    return 0.5 * (nodal.head(m) + nodal.tail(m));
}

Vector resample_linear(const Mesh1D& src, const Vector& values, const Mesh1D& dst) {
    Vector out(dst.intervals() + 1);
    for (Index i = 0; i <= dst.intervals(); ++i) {
        const double x = dst[i];
        const Index e = src.locate(x);
        const double t = (x - src[e]) / src.spacing(e);
        out[i] = (1.0 - t) * values[e] + t * values[e + 1];
    }
    return out;
}

}  // namespace

Mesh1D equidistribute_deboor(const Vector& omega, const Mesh1D& mesh_old, Index M, int iterations) {
    if (omega.size() != mesh_old.intervals() + 1) {
        throw DimensionError("equidistribute_deboor: monitor needs M + 1 nodal values");
    }
    if (iterations < 1) throw DomainError("equidistribute_deboor: iterations must be >= 1");
    for (Index i = 0; i < omega.size(); ++i) {
        if (!(omega[i] > 0.0)) throw DomainError("equidistribute_deboor: nonpositive monitor value");
    }

    Mesh1D current = mesh_old;
    Vector omega_cur = omega;
    for (int it = 0; it < iterations; ++it) {
        Mesh1D next = equidistribute_cells(interval_averages(omega_cur), current, M);
        omega_cur = resample_linear(mesh_old, omega, next);
        current = std::move(next);
    }
    return current;
}

double equidistribution_residual(const Vector& omega, const Mesh1D& mesh) {
    const Index M = mesh.intervals();
    if (omega.size() != M + 1) throw DimensionError("equidistribution_residual: expected M + 1 values");
    Vector mass(M);
    for (Index e = 0; e < M; ++e) mass[e] = 0.5 * (omega[e] + omega[e + 1]) * mesh.spacing(e);
    const double mean = mass.sum() / static_cast<double>(M);
    return (mass.array() - mean).abs().maxCoeff();
}

double cell_density_residual(const Vector& cell_density, const Mesh1D& density_mesh, const Mesh1D& mesh) {
    const Index m_d = density_mesh.intervals();
    if (cell_density.size() != m_d) throw DimensionError("cell_density_residual: density size != intervals");
    std::vector<double> cum(static_cast<std::size_t>(m_d) + 1, 0.0);
    for (Index e = 0; e < m_d; ++e) cum[e + 1] = cum[e] + cell_density[e] * density_mesh.spacing(e);

    auto F = [&](double x) {
        const Index e = density_mesh.locate(x);
        return cum[e] + cell_density[e] * (x - density_mesh[e]);
    };
    const Index M = mesh.intervals();
    const double mean = (F(mesh.b()) - F(mesh.a())) / static_cast<double>(M);
    double worst = 0.0;
    double left = F(mesh[0]);
    for (Index j = 0; j < M; ++j) {
        const double right = F(mesh[j + 1]);
        worst = std::max(worst, std::abs(right - left - mean));
        left = right;
    }
    return worst;
}

Mesh1D adapt_mesh(const Vector& u, const Mesh1D& mesh, const MonitorConfig& config) {
    config.validate();
    Vector omega = monitor_arclength(u, mesh, config.k);
    omega = smooth_nodal_monitor(omega, mesh, config.smoothing_passes);
    return equidistribute_deboor(omega, mesh, mesh.intervals(), config.deboor_iterations);
}

Mesh1D equidistributed_mesh(const std::function<double(double)>& f, const Mesh1D& start,
                            const MonitorConfig& config, int rounds) {
    Mesh1D mesh = start;
    for (int r = 0; r < rounds; ++r) {
        Vector u(mesh.intervals() + 1);
        for (Index i = 0; i <= mesh.intervals(); ++i) u[i] = f(mesh[i]);
        mesh = adapt_mesh(u, mesh, config);
    }
    return mesh;
}

}  // namespace ipmesh
