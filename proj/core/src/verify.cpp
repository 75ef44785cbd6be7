#include "ipmesh/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "ipmesh/errors.hpp"
#include "ipmesh/kdv.hpp"
#include "ipmesh/mesh_adapt.hpp"
#include "ipmesh/sine_gordon.hpp"
#include "ipmesh/time_stepping.hpp"
#include "ipmesh/transfer.hpp"

namespace ipmesh {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vector random_vector(Rng& rng, Index n, double lo, double hi) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = uniform(rng, lo, hi);
    return v;
}

Mesh1D random_periodic_mesh(Rng& rng, double a, double b, Index M) {
    std::vector<double> w(static_cast<std::size_t>(M));
    for (auto& x : w) x = uniform(rng, 0.5, 1.5);
    double total = 0.0;
    for (double x : w) total += x;
    std::vector<double> pts(static_cast<std::size_t>(M) + 1);
    pts[0] = a;
    double acc = 0.0;
    for (Index i = 0; i < M; ++i) {
        acc += w[static_cast<std::size_t>(i)];
        pts[static_cast<std::size_t>(i) + 1] = a + (b - a) * acc / total;
    }
    pts.back() = b;
    return Mesh1D(std::move(pts), true);
}

CheckResult bound_check(std::string name, double value, double bound) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.3e <= %.1e", value, bound);
    return {std::move(name), value <= bound, buf};
}

double max_abs(const SparseMatrix& m) {
    double r = 0.0;
    for (Index col = 0; col < m.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) r = std::max(r, std::abs(it.value()));
    }
    return r;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<CheckResult> out;
    auto guarded = [&](const std::string& name, const std::function<CheckResult()>& f) {
        try {
            out.push_back(f());
        } catch (const std::exception& e) {
            out.push_back({name, false, std::string("exception: ") + e.what()});
        }
    };

    guarded("sine-gordon gradient vs central differences", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const SineGordonEnergy I(random_periodic_mesh(rng, -3.0, 3.0, 16));
            const Vector u = random_vector(rng, I.dim(), -1.0, 1.0);
            const Vector g = I.gradient(u);
            const double eps = 1e-6;
            for (Index i = 0; i < u.size(); ++i) {
                Vector up = u, um = u;
                up[i] += eps;
                um[i] -= eps;
                const double fd = (I.value(up) - I.value(um)) / (2 * eps);
                worst = std::max(worst, std::abs(fd - g[i]) / (1.0 + std::abs(g[i])));
            }
        }
        return bound_check("sine-gordon gradient vs central differences", worst, 1e-6);
    });

    guarded("sine-gordon energy orthogonality of the vector field", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const SineGordonSystem sys(random_periodic_mesh(rng, -5.0, 5.0, 24));
            const Vector u = random_vector(rng, sys.dim(), -2.0, 2.0);
            const Vector g = sys.integral().gradient(u);
            worst = std::max(worst, std::abs(g.dot(sys.vector_field(u))) / (1.0 + g.squaredNorm()));
        }
        return bound_check("sine-gordon energy orthogonality of the vector field", worst, 1e-13);
    });

    guarded("sine-gordon AVF secant property (4-point Gauss)", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const SineGordonSystem sys(random_periodic_mesh(rng, -4.0, 4.0, 32));
            const Vector v = random_vector(rng, sys.dim(), -1.0, 1.0);
            const Vector u = v + 0.2 * random_vector(rng, sys.dim(), -1.0, 1.0);
            const auto& I = sys.integral();
            const double d = secant_defect(I, v, u, sys.avf(v, u));
            worst = std::max(worst, d / (1.0 + std::abs(I.value(u)) + std::abs(I.value(v))));
        }
        return bound_check("sine-gordon AVF secant property (4-point Gauss)", worst, 1e-10);
    });

    guarded("KdV operator identities on random meshes", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const Index M = 8 + static_cast<Index>(rng() % 57);
            const FemOperators ops = assemble_operators(random_periodic_mesh(rng, -5.0, 5.0, M));
            worst = std::max(worst, max_abs(SparseMatrix(ops.B + SparseMatrix(ops.B.transpose()))));
            worst = std::max(worst, max_abs(SparseMatrix(ops.A - SparseMatrix(ops.A.transpose()))));
            worst = std::max(worst, (ops.E * Vector::Ones(M)).lpNorm<Eigen::Infinity>());
            const SparseMatrix Dsum = ops.D.contract1(Vector::Ones(M));
            worst = std::max(worst, max_abs(SparseMatrix(Dsum - ops.A)));
        }
        return bound_check("KdV operator identities on random meshes", worst, 1e-12);
    });

    guarded("KdV closed-form AVF secant property", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const KdvSystem sys(random_periodic_mesh(rng, -6.0, 6.0, 24));
            const Vector v = random_vector(rng, sys.dim(), -1.0, 2.0);
            const Vector u = v + 0.2 * random_vector(rng, sys.dim(), -1.0, 1.0);
            const auto& I = sys.integral();
            const double d = secant_defect(I, v, u, sys.avf(v, u));
            worst = std::max(worst, d / (1.0 + std::abs(I.value(u)) + std::abs(I.value(v))));
        }
        return bound_check("KdV closed-form AVF secant property", worst, 1e-12);
    });

    guarded("KdV skewness and mass conservation of the flow", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const KdvSystem sys(random_periodic_mesh(rng, -6.0, 6.0, 32));
            const Vector u = random_vector(rng, sys.dim(), -1.0, 2.0);
            const Vector g = sys.integral().gradient(u);
            const Vector f = sys.apply_skew(g);
            worst = std::max(worst, std::abs(g.dot(f)) / (1.0 + g.squaredNorm()));
            worst = std::max(worst, std::abs(Vector(sys.operators().A * Vector::Ones(sys.dim())).dot(f)) /
                                        (1.0 + g.norm()));
        }
        return bound_check("KdV skewness and mass conservation of the flow", worst, 1e-12);
    });

    guarded("de Boor exactness for a fixed cell density", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Mesh1D old = random_periodic_mesh(rng, 0.0, 1.0, 10 + static_cast<Index>(rng() % 30));
            const Vector dens = random_vector(rng, old.intervals(), 0.1, 5.0);
            double mass = 0.0;
            for (Index e = 0; e < old.intervals(); ++e) mass += dens[e] * old.spacing(e);
            const Mesh1D fresh = equidistribute_cells(dens, old, 5 + static_cast<Index>(rng() % 40));
            worst = std::max(worst, cell_density_residual(dens, old, fresh) / mass);
        }
        return bound_check("de Boor exactness for a fixed cell density", worst, 1e-12);
    });

    guarded("monotone cubic reproduces nodes and stays within data bounds", [&] {
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Mesh1D mesh = random_periodic_mesh(rng, 0.0, 1.0, 12);
            const Vector u = random_vector(rng, mesh.dofs(), -1.0, 1.0);
            const auto nodes = mesh.points().subspan(0, static_cast<std::size_t>(mesh.dofs()));
            worst = std::max(worst, (interp_cubic_monotone(mesh, u, nodes) - u).lpNorm<Eigen::Infinity>());
            const Vector uf = full_nodal(mesh, u);
            for (Index e = 0; e < mesh.intervals(); ++e) {
                const double lo = std::min(uf[e], uf[e + 1]);
                const double hi = std::max(uf[e], uf[e + 1]);
                std::vector<double> xs;
                for (int s = 1; s < 10; ++s) xs.push_back(mesh[e] + 0.1 * s * mesh.spacing(e));
                const Vector v = interp_cubic_monotone(mesh, u, xs);
                worst = std::max(worst, std::max(v.maxCoeff() - hi, lo - v.minCoeff()));
            }
        }
        return bound_check("monotone cubic reproduces nodes and stays within data bounds", worst, 1e-14);
    });

    guarded("corrected DG step restores the integral after a mesh change", [&] {
        double worst = 0.0;
        SolverConfig cfg;
        for (int trial = 0; trial < 5; ++trial) {
            const double L = 8.0;
            const Mesh1D old_mesh = random_periodic_mesh(rng, -L, L, 40);
            const Mesh1D new_mesh = random_periodic_mesh(rng, -L, L, 40);
            const Vector u = kdv_exact_state(old_mesh, 0.0, 2.0);
            const KdvSystem old_sys(old_mesh);
            const KdvSystem new_sys(new_mesh);
            const double I_prev = old_sys.integral().value(u);
            const Vector u_hat = transfer_nodal(old_mesh, u, new_mesh, InterpKind::Cubic);
            const StepResult r = step_dg_corrected(new_sys, u_hat, I_prev, CorrectionDirection::avf(), 0.01, cfg);
            worst = std::max(worst, std::abs(new_sys.integral().value(r.u) - I_prev) / std::abs(I_prev));
        }
        return bound_check("corrected DG step restores the integral after a mesh change", worst, 1e-11);
    });

    guarded("preserving L2 transfer hits the level set", [&] {
        double worst = 0.0;
        SolverConfig cfg;
        for (int trial = 0; trial < 5; ++trial) {
            const double L = 8.0;
            const Mesh1D old_mesh = random_periodic_mesh(rng, -L, L, 32);
            const Mesh1D new_mesh = random_periodic_mesh(rng, -L, L, 32);
            const Vector u = kdv_exact_state(old_mesh, 0.0, 2.0);
            const KdvSystem old_sys(old_mesh);
            const KdvSystem new_sys(new_mesh);
            const double target = old_sys.integral().value(u);
            const TransferResult t = transfer_preserving_pum(new_sys.operators(), cross_mass_matrix(new_mesh, old_mesh),
                                                             u, new_sys.integral(), target, cfg);
            worst = std::max(worst, std::abs(new_sys.integral().value(t.u) - target) / std::abs(target));
        }
        return bound_check("preserving L2 transfer hits the level set", worst, 1e-11);
    });

    return out;
}

}  // namespace ipmesh
