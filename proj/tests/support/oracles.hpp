#pragma once
// Independent reference computations used only by the tests. None of these
// reuse library code paths beyond the Mesh1D container.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "ipmesh/mesh.hpp"
#include "ipmesh/types.hpp"

namespace ipmesh::testing {

/// Central-difference gradient.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& u, double eps = 1e-6) {
    Vector g(u.size());
    for (Index i = 0; i < u.size(); ++i) {
        Vector p = u, m = u;
        p[i] += eps;
        m[i] -= eps;
        g[i] = (f(p) - f(m)) / (2 * eps);
    }
    return g;
}

/// Adaptive Simpson on [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                        int depth = 50) {
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double l, double r, double fl, double fm, double fr, double whole, int d) -> double {
        const double m = 0.5 * (l + r);
        const double lm = 0.5 * (l + m);
        const double rm = 0.5 * (m + r);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - l) / 6 * (fl + 4 * flm + fm);
        const double right = (r - m) / 6 * (fm + 4 * frm + fr);
        if (d <= 0 || std::abs(left + right - whole) <= 15 * tol) return left + right + (left + right - whole) / 15;
        return rec(l, m, fl, flm, fm, left, d - 1) + rec(m, r, fm, frm, fr, right, d - 1);
    };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return rec(a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), depth);
}

/// Sine-Gordon energy written out with all M + 1 mesh indices: kappa_0 and
/// kappa_M kept separate, du_0 = du_M = u_1 - u_{M-1}, dx_0 = dx_M =
/// x_1 - x_0 + x_M - x_{M-1}, u_M = u_0.
inline double sg_energy_full_index(const Mesh1D& mesh, const Vector& state) {
    const Index M = mesh.intervals();
    auto u = [&](Index i) { return state[i % M]; };
    auto v = [&](Index i) { return state[M + i % M]; };
    double sum = 0.0;
    for (Index i = 0; i <= M; ++i) {
        double kappa, du, dx;
        if (i == 0 || i == M) {
            kappa = i == 0 ? 0.5 * (mesh[1] - mesh[0]) : 0.5 * (mesh[M] - mesh[M - 1]);
            du = u(1) - u(M - 1);
            dx = mesh[1] - mesh[0] + mesh[M] - mesh[M - 1];
        } else {
            kappa = 0.5 * (mesh[i + 1] - mesh[i - 1]);
            du = u(i + 1) - u(i - 1);
            dx = mesh[i + 1] - mesh[i - 1];
        }
        const double s = du / dx;
        sum += kappa * (0.5 * v(i) * v(i) + 0.5 * s * s + 1.0 - std::cos(u(i)));
    }
    return sum;
}

/// Dense periodic hat-function matrices from closed-form element integrals:
/// mass h/3, h/6; stiffness 1/h; convection +-1/2.
struct DenseHatOperators {
    Matrix A, B, E;
};

inline DenseHatOperators dense_hat_operators(const Mesh1D& mesh) {
    const Index M = mesh.intervals();
    DenseHatOperators o{Matrix::Zero(M, M), Matrix::Zero(M, M), Matrix::Zero(M, M)};
    for (Index e = 0; e < M; ++e) {
        const Index i = e, j = (e + 1) % M;
        const double h = mesh.spacing(e);
        o.A(i, i) += h / 3;
        o.A(j, j) += h / 3;
        o.A(i, j) += h / 6;
        o.A(j, i) += h / 6;
        o.E(i, i) += 1 / h;
        o.E(j, j) += 1 / h;
        o.E(i, j) -= 1 / h;
        o.E(j, i) -= 1 / h;
        // B(r, c) = int phi_c phi_r' with left node i, right node j:
        // phi_i phi_j' -> +1/2, phi_j phi_i' -> -1/2, phi_i phi_i' -> -1/2, phi_j phi_j' -> +1/2
        o.B(j, i) += 0.5;
        o.B(i, j) -= 0.5;
        o.B(i, i) -= 0.5;
        o.B(j, j) += 0.5;
    }
    return o;
}

/// Dense hat-function L2 projection of a piecewise-linear function on
/// `mesh_old` into the hat space of `mesh_new`, by minimizing the L2 distance
/// with fine composite Simpson quadrature and a dense least-squares solve.
inline Vector dense_l2_projection(const Mesh1D& mesh_new, const Mesh1D& mesh_old, const Vector& u_old,
                                  int samples_per_cell = 400) {
    const Index Mn = mesh_new.intervals();
    auto hat_value = [](const Mesh1D& m, const Vector& coef, double x) {
        const Index M = m.intervals();
        Index e = M - 1;
        for (Index k = 0; k < M; ++k) {
            if (x < m[k + 1]) {
                e = k;
                break;
            }
        }
        const double s = (x - m[e]) / m.spacing(e);
        return (1 - s) * coef[e] + s * coef[(e + 1) % M];
    };
    // union breakpoints keep integrands smooth on each sub-piece
    std::vector<double> cuts(mesh_new.points().begin(), mesh_new.points().end());
    cuts.insert(cuts.end(), mesh_old.points().begin(), mesh_old.points().end());
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> xs, ws;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1];
        if (b - a < 1e-14) continue;
        const int n = samples_per_cell;
        const double h = (b - a) / n;
        for (int q = 0; q <= n; ++q) {
            const double w = (q == 0 || q == n) ? 1.0 : (q % 2 ? 4.0 : 2.0);
            xs.push_back(a + q * h);
            ws.push_back(w * h / 3);
        }
    }
    const Index nq = static_cast<Index>(xs.size());
    Matrix Phi(nq, Mn);
    Vector rhs(nq);
    for (Index q = 0; q < nq; ++q) {
        const double sw = std::sqrt(ws[static_cast<std::size_t>(q)]);
        for (Index i = 0; i < Mn; ++i) {
            Vector e = Vector::Zero(Mn);
            e[i] = 1.0;
            Phi(q, i) = sw * hat_value(mesh_new, e, xs[static_cast<std::size_t>(q)]);
        }
        rhs[q] = sw * hat_value(mesh_old, u_old, xs[static_cast<std::size_t>(q)]);
    }
    return Phi.colPivHouseholderQr().solve(rhs);
}

/// Points splitting the integral of a positive piecewise-constant density
/// into M equal parts, located by bisection.
inline std::vector<double> bisection_equidistribution(const Mesh1D& mesh, const Vector& density, Index M) {
    auto F = [&](double x) {
        double s = 0.0;
        for (Index e = 0; e < mesh.intervals(); ++e) {
            const double l = mesh[e], r = mesh[e + 1];
            if (x <= l) break;
            s += density[e] * (std::min(x, r) - l);
        }
        return s;
    };
    const double total = F(mesh.b());
    std::vector<double> pts{mesh.a()};
    for (Index j = 1; j < M; ++j) {
        const double target = total * static_cast<double>(j) / static_cast<double>(M);
        double lo = mesh.a(), hi = mesh.b();
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (F(mid) < target ? lo : hi) = mid;
        }
        pts.push_back(0.5 * (lo + hi));
    }
    pts.push_back(mesh.b());
    return pts;
}

/// (1,2,1)/4 applied `passes` times to a unit impulse at j: binomial weights
/// C(2 passes, k) / 4^passes wrapped onto a periodic vector of length n.
inline Vector binomial_kernel(Index n, Index j, int passes) {
    Vector v = Vector::Zero(n);
    const int m = 2 * passes;
    double binom = 1.0;
    for (int k = 0; k <= m; ++k) {
        v[((j + k - passes) % n + n) % n] += binom / std::pow(4.0, passes);
        binom = binom * (m - k) / (k + 1);
    }
    return v;
}

}  // namespace ipmesh::testing
