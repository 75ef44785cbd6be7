#include "ipmesh/transfer.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ipmesh/errors.hpp"
#include "ipmesh/semidiscrete.hpp"

namespace ipmesh {

namespace {

// Query mapped into the mesh, or RangeError for a non-periodic mesh.
double map_query(const Mesh1D& mesh, double x) {
    if (!std::isfinite(x)) throw RangeError("interpolation query is not finite");
    if (mesh.periodic()) return mesh.wrap(x);
    const double tol = 1e-12 * mesh.length();
    if (x < mesh.a() - tol || x > mesh.b() + tol) {
        throw RangeError("interpolation query " + std::to_string(x) + " outside [" + std::to_string(mesh.a()) +
                         ", " + std::to_string(mesh.b()) + "]");
    }
    return std::clamp(x, mesh.a(), mesh.b());
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

// Node index of local endpoint `e + 1` in the merged periodic layout.
Index right_node(const Mesh1D& mesh, Index e) {
    return (mesh.periodic() && e + 1 == mesh.intervals()) ? 0 : e + 1;
}

}  // namespace

Vector interp_linear(const Mesh1D& mesh_old, const Vector& u_old, std::span<const double> x) {
    const Vector u = full_nodal(mesh_old, u_old);
    Vector out(static_cast<Index>(x.size()));
    for (std::size_t q = 0; q < x.size(); ++q) {
        const double xq = map_query(mesh_old, x[q]);
        const Index e = mesh_old.locate(xq);
        const double s = (xq - mesh_old[e]) / mesh_old.spacing(e);
        out[static_cast<Index>(q)] = (1.0 - s) * u[e] + s * u[e + 1];
    }
    return out;
}

Vector pchip_slopes(const Mesh1D& mesh, const Vector& u_full) {
    const Index M = mesh.intervals();
    if (u_full.size() != M + 1) throw DimensionError("pchip_slopes: expected M + 1 values");
    Vector h(M);
    Vector del(M);
    for (Index e = 0; e < M; ++e) {
        h[e] = mesh.spacing(e);
        del[e] = (u_full[e + 1] - u_full[e]) / h[e];
    }
    auto interior = [&](Index left, Index right) {
        // slope at the node between intervals `left` and `right`
        if (del[left] * del[right] <= 0.0) return 0.0;
        const double w1 = 2.0 * h[right] + h[left];
        const double w2 = h[right] + 2.0 * h[left];
        return (w1 + w2) / (w1 / del[left] + w2 / del[right]);
    };
    Vector d(M + 1);
    for (Index i = 1; i < M; ++i) d[i] = interior(i - 1, i);
    if (mesh.periodic()) {
        d[0] = interior(M - 1, 0);
        d[M] = d[0];
        return d;
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (sign(s) != sign(d0)) {
            s = 0.0;
        } else if (sign(d0) != sign(d1) && std::abs(s) > std::abs(3.0 * d0)) {
            s = 3.0 * d0;
        }
        return s;
    };
    d[0] = end_slope(h[0], h[1], del[0], del[1]);
    d[M] = end_slope(h[M - 1], h[M - 2], del[M - 1], del[M - 2]);
    return d;
}

Vector interp_cubic_monotone(const Mesh1D& mesh_old, const Vector& u_old, std::span<const double> x) {
    const Vector u = full_nodal(mesh_old, u_old);
    const Vector d = pchip_slopes(mesh_old, u);
    Vector out(static_cast<Index>(x.size()));
    for (std::size_t q = 0; q < x.size(); ++q) {
        const double xq = map_query(mesh_old, x[q]);
        const Index e = mesh_old.locate(xq);
        const double h = mesh_old.spacing(e);
        const double s = (xq - mesh_old[e]) / h;
        const double s2 = s * s;
        const double s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1;
        const double h10 = s3 - 2 * s2 + s;
        const double h01 = -2 * s3 + 3 * s2;
        const double h11 = s3 - s2;
        out[static_cast<Index>(q)] = h00 * u[e] + h10 * h * d[e] + h01 * u[e + 1] + h11 * h * d[e + 1];
    }
    return out;
}

Vector transfer_nodal(const Mesh1D& mesh_old, const Vector& u_old, const Mesh1D& mesh_new, InterpKind kind) {
    if (mesh_old.periodic() != mesh_new.periodic()) throw DomainError("transfer_nodal: periodicity differs");
    const auto pts = mesh_new.points().subspan(0, static_cast<std::size_t>(mesh_new.dofs()));
    return kind == InterpKind::Linear ? interp_linear(mesh_old, u_old, pts)
                                      : interp_cubic_monotone(mesh_old, u_old, pts);
}

Vector interpolate_state(const Mesh1D& mesh_old, const Vector& state, const Mesh1D& mesh_new, InterpKind kind,
                         Index fields) {
    const Index n_old = mesh_old.dofs();
    const Index n_new = mesh_new.dofs();
    if (fields < 1 || state.size() != fields * n_old) {
        throw DimensionError("interpolate_state: state has " + std::to_string(state.size()) + " entries, expected " +
                             std::to_string(fields * n_old));
    }
    Vector out(fields * n_new);
    for (Index f = 0; f < fields; ++f) {
        out.segment(f * n_new, n_new) = transfer_nodal(mesh_old, state.segment(f * n_old, n_old), mesh_new, kind);
    }
    return out;
}

namespace {

// Newton on  mass u - rhs - lambda grad I(u) = 0,  I(u) = target.
TransferResult bordered_projection(const SparseMatrix& mass, const Vector& rhs, const Vector& u0,
                                   const DiscreteIntegral& integral, double target, const SolverConfig& config) {
    const Index n = integral.dim();
    if (mass.rows() != n || rhs.size() != n || u0.size() != n) {
        throw DimensionError("preserving transfer: operator sizes do not match the integral");
    }
    if (!std::isfinite(target)) throw DomainError("preserving transfer: target is not finite");
    auto residual = [&](const Vector& x) -> Vector {
        const Vector u = x.head(n);
        Vector r(n + 1);
        r.head(n) = mass * u - rhs - x[n] * integral.gradient(u);
        r[n] = integral.value(u) - target;
        return r;
    };
    auto jac_solve = [&](const Vector& x, const Vector& r) -> Vector {
        const Vector u = x.head(n);
        const Vector grad = integral.gradient(u);
        const SparseMatrix top = mass - x[n] * integral.hessian(u);
        std::vector<Triplet> t;
        t.reserve(static_cast<std::size_t>(top.nonZeros() + 2 * n));
        for (Index col = 0; col < top.outerSize(); ++col) {
            for (SparseMatrix::InnerIterator it(top, col); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
        }
        for (Index i = 0; i < n; ++i) {
            t.emplace_back(i, n, -grad[i]);
            t.emplace_back(n, i, grad[i]);
        }
        SparseMatrix J(n + 1, n + 1);
        J.setFromTriplets(t.begin(), t.end());
        return make_sparse_lu(J)->solve(r);
    };
    Vector x0 = Vector::Zero(n + 1);
    x0.head(n) = u0;
    try {
        NewtonResult res = newton_solve(residual, x0, config, jac_solve);
        return {res.x.head(n), res.x[n], res.iterations};
    } catch (const SolverError& e) {
        throw TransferError(std::string("preserving transfer failed: ") + e.what(), e.residual_norm(),
                            e.iterations());
    }
}

}  // namespace

TransferResult transfer_preserving_fdm(const Vector& u_bar, const DiscreteIntegral& integral_new, double I_target,
                                       const SolverConfig& config) {
    const Index n = integral_new.dim();
    SparseMatrix I(n, n);
    I.setIdentity();
    return bordered_projection(I, u_bar, u_bar, integral_new, I_target, config);
}

TransferResult transfer_preserving_fdm(const Mesh1D& mesh_old, const Vector& u_old, const Mesh1D& mesh_new,
                                       Index fields, const DiscreteIntegral& integral_new, double I_target,
                                       const SolverConfig& config, InterpKind kind) {
    return transfer_preserving_fdm(interpolate_state(mesh_old, u_old, mesh_new, kind, fields), integral_new,
                                   I_target, config);
}

SparseMatrix cross_mass_matrix(const Mesh1D& mesh_new, const Mesh1D& mesh_old) {
    const double tol = 1e-13 * mesh_new.length();
    if (mesh_new.periodic() != mesh_old.periodic() || std::abs(mesh_new.a() - mesh_old.a()) > tol ||
        std::abs(mesh_new.b() - mesh_old.b()) > tol) {
        throw DomainError("cross_mass_matrix: meshes must share domain and periodicity");
    }
    std::vector<double> cuts(mesh_new.points().begin(), mesh_new.points().end());
    cuts.insert(cuts.end(), mesh_old.points().begin(), mesh_old.points().end());
    std::sort(cuts.begin(), cuts.end());

    const QuadratureRule gauss = gauss_legendre_01(2);  // exact for products of two linears
    std::vector<Triplet> t;
    t.reserve(cuts.size() * 4);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double x0 = cuts[s];
        const double x1 = cuts[s + 1];
        if (x1 - x0 <= tol) continue;
        const double mid = 0.5 * (x0 + x1);
        const Index en = mesh_new.locate(mid);
        const Index eo = mesh_old.locate(mid);
        const Index rows[2] = {en, right_node(mesh_new, en)};
        const Index cols[2] = {eo, right_node(mesh_old, eo)};
        for (std::size_t g = 0; g < gauss.nodes.size(); ++g) {
            const double x = x0 + gauss.nodes[g] * (x1 - x0);
            const double w = gauss.weights[g] * (x1 - x0);
            const double sn = (x - mesh_new[en]) / mesh_new.spacing(en);
            const double so = (x - mesh_old[eo]) / mesh_old.spacing(eo);
            const double pn[2] = {1.0 - sn, sn};
            const double po[2] = {1.0 - so, so};
            for (int p = 0; p < 2; ++p) {
                for (int q = 0; q < 2; ++q) t.emplace_back(rows[p], cols[q], w * pn[p] * po[q]);
            }
        }
    }
    SparseMatrix C(mesh_new.dofs(), mesh_old.dofs());
    C.setFromTriplets(t.begin(), t.end());
    return C;
}

TransferResult transfer_preserving_pum(const FemOperators& ops_new, const SparseMatrix& C, const Vector& u_old,
                                       const DiscreteIntegral& integral_new, double I_target,
                                       const SolverConfig& config, bool constrained) {
    if (C.cols() != u_old.size() || C.rows() != ops_new.A.rows()) {
        throw DimensionError("transfer_preserving_pum: cross mass matrix does not match the operands");
    }
    const Vector rhs = C * u_old;
    Eigen::SimplicialLDLT<SparseMatrix> mass(ops_new.A);
    if (mass.info() != Eigen::Success) throw LinearSolveError("transfer_preserving_pum: mass factorization failed");
    const Vector projected = mass.solve(rhs);
    if (!constrained) return {projected, 0.0, 0};
    return bordered_projection(ops_new.A, rhs, projected, integral_new, I_target, config);
}

}  // namespace ipmesh
