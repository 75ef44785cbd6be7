#include "ipmesh/time_stepping.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ipmesh/errors.hpp"

namespace ipmesh {

namespace {

void check_step(const SemidiscreteSystem& system, const Vector& u, double dt, const SolverConfig& config) {
    config.validate();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("time step must be positive and finite");
    if (u.size() != system.dim()) {
        throw DimensionError("state has " + std::to_string(u.size()) + " entries, system expects " +
                             std::to_string(system.dim()));
    }
}

}  // namespace

StepResult step_dg(const SemidiscreteSystem& system, const Vector& u_n, double dt, const SolverConfig& config) {
    check_step(system, u_n, dt, config);
    auto residual = [&](const Vector& u) -> Vector {
        return u - u_n - dt * system.apply_skew(system.avf(u_n, u));
    };
    auto jac_solve = [&](const Vector& u, const Vector& r) -> Vector {
        return system.factor_step_matrix(dt, system.avf_jacobian(u_n, u), 0.0, CorrectionKind::Avf)->solve(r);
    };
    NewtonResult res = newton_solve(residual, u_n, config, jac_solve);
    return {std::move(res.x), res.iterations, 0.0};
}

StepResult step_midpoint(const SemidiscreteSystem& system, const Vector& u_n, double dt,
                         const SolverConfig& config) {
    check_step(system, u_n, dt, config);
    const DiscreteIntegral& I = system.integral();
    auto residual = [&](const Vector& u) -> Vector {
        return u - u_n - dt * system.apply_skew(I.gradient(0.5 * (u_n + u)));
    };
    auto jac_solve = [&](const Vector& u, const Vector& r) -> Vector {
        const SparseMatrix K = 0.5 * I.hessian(0.5 * (u_n + u));
        return system.factor_step_matrix(dt, K, 0.0, CorrectionKind::Avf)->solve(r);
    };
    NewtonResult res = newton_solve(residual, u_n, config, jac_solve);
    return {std::move(res.x), res.iterations, 0.0};
}

StepResult step_dg_corrected(const SemidiscreteSystem& system, const Vector& u_hat, double I_prev,
                             const CorrectionDirection& z, double dt, const SolverConfig& config) {
    check_step(system, u_hat, dt, config);
    if (!std::isfinite(I_prev)) throw DomainError("step_dg_corrected: I_prev is not finite");
    const DiscreteIntegral& I = system.integral();
    const double defect = I.value(u_hat) - I_prev;
    if (defect == 0.0) return step_dg(system, u_hat, dt, config);

    using Kind = CorrectionDirection::Kind;
    const Index n = system.dim();
    if (z.kind == Kind::Fixed && z.fixed.size() != n) {
        throw DimensionError("step_dg_corrected: fixed direction has wrong size");
    }
    const CorrectionKind factor_kind = z.kind == Kind::Weighted ? CorrectionKind::Weighted : CorrectionKind::Avf;

    auto direction = [&](const Vector& dg) -> Vector {
        switch (z.kind) {
            case Kind::Avf: return dg;
            case Kind::Weighted: return system.apply_weight_inverse(dg);
            case Kind::Fixed: break;
        }
        return z.fixed;
    };
    auto check_direction = [&](const Vector& dg, const Vector& zv, double q) {
        const double scale = dg.norm() * zv.norm();
        if (!(std::abs(q) > 1e-14 * scale) || scale == 0.0) {
            throw DegenerateDirectionError("correction direction is orthogonal to the discrete gradient", q);
        }
    };

    // Unknowns x = [u; mu].
    auto residual = [&](const Vector& x) -> Vector {
        const Vector u = x.head(n);
        const double mu = x[n];
        const Vector dg = system.avf(u_hat, u);
        const Vector zv = direction(dg);
        Vector r(n + 1);
        r.head(n) = u - u_hat + mu * zv - dt * system.apply_skew(dg);
        r[n] = mu * dg.dot(zv) - defect;
        return r;
    };
    auto jac_solve = [&](const Vector& x, const Vector& r) -> Vector {
        const Vector u = x.head(n);
        const double mu = x[n];
        const Vector dg = system.avf(u_hat, u);
        const Vector zv = direction(dg);
        const double q = dg.dot(zv);
        check_direction(dg, zv, q);
        const SparseMatrix K = system.avf_jacobian(u_hat, u);
        // Border: d(mu z)/dmu = z; d(mu <dg, z>)/du = mu * (2 K z) when z
        // follows dg through a symmetric weight, mu * K z for a fixed z.
        const double mu_in_factor = z.kind == Kind::Fixed ? 0.0 : mu;
        const auto P = system.factor_step_matrix(dt, K, mu_in_factor, factor_kind);
        const Vector c = mu * (z.kind == Kind::Fixed ? 1.0 : 2.0) * (K * zv);
        const Vector a = P->solve(r.head(n));
        const Vector b = P->solve(zv);
        const double schur = q - c.dot(b);
        if (!(std::abs(schur) > std::numeric_limits<double>::min()) || !std::isfinite(schur)) {
            throw LinearSolveError("step_dg_corrected: singular bordered Jacobian");
        }
        Vector d(n + 1);
        d[n] = (r[n] - c.dot(a)) / schur;
        d.head(n) = a - b * d[n];
        return d;
    };

    Vector x0(n + 1);
    x0.head(n) = u_hat;
    {
        const Vector grad = I.gradient(u_hat);
        const Vector z0 = direction(grad);
        const double q0 = grad.dot(z0);
        check_direction(grad, z0, q0);
        x0[n] = defect / q0;
    }
    NewtonResult res = newton_solve(residual, x0, config, jac_solve);
    return {res.x.head(n), res.iterations, res.x[n]};
}

IncrementFn midpoint_increment(const SemidiscreteSystem& system, double dt, const SolverConfig& config) {
    return [&system, dt, config](const Vector& u) -> Vector {
        return (step_midpoint(system, u, dt, config).u - u) / dt;
    };
}

StepResult step_projection(const DiscreteIntegral& integral, const IncrementFn& g, const Vector& u_hat,
                           double I_prev, const Vector& z, double dt, const SolverConfig& config) {
    config.validate();
    if (u_hat.size() != integral.dim() || z.size() != integral.dim()) {
        throw DimensionError("step_projection: state or direction has wrong size");
    }
    if (!(dt > 0.0)) throw DomainError("step_projection: time step must be positive");
    const Vector base = u_hat + dt * g(u_hat);
    if (base.size() != u_hat.size()) throw DimensionError("step_projection: increment has wrong size");

    // u1 = base + lambda z satisfies the linear equations exactly; Newton on
    // the scalar constraint I(base + lambda z) = I_prev.
    double lambda = 0.0;
    for (int it = 0; it <= config.max_iter; ++it) {
        const Vector u = base + lambda * z;
        const double r = integral.value(u) - I_prev;
        const double scale = 1.0 + std::max(u.lpNorm<Eigen::Infinity>(), std::abs(lambda));
        if (std::abs(r) / scale <= config.tol) return {u, it, lambda};
        if (it == config.max_iter) break;
        double slope = 0.0;
        if (config.jacobian == JacobianMode::FiniteDifference) {
            const double h = 1e-7 * (1.0 + std::abs(lambda));
            slope = (integral.value(base + (lambda + h) * z) - integral.value(base + (lambda - h) * z)) / (2 * h);
        } else {
            slope = integral.gradient(u).dot(z);
        }
        if (!(std::abs(slope) > 1e-14 * z.norm() * (1.0 + std::abs(r))) || !std::isfinite(slope)) {
            throw DegenerateDirectionError("projection direction is tangent to the level set", std::abs(r), it);
        }
        lambda -= r / slope;
    }
    throw SolverError("step_projection: no convergence", 0.0, config.max_iter);
}

Matrix projection_skew(const Vector& g, const Vector& z, const Vector& dg) {
    if (g.size() != z.size() || dg.size() != z.size()) throw DimensionError("projection_skew: size mismatch");
    const double q = dg.dot(z);
    if (!(std::abs(q) > 0.0) || !std::isfinite(q)) {
        throw DegenerateDirectionError("projection_skew: <dg, z> is zero", 0.0);
    }
    return (g * z.transpose() - z * g.transpose()) / q;
}

}  // namespace ipmesh
