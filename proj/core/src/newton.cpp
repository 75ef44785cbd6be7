#include "ipmesh/newton.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <string>

#include "ipmesh/errors.hpp"

namespace ipmesh {

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw DomainError("SolverConfig: tol must be positive");
    if (max_iter < 1) throw DomainError("SolverConfig: max_iter must be >= 1");
}

Matrix finite_difference_jacobian(const ResidualFn& residual, const Vector& x) {
    const Index n = x.size();
    Matrix J;
    Vector xp = x;
    for (Index j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        xp[j] = x[j] + h;
        const Vector rp = residual(xp);
        xp[j] = x[j] - h;
        const Vector rm = residual(xp);
        xp[j] = x[j];
        if (j == 0) J.resize(rp.size(), n);
        J.col(j) = (rp - rm) / (2.0 * h);
    }
    return J;
}

namespace {

double scaled_norm(const Vector& r, const Vector& x) {
    const double xn = x.size() > 0 ? x.lpNorm<Eigen::Infinity>() : 0.0;
    const double rn = r.size() > 0 ? r.lpNorm<Eigen::Infinity>() : 0.0;
    return rn / (1.0 + xn);
}

}  // namespace

NewtonResult newton_solve(const ResidualFn& residual, Vector x0, const SolverConfig& config,
                          const JacobianSolveFn& jacobian_solve) {
    config.validate();
    NewtonResult result;
    result.x = std::move(x0);
    Vector r = residual(result.x);
    if (r.size() != result.x.size()) throw DimensionError("newton_solve: residual size differs from unknowns");
    result.residual_norm = scaled_norm(r, result.x);

    const bool use_fd = config.jacobian == JacobianMode::FiniteDifference || !jacobian_solve;
    while (result.residual_norm > config.tol) {
        if (result.iterations >= config.max_iter) {
            throw SolverError("Newton did not converge in " + std::to_string(config.max_iter) +
                                  " iterations (scaled residual " + std::to_string(result.residual_norm) + ")",
                              result.residual_norm, result.iterations);
        }
        Vector dx;
        if (use_fd) {
            Eigen::PartialPivLU<Matrix> lu(finite_difference_jacobian(residual, result.x));
            if (!(lu.rcond() > 1e-300)) {
                throw LinearSolveError("Newton: singular finite-difference Jacobian", result.residual_norm,
                                       result.iterations);
            }
            dx = lu.solve(r);
        } else {
            dx = jacobian_solve(result.x, r);
        }
        if (!dx.allFinite()) {
            throw LinearSolveError("Newton: non-finite update", result.residual_norm, result.iterations);
        }
        result.x -= dx;
        ++result.iterations;
        r = residual(result.x);
        result.residual_norm = scaled_norm(r, result.x);
        if (!std::isfinite(result.residual_norm)) {
            throw SolverError("Newton: residual became non-finite", result.residual_norm, result.iterations);
        }
    }
    return result;
}

}  // namespace ipmesh
