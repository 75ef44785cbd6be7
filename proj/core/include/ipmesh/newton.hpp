#pragma once

#include <functional>

#include "ipmesh/types.hpp"

namespace ipmesh {

enum class JacobianMode { Analytic, FiniteDifference };

struct SolverConfig {
    double tol = 1e-12;  // on ||r||_inf / (1 + ||x||_inf)
    int max_iter = 50;
    JacobianMode jacobian = JacobianMode::Analytic;

    void validate() const;
};

struct NewtonResult {
    Vector x;
    int iterations = 0;
    double residual_norm = 0.0;
};

using ResidualFn = std::function<Vector(const Vector&)>;

/// Returns J(x)^{-1} r for the residual Jacobian at x.
using JacobianSolveFn = std::function<Vector(const Vector& x, const Vector& r)>;

/// Newton iteration x <- x - J(x)^{-1} r(x) until the scaled residual
/// ||r||_inf / (1 + ||x||_inf) drops below config.tol.
///
/// With JacobianMode::FiniteDifference, or when `jacobian_solve` is empty, a
/// dense central-difference Jacobian is formed and LU-factorized each iteration.
/// Throws SolverError after max_iter iterations and LinearSolveError when the
/// Jacobian is singular.
NewtonResult newton_solve(const ResidualFn& residual, Vector x0, const SolverConfig& config,
                          const JacobianSolveFn& jacobian_solve = {});

/// Dense central-difference Jacobian of `residual` at x.
Matrix finite_difference_jacobian(const ResidualFn& residual, const Vector& x);

}  // namespace ipmesh
