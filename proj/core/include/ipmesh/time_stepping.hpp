#pragma once

#include <functional>

#include "ipmesh/newton.hpp"
#include "ipmesh/semidiscrete.hpp"

namespace ipmesh {

struct StepResult {
    Vector u;
    int iterations = 0;
    /// Correction multiplier mu of the corrected scheme, or lambda of the
    /// projection step; 0 for the plain steppers.
    double multiplier = 0.0;
};

/// Discrete gradient step (u1 - u0) / dt = S avf(u0, u1).
StepResult step_dg(const SemidiscreteSystem& system, const Vector& u_n, double dt, const SolverConfig& config);

/// Implicit midpoint step (u1 - u0) / dt = S grad I((u0 + u1) / 2).
StepResult step_midpoint(const SemidiscreteSystem& system, const Vector& u_n, double dt,
                         const SolverConfig& config);

/// Direction z of the integral correction in the moving-mesh scheme.
struct CorrectionDirection {
    enum class Kind {
        Avf,       // z = avf(u_hat, u1)
        Weighted,  // z = W^{-1} avf(u_hat, u1) with the inner-product weight W
        Fixed,     // z given up front
    };
    Kind kind = Kind::Avf;
    Vector fixed;

    static CorrectionDirection avf() { return {Kind::Avf, {}}; }
    static CorrectionDirection weighted() { return {Kind::Weighted, {}}; }
    static CorrectionDirection fixed_vector(Vector z) { return {Kind::Fixed, std::move(z)}; }
};

/// Integral-correcting discrete gradient step on new discretization parameters:
///
///   u1 = u_hat - (I(u_hat) - I_prev) z / <avf, z> + dt S avf,   avf = avf(u_hat, u1),
///
/// so that I(u1) = I_prev. `u_hat` is the transferred solution and `I_prev`
/// the integral before the mesh change. Solved by Newton on (u1, mu) with
/// mu = (I(u_hat) - I_prev) / <avf, z>. When I(u_hat) == I_prev the step is
/// exactly step_dg from u_hat.
StepResult step_dg_corrected(const SemidiscreteSystem& system, const Vector& u_hat, double I_prev,
                             const CorrectionDirection& z, double dt, const SolverConfig& config);

/// Increment map g with u_hat + dt g(u_hat) the result of some one-step method.
using IncrementFn = std::function<Vector(const Vector&)>;

/// (step_midpoint(u) - u) / dt.
IncrementFn midpoint_increment(const SemidiscreteSystem& system, double dt, const SolverConfig& config);

/// Linear projection step: solves u1 = u_hat + dt g(u_hat) + lambda z together
/// with I(u1) = I_prev. Returns u1 and lambda.
StepResult step_projection(const DiscreteIntegral& integral, const IncrementFn& g, const Vector& u_hat,
                           double I_prev, const Vector& z, double dt, const SolverConfig& config);

/// Rank-2 skew matrix (g z^T - z g^T) / <dg, z> under which the corrected
/// discrete gradient step reproduces the projection step.
Matrix projection_skew(const Vector& g, const Vector& z, const Vector& dg);

}  // namespace ipmesh
