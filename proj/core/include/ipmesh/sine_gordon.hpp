#pragma once

#include <memory>

#include "ipmesh/discrete_gradient.hpp"
#include "ipmesh/mesh.hpp"
#include "ipmesh/semidiscrete.hpp"

namespace ipmesh {

/// Sine-Gordon u_tt - u_xx + sin(u) = 0 on the periodic domain [-L, L].
struct SineGordonParams {
    Mesh1D mesh;
    double L;
    double c;  // kink speed, 0 < c < 1

    void validate() const;
    static SineGordonParams uniform(double L, Index M, double c);
};

/// Composite trapezoid weights at all M + 1 mesh points.
Vector trapezoid_weights(const Mesh1D& mesh);

/// Weights of the M distinct nodes of a periodic mesh (kappa_0 + kappa_M merged).
Vector merged_trapezoid_weights(const Mesh1D& mesh);

/// Discrete energy
///   I_p(u, v) = sum_i kappa_i [ v_i^2 / 2 + (du_i / dx_i)^2 / 2 + 1 - cos(u_i) ]
/// with periodic central differences du_i = u_{i+1} - u_{i-1}. The state is the
/// stacked vector [u; v] of length 2M.
class SineGordonEnergy final : public DiscreteIntegral {
public:
    explicit SineGordonEnergy(const Mesh1D& mesh);

    Index dim() const override { return 2 * m_; }
    double value(const Vector& state) const override;
    Vector gradient(const Vector& state) const override;
    SparseMatrix hessian(const Vector& state) const override;

    const Vector& weights() const { return kappa_; }
    Index nodes() const { return m_; }

private:
    void check(const Vector& state) const;

    Index m_;
    Vector kappa_;  // merged trapezoid weights
    Vector dx_;     // periodic central spacing x_{i+1} - x_{i-1}
};

double sg_energy(const SineGordonParams& params, const Vector& state);
Vector sg_energy_gradient(const SineGordonParams& params, const Vector& state);

/// S_p = S_d D(kappa)^{-1} with S_d = [[0, I], [-I, 0]] on the stacked state.
SparseMatrix sg_build_skew(const SineGordonParams& params);

/// Finite-difference semidiscretization of sine-Gordon with quadrature AVF.
class SineGordonSystem final : public SemidiscreteSystem {
public:
    explicit SineGordonSystem(const Mesh1D& mesh, int quad_order = 4);

    const DiscreteIntegral& integral() const override { return energy_; }
    const SineGordonEnergy& energy() const { return energy_; }
    const SparseMatrix& skew() const { return skew_; }
    int quad_order() const { return quad_order_; }

    Vector apply_skew(const Vector& w) const override { return skew_ * w; }
    Vector avf(const Vector& v, const Vector& u) const override;
    SparseMatrix avf_jacobian(const Vector& v, const Vector& u) const override;
    Vector apply_weight_inverse(const Vector& g) const override;
    std::unique_ptr<LinearSolver> factor_step_matrix(double dt, const SparseMatrix& K, double mu,
                                                     CorrectionKind kind) const override;

private:
    SineGordonEnergy energy_;
    SparseMatrix skew_;
    Vector weight_inv_;  // 1 / kappa, stacked twice
    int quad_order_;
};

/// Kink-antikink solution 4 atan( sinh(ct / g) / (c cosh(x / g)) ), g = sqrt(1 - c^2).
double sg_exact(double x, double t, double c);
/// Its time derivative.
double sg_exact_velocity(double x, double t, double c);

/// Stacked [u; v] of the exact solution sampled at the M distinct mesh nodes.
Vector sg_exact_state(const Mesh1D& mesh, double t, double c);

}  // namespace ipmesh
