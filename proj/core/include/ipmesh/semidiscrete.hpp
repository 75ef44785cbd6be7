#pragma once

#include <memory>

#include "ipmesh/discrete_gradient.hpp"
#include "ipmesh/types.hpp"

namespace ipmesh {

/// Factorized linear operator.
class LinearSolver {
public:
    virtual ~LinearSolver() = default;
    virtual Vector solve(const Vector& b) const = 0;
};

std::unique_ptr<LinearSolver> make_sparse_lu(const SparseMatrix& matrix);
std::unique_ptr<LinearSolver> make_dense_lu(const Matrix& matrix);

/// Weighting Z of a correction direction z = Z * dg: identity, or the inverse
/// of the discrete inner-product weight (D(kappa)^{-1} or A^{-1}).
enum class CorrectionKind { Avf, Weighted };

/// du/dt = S_p grad I_p(u) with a state-independent skew operator S_p.
class SemidiscreteSystem {
public:
    virtual ~SemidiscreteSystem() = default;

    virtual const DiscreteIntegral& integral() const = 0;
    Index dim() const { return integral().dim(); }

    virtual Vector apply_skew(const Vector& w) const = 0;

    /// Discrete gradient of the integral between v and u.
    virtual Vector avf(const Vector& v, const Vector& u) const = 0;
    /// d avf(v, u) / du.
    virtual SparseMatrix avf_jacobian(const Vector& v, const Vector& u) const = 0;

    /// Inverse of the inner-product weight (D(kappa) or A) applied to g.
    virtual Vector apply_weight_inverse(const Vector& g) const = 0;

    /// Factorizes I - (dt S - mu Z) K, where Z is the identity or the inverse
    /// weight according to `kind`. K must be symmetric.
    virtual std::unique_ptr<LinearSolver> factor_step_matrix(double dt, const SparseMatrix& K, double mu,
                                                             CorrectionKind kind) const = 0;

    Vector vector_field(const Vector& u) const { return apply_skew(integral().gradient(u)); }
};

/// Generic system with a dense skew matrix and quadrature AVF; the inner
/// product weight is the identity.
class DenseSystem final : public SemidiscreteSystem {
public:
    DenseSystem(std::shared_ptr<const DiscreteIntegral> integral, Matrix skew, int quad_order = 4);

    const DiscreteIntegral& integral() const override { return *integral_; }
    const Matrix& skew() const { return skew_; }

    Vector apply_skew(const Vector& w) const override;
    Vector avf(const Vector& v, const Vector& u) const override;
    SparseMatrix avf_jacobian(const Vector& v, const Vector& u) const override;
    Vector apply_weight_inverse(const Vector& g) const override { return g; }
    std::unique_ptr<LinearSolver> factor_step_matrix(double dt, const SparseMatrix& K, double mu,
                                                     CorrectionKind kind) const override;

private:
    std::shared_ptr<const DiscreteIntegral> integral_;
    Matrix skew_;
    int quad_order_;
};

/// I(u) = 1/2 u^T Q u for a symmetric Q; used by oscillator-type tests and
/// as the simplest nontrivial integral.
class QuadraticIntegral final : public DiscreteIntegral {
public:
    explicit QuadraticIntegral(SparseMatrix Q) : Q_(std::move(Q)) {}
    static QuadraticIntegral identity(Index n);

    Index dim() const override { return Q_.rows(); }
    double value(const Vector& u) const override { return 0.5 * u.dot(Q_ * u); }
    Vector gradient(const Vector& u) const override { return Q_ * u; }
    SparseMatrix hessian(const Vector&) const override { return Q_; }

private:
    SparseMatrix Q_;
};

}  // namespace ipmesh
