#pragma once

#include <variant>
#include <vector>

#include "ipmesh/types.hpp"

namespace ipmesh {

/// A discretized first integral I_p(u) on fixed discretization parameters p.
///
/// `gradient` must be the exact derivative of `value`, and `hessian` the exact
/// derivative of `gradient`; implicit steppers rely on both.
class DiscreteIntegral {
public:
    virtual ~DiscreteIntegral() = default;

    virtual Index dim() const = 0;
    virtual double value(const Vector& u) const = 0;
    virtual Vector gradient(const Vector& u) const = 0;
    virtual SparseMatrix hessian(const Vector& u) const = 0;
};

/// Discrete L2 inner product: diagonal quadrature weights (finite differences)
/// or a symmetric positive-definite mass matrix (partition of unity).
class InnerProduct {
public:
    explicit InnerProduct(Vector weights);
    explicit InnerProduct(SparseMatrix mass);

    double operator()(const Vector& u, const Vector& v) const;
    Index dim() const;
    bool is_diagonal() const { return std::holds_alternative<Vector>(weight_); }

private:
    std::variant<Vector, SparseMatrix> weight_;
};

/// Gauss-Legendre nodes and weights mapped to [0, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_legendre_01(int order);

/// Average vector field discrete gradient, int_0^1 grad I(xi u + (1 - xi) v) dxi,
/// by `quad_order`-point Gauss-Legendre quadrature. Exact when grad I is a
/// polynomial of degree <= 2 quad_order - 1 along the segment.
Vector avf_gradient(const DiscreteIntegral& integral, const Vector& v, const Vector& u, int quad_order);

/// Derivative of avf_gradient(v, u) with respect to its second argument u:
/// int_0^1 xi Hess I(xi u + (1 - xi) v) dxi, same quadrature.
SparseMatrix avf_jacobian(const DiscreteIntegral& integral, const Vector& v, const Vector& u, int quad_order);

/// |dg . (u - v) - (I(u) - I(v))|, the violation of the secant condition.
double secant_defect(const DiscreteIntegral& integral, const Vector& v, const Vector& u, const Vector& dg);

}  // namespace ipmesh
