#include "ipmesh/discrete_gradient.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ipmesh/errors.hpp"

namespace ipmesh {

InnerProduct::InnerProduct(Vector weights) : weight_(std::move(weights)) {
    const auto& w = std::get<Vector>(weight_);
    for (Index i = 0; i < w.size(); ++i) {
        if (!(w[i] > 0.0)) throw DomainError("InnerProduct: weights must be positive");
    }
}

InnerProduct::InnerProduct(SparseMatrix mass) : weight_(std::move(mass)) {
    const auto& A = std::get<SparseMatrix>(weight_);
    if (A.rows() != A.cols()) throw DimensionError("InnerProduct: mass matrix must be square");
}

Index InnerProduct::dim() const {
    return std::visit([](const auto& w) -> Index { return w.rows(); }, weight_);
}

double InnerProduct::operator()(const Vector& u, const Vector& v) const {
    if (u.size() != dim() || v.size() != dim()) throw DimensionError("InnerProduct: size mismatch");
    if (const auto* w = std::get_if<Vector>(&weight_)) return (u.array() * w->array() * v.array()).sum();
    return u.dot(std::get<SparseMatrix>(weight_) * v);
}

QuadratureRule gauss_legendre_01(int order) {
    if (order < 1) throw DomainError("gauss_legendre_01: order must be >= 1");
    const int n = order;
    // (P_n(x), P_n'(x)) by the three-term recurrence
    auto legendre = [n](double x) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };

    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(x).second;
        const double w = 1.0 / ((1.0 - x * x) * dp * dp);  // half the [-1, 1] weight
        rule.nodes[i] = 0.5 * (1.0 - x);
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

namespace {

void check_pair(const DiscreteIntegral& integral, const Vector& v, const Vector& u) {
    if (v.size() != u.size() || u.size() != integral.dim()) {
        throw DimensionError("discrete gradient: state sizes " + std::to_string(v.size()) + ", " +
                             std::to_string(u.size()) + " vs integral dimension " +
                             std::to_string(integral.dim()));
    }
}

}  // namespace

Vector avf_gradient(const DiscreteIntegral& integral, const Vector& v, const Vector& u, int quad_order) {
    check_pair(integral, v, u);
    const QuadratureRule rule = gauss_legendre_01(quad_order);
    Vector out = Vector::Zero(u.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double xi = rule.nodes[q];
        out += rule.weights[q] * integral.gradient(xi * u + (1.0 - xi) * v);
    }
    return out;
}

SparseMatrix avf_jacobian(const DiscreteIntegral& integral, const Vector& v, const Vector& u, int quad_order) {
    check_pair(integral, v, u);
    const QuadratureRule rule = gauss_legendre_01(quad_order);
    SparseMatrix out(u.size(), u.size());
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double xi = rule.nodes[q];
        out += (rule.weights[q] * xi) * integral.hessian(xi * u + (1.0 - xi) * v);
    }
    return out;
}

double secant_defect(const DiscreteIntegral& integral, const Vector& v, const Vector& u, const Vector& dg) {
    check_pair(integral, v, u);
    if (dg.size() != u.size()) throw DimensionError("secant_defect: gradient size mismatch");
    return std::abs(dg.dot(u - v) - (integral.value(u) - integral.value(v)));
}

}  // namespace ipmesh
