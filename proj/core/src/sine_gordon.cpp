#include "ipmesh/sine_gordon.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ipmesh/errors.hpp"

namespace ipmesh {

void SineGordonParams::validate() const {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("sine-Gordon: speed c must lie in (0, 1)");
    if (!mesh.periodic()) throw DomainError("sine-Gordon: mesh must be periodic");
    if (mesh.intervals() < 3) throw DomainError("sine-Gordon: need at least 3 intervals");
}

SineGordonParams SineGordonParams::uniform(double L, Index M, double c) {
    SineGordonParams p{Mesh1D::uniform(-L, L, M, true), L, c};
    p.validate();
    return p;
}

Vector trapezoid_weights(const Mesh1D& mesh) {
    const Index M = mesh.intervals();
    Vector kappa(M + 1);
    kappa[0] = 0.5 * mesh.spacing(0);
    kappa[M] = 0.5 * mesh.spacing(M - 1);
    for (Index i = 1; i < M; ++i) kappa[i] = 0.5 * (mesh[i + 1] - mesh[i - 1]);
    return kappa;
}

Vector merged_trapezoid_weights(const Mesh1D& mesh) {
    if (!mesh.periodic()) throw DomainError("merged_trapezoid_weights: mesh is not periodic");
    Vector full = trapezoid_weights(mesh);
    const Index M = mesh.intervals();
    Vector merged = full.head(M);
    merged[0] += full[M];
    return merged;
}

SineGordonEnergy::SineGordonEnergy(const Mesh1D& mesh)
    : m_(mesh.intervals()), kappa_(merged_trapezoid_weights(mesh)), dx_(mesh.intervals()) {
    if (m_ < 3) throw DomainError("SineGordonEnergy: need at least 3 intervals");
    dx_[0] = mesh.spacing(0) + mesh.spacing(m_ - 1);
    for (Index i = 1; i < m_; ++i) dx_[i] = mesh[i + 1] - mesh[i - 1];
}

void SineGordonEnergy::check(const Vector& state) const {
    if (state.size() != 2 * m_) {
        throw DimensionError("sine-Gordon state has " + std::to_string(state.size()) + " entries, expected " +
                             std::to_string(2 * m_));
    }
}

double SineGordonEnergy::value(const Vector& state) const {
    check(state);
    const auto u = state.head(m_);
    const auto v = state.tail(m_);
    double sum = 0.0;
    for (Index i = 0; i < m_; ++i) {
        const Index ip = (i + 1) % m_;
        const Index im = (i + m_ - 1) % m_;
        const double ux = (u[ip] - u[im]) / dx_[i];
        sum += kappa_[i] * (0.5 * v[i] * v[i] + 0.5 * ux * ux + 1.0 - std::cos(u[i]));
    }
    return sum;
}

Vector SineGordonEnergy::gradient(const Vector& state) const {
    check(state);
    const auto u = state.head(m_);
    const auto v = state.tail(m_);
    // q_i du_i is the derivative of kappa_i (du_i/dx_i)^2 / 2 with respect to du_i
    Vector qdu(m_);
    for (Index i = 0; i < m_; ++i) {
        qdu[i] = kappa_[i] / (dx_[i] * dx_[i]) * (u[(i + 1) % m_] - u[(i + m_ - 1) % m_]);
    }
    Vector g(2 * m_);
    for (Index j = 0; j < m_; ++j) {
        g[j] = kappa_[j] * std::sin(u[j]) + qdu[(j + m_ - 1) % m_] - qdu[(j + 1) % m_];
        g[m_ + j] = kappa_[j] * v[j];
    }
    return g;
}

SparseMatrix SineGordonEnergy::hessian(const Vector& state) const {
    check(state);
    const auto u = state.head(m_);
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(5 * m_));
    for (Index j = 0; j < m_; ++j) {
        const Index jm = (j + m_ - 1) % m_;
        const Index jp = (j + 1) % m_;
        const double qm = kappa_[jm] / (dx_[jm] * dx_[jm]);
        const double qp = kappa_[jp] / (dx_[jp] * dx_[jp]);
        t.emplace_back(j, j, kappa_[j] * std::cos(u[j]) + qm + qp);
        t.emplace_back(j, (j + m_ - 2) % m_, -qm);
        t.emplace_back(j, (j + 2) % m_, -qp);
        t.emplace_back(m_ + j, m_ + j, kappa_[j]);
    }
    SparseMatrix H(2 * m_, 2 * m_);
    H.setFromTriplets(t.begin(), t.end());
    return H;
}

double sg_energy(const SineGordonParams& params, const Vector& state) {
    return SineGordonEnergy(params.mesh).value(state);
}

Vector sg_energy_gradient(const SineGordonParams& params, const Vector& state) {
    return SineGordonEnergy(params.mesh).gradient(state);
}

namespace {

SparseMatrix build_skew(const Vector& kappa) {
    const Index m = kappa.size();
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(2 * m));
    for (Index i = 0; i < m; ++i) {
        t.emplace_back(i, m + i, 1.0 / kappa[i]);
        t.emplace_back(m + i, i, -1.0 / kappa[i]);
    }
    SparseMatrix S(2 * m, 2 * m);
    S.setFromTriplets(t.begin(), t.end());
    return S;
}

}  // namespace

SparseMatrix sg_build_skew(const SineGordonParams& params) {
    params.validate();
    return build_skew(merged_trapezoid_weights(params.mesh));
}

SineGordonSystem::SineGordonSystem(const Mesh1D& mesh, int quad_order)
    : energy_(mesh), skew_(build_skew(energy_.weights())), quad_order_(quad_order) {
    if (!mesh.periodic()) throw DomainError("SineGordonSystem: mesh must be periodic");
    if (quad_order < 1) throw DomainError("SineGordonSystem: quad_order must be >= 1");
    const Index m = energy_.nodes();
    weight_inv_.resize(2 * m);
    weight_inv_.head(m) = energy_.weights().cwiseInverse();
    weight_inv_.tail(m) = energy_.weights().cwiseInverse();
}

Vector SineGordonSystem::avf(const Vector& v, const Vector& u) const {
    return avf_gradient(energy_, v, u, quad_order_);
}

SparseMatrix SineGordonSystem::avf_jacobian(const Vector& v, const Vector& u) const {
    return ipmesh::avf_jacobian(energy_, v, u, quad_order_);
}

Vector SineGordonSystem::apply_weight_inverse(const Vector& g) const {
    if (g.size() != weight_inv_.size()) throw DimensionError("apply_weight_inverse: size mismatch");
    return weight_inv_.cwiseProduct(g);
}

std::unique_ptr<LinearSolver> SineGordonSystem::factor_step_matrix(double dt, const SparseMatrix& K, double mu,
                                                                   CorrectionKind kind) const {
    const Index n = dim();
    SparseMatrix Z(n, n);
    if (kind == CorrectionKind::Avf) {
        Z.setIdentity();
    } else {
        Z = SparseMatrix(weight_inv_.asDiagonal());
    }
    SparseMatrix I(n, n);
    I.setIdentity();
    const SparseMatrix op = dt * skew_ - mu * Z;
    const SparseMatrix m = I - SparseMatrix(op * K);
    return make_sparse_lu(m);
}

namespace {

// sinh(a) / cosh(b) and cosh(a) / cosh(b) without overflow for large arguments.
double sinh_over_cosh(double a, double b) {
    const double s = a < 0 ? -1.0 : 1.0;
    const double aa = std::abs(a);
    const double ab = std::abs(b);
    return s * std::exp(aa - ab) * (1.0 - std::exp(-2.0 * aa)) / (1.0 + std::exp(-2.0 * ab));
}

double cosh_over_cosh(double a, double b) {
    const double aa = std::abs(a);
    const double ab = std::abs(b);
    return std::exp(aa - ab) * (1.0 + std::exp(-2.0 * aa)) / (1.0 + std::exp(-2.0 * ab));
}

void check_speed(double c) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("sine-Gordon exact solution: c must lie in (0, 1)");
}

}  // namespace

double sg_exact(double x, double t, double c) {
    check_speed(c);
    const double g = std::sqrt(1.0 - c * c);
    return 4.0 * std::atan(sinh_over_cosh(c * t / g, x / g) / c);
}

double sg_exact_velocity(double x, double t, double c) {
    check_speed(c);
    const double g = std::sqrt(1.0 - c * c);
    const double a = c * t / g;
    const double b = x / g;
    const double r = sinh_over_cosh(a, b) / c;
    const double drdt = cosh_over_cosh(a, b) / g;
    return 4.0 * drdt / (1.0 + r * r);
}

Vector sg_exact_state(const Mesh1D& mesh, double t, double c) {
    const Index m = mesh.dofs();
    Vector state(2 * m);
    for (Index i = 0; i < m; ++i) {
        state[i] = sg_exact(mesh[i], t, c);
        state[m + i] = sg_exact_velocity(mesh[i], t, c);
    }
    return state;
}

}  // namespace ipmesh
