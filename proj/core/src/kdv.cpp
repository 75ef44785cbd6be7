#include "ipmesh/kdv.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "ipmesh/errors.hpp"

namespace ipmesh {

void KdvParams::validate() const {
    if (!(c > 0.0)) throw DomainError("KdV: speed c must be positive");
    if (!mesh.periodic()) throw DomainError("KdV: mesh must be periodic");
    if (mesh.intervals() < 3) throw DomainError("KdV: need at least 3 intervals");
}

KdvParams KdvParams::uniform(double L, Index M, double c) {
    KdvParams p{Mesh1D::uniform(-L, L, M, true), L, c};
    p.validate();
    return p;
}

CubicTensor::CubicTensor(Index dim, std::vector<Entry> entries) : dim_(dim), entries_(std::move(entries)) {
    for (auto& e : entries_) {
        std::array<Index, 3> idx{e.i, e.j, e.k};
        std::sort(idx.begin(), idx.end());
        e.i = idx[0];
        e.j = idx[1];
        e.k = idx[2];
        if (e.i < 0 || e.k >= dim_) throw DimensionError("CubicTensor: index out of range");
    }
}

namespace {

// Calls f(p, q, r, value) once for every distinct permutation of each entry.
template <class F>
void for_each_permutation(const std::vector<CubicTensor::Entry>& entries, F&& f) {
    for (const auto& e : entries) {
        std::array<Index, 3> idx{e.i, e.j, e.k};
        do {
            f(idx[0], idx[1], idx[2], e.value);
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
}

}  // namespace

double CubicTensor::operator()(Index i, Index j, Index k) const {
    std::array<Index, 3> idx{i, j, k};
    std::sort(idx.begin(), idx.end());
    for (const auto& e : entries_) {
        if (e.i == idx[0] && e.j == idx[1] && e.k == idx[2]) return e.value;
    }
    return 0.0;
}

double CubicTensor::contract3(const Vector& u) const {
    if (u.size() != dim_) throw DimensionError("CubicTensor::contract3: size mismatch");
    double sum = 0.0;
    for_each_permutation(entries_, [&](Index p, Index q, Index r, double d) { sum += d * u[p] * u[q] * u[r]; });
    return sum;
}

Vector CubicTensor::contract2(const Vector& a, const Vector& b) const {
    if (a.size() != dim_ || b.size() != dim_) throw DimensionError("CubicTensor::contract2: size mismatch");
    Vector out = Vector::Zero(dim_);
    for_each_permutation(entries_, [&](Index p, Index q, Index r, double d) { out[p] += d * a[q] * b[r]; });
    return out;
}

SparseMatrix CubicTensor::contract1(const Vector& a) const {
    if (a.size() != dim_) throw DimensionError("CubicTensor::contract1: size mismatch");
    std::vector<Triplet> t;
    t.reserve(entries_.size() * 6);
    for_each_permutation(entries_, [&](Index p, Index q, Index r, double d) { t.emplace_back(p, q, d * a[r]); });
    SparseMatrix m(dim_, dim_);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

FemOperators assemble_operators(const Mesh1D& mesh) {
    if (!mesh.periodic()) throw AssemblyError("assemble_operators: mesh must be periodic");
    const Index M = mesh.intervals();
    if (M < 3) throw AssemblyError("assemble_operators: need at least 3 elements");

    // 3-point Gauss on [0, 1]
    const QuadratureRule gauss = gauss_legendre_01(3);

    std::vector<Triplet> ta;
    std::vector<Triplet> tb;
    std::vector<Triplet> te;
    std::map<std::tuple<Index, Index, Index>, double> d;
    ta.reserve(static_cast<std::size_t>(4 * M));
    tb.reserve(static_cast<std::size_t>(4 * M));
    te.reserve(static_cast<std::size_t>(4 * M));

    for (Index e = 0; e < M; ++e) {
        const double h = mesh.spacing(e);
        if (!(h > 1e-14 * mesh.length())) {
            throw AssemblyError("assemble_operators: degenerate element " + std::to_string(e));
        }
        const std::array<Index, 2> node{e, (e + 1) % M};
        const std::array<double, 2> dphi{-1.0 / h, 1.0 / h};

        double a_loc[2][2] = {};
        double b_loc[2][2] = {};  // b_loc[j][i] = int phi_i phi_j'
        double d_loc[2][2][2] = {};
        for (std::size_t g = 0; g < gauss.nodes.size(); ++g) {
            const double s = gauss.nodes[g];
            const double w = gauss.weights[g] * h;
            const std::array<double, 2> phi{1.0 - s, s};
            for (int p = 0; p < 2; ++p) {
                for (int q = 0; q < 2; ++q) {
                    a_loc[p][q] += w * phi[p] * phi[q];
                    b_loc[q][p] += w * phi[p] * dphi[q];
                    for (int r = 0; r < 2; ++r) d_loc[p][q][r] += w * phi[p] * phi[q] * phi[r];
                }
            }
        }
        for (int p = 0; p < 2; ++p) {
            for (int q = 0; q < 2; ++q) {
                ta.emplace_back(node[p], node[q], a_loc[p][q]);
                tb.emplace_back(node[p], node[q], b_loc[p][q]);
                te.emplace_back(node[p], node[q], h * dphi[p] * dphi[q]);
            }
        }
        // one stored entry per local index multiset {p <= q <= r}
        for (int p = 0; p < 2; ++p) {
            for (int q = p; q < 2; ++q) {
                for (int r = q; r < 2; ++r) {
                    std::array<Index, 3> idx{node[p], node[q], node[r]};
                    std::sort(idx.begin(), idx.end());
                    d[{idx[0], idx[1], idx[2]}] += d_loc[p][q][r];
                }
            }
        }
    }

    FemOperators ops;
    ops.A.resize(M, M);
    ops.B.resize(M, M);
    ops.E.resize(M, M);
    ops.A.setFromTriplets(ta.begin(), ta.end());
    ops.B.setFromTriplets(tb.begin(), tb.end());
    ops.E.setFromTriplets(te.begin(), te.end());
    std::vector<CubicTensor::Entry> entries;
    entries.reserve(d.size());
    for (const auto& [key, value] : d) {
        entries.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), value});
    }
    ops.D = CubicTensor(M, std::move(entries));
    return ops;
}

namespace {

void check_size(const FemOperators& ops, const Vector& u) {
    if (u.size() != ops.A.rows()) {
        throw DimensionError("KdV: state has " + std::to_string(u.size()) + " entries, expected " +
                             std::to_string(ops.A.rows()));
    }
}

}  // namespace

double kdv_hamiltonian(const FemOperators& ops, const Vector& u) {
    check_size(ops, u);
    return 0.5 * u.dot(ops.E * u) - ops.D.contract3(u);
}

Vector kdv_gradient(const FemOperators& ops, const Vector& u) {
    check_size(ops, u);
    return ops.E * u - 3.0 * ops.D.contract2(u, u);
}

Vector kdv_avf_gradient(const FemOperators& ops, const Vector& u_n, const Vector& u_np1) {
    check_size(ops, u_n);
    check_size(ops, u_np1);
    return 0.5 * (ops.E * (u_n + u_np1)) -
           (ops.D.contract2(u_n, u_n) + ops.D.contract2(u_n, u_np1) + ops.D.contract2(u_np1, u_np1));
}

Vector kdv_apply_skew(const FemOperators& ops, const Vector& w) {
    check_size(ops, w);
    Eigen::SimplicialLDLT<SparseMatrix> mass(ops.A);
    if (mass.info() != Eigen::Success) throw LinearSolveError("kdv_apply_skew: mass matrix factorization failed");
    const Vector y = mass.solve(w);
    return -mass.solve(Vector(ops.B * y));
}

SparseMatrix KdvHamiltonian::hessian(const Vector& u) const {
    check_size(*ops_, u);
    return ops_->E - 6.0 * ops_->D.contract1(u);
}

KdvSystem::KdvSystem(const Mesh1D& mesh)
    : mesh_(mesh),
      ops_(std::make_shared<const FemOperators>(assemble_operators(mesh))),
      hamiltonian_(ops_) {
    mass_.compute(ops_->A);
    if (mass_.info() != Eigen::Success) throw LinearSolveError("KdvSystem: mass matrix factorization failed");
}

Vector KdvSystem::solve_mass(const Vector& b) const {
    if (b.size() != dim()) throw DimensionError("KdvSystem::solve_mass: size mismatch");
    return mass_.solve(b);
}

Vector KdvSystem::apply_skew(const Vector& w) const {
    const Vector y = solve_mass(w);
    return -solve_mass(Vector(ops_->B * y));
}

Vector KdvSystem::avf(const Vector& v, const Vector& u) const { return kdv_avf_gradient(*ops_, v, u); }

SparseMatrix KdvSystem::avf_jacobian(const Vector& v, const Vector& u) const {
    check_size(*ops_, v);
    check_size(*ops_, u);
    return 0.5 * ops_->E - ops_->D.contract1(v + 2.0 * u);
}

Vector KdvSystem::apply_weight_inverse(const Vector& g) const { return solve_mass(g); }

std::unique_ptr<LinearSolver> KdvSystem::factor_step_matrix(double dt, const SparseMatrix& K, double mu,
                                                            CorrectionKind kind) const {
    // x - (dt S - mu Z) K x = b with S = -A^{-1} B A^{-1} is solved through the
    // sparse block system
    //   [ A   dt B + mu A Z A ] [x]   [A b]
    //   [ K       -A          ] [y] = [ 0 ],   y = A^{-1} K x.
    const Index n = dim();
    const SparseMatrix& A = ops_->A;
    SparseMatrix upper_right = dt * ops_->B;
    if (mu != 0.0) {
        if (kind == CorrectionKind::Avf) {
            upper_right += mu * SparseMatrix(A * A);
        } else {
            upper_right += mu * A;
        }
    }
    std::vector<Triplet> t;
    auto append = [&t](const SparseMatrix& m, Index r0, Index c0, double scale) {
        for (Index col = 0; col < m.outerSize(); ++col) {
            for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
                t.emplace_back(r0 + it.row(), c0 + it.col(), scale * it.value());
            }
        }
    };
    append(A, 0, 0, 1.0);
    append(upper_right, 0, n, 1.0);
    append(K, n, 0, 1.0);
    append(A, n, n, -1.0);
    SparseMatrix block(2 * n, 2 * n);
    block.setFromTriplets(t.begin(), t.end());

    class BlockSolver final : public LinearSolver {
    public:
        BlockSolver(std::unique_ptr<LinearSolver> lu, const SparseMatrix& A) : lu_(std::move(lu)), A_(A) {}
        Vector solve(const Vector& b) const override {
            const Index n = A_.rows();
            Vector rhs = Vector::Zero(2 * n);
            rhs.head(n) = A_ * b;
            return lu_->solve(rhs).head(n);
        }

    private:
        std::unique_ptr<LinearSolver> lu_;
        const SparseMatrix& A_;
    };
    return std::make_unique<BlockSolver>(make_sparse_lu(block), A);
}

double kdv_exact(double x, double t, double c) {
    if (!(c > 0.0)) throw DomainError("kdv_exact: c must be positive");
    const double s = 1.0 / std::cosh(0.5 * std::sqrt(c) * (x - c * t));
    return 0.5 * c * s * s;
}

double kdv_exact_periodic(double x, double t, double c, double L) {
    double xi = std::fmod(x - c * t + L, 2.0 * L);
    if (xi < 0) xi += 2.0 * L;
    return kdv_exact(xi - L, 0.0, c);
}

Vector kdv_exact_state(const Mesh1D& mesh, double t, double c) {
    const double L = 0.5 * mesh.length();
    const double centre = 0.5 * (mesh.a() + mesh.b());
    Vector u(mesh.dofs());
    for (Index i = 0; i < u.size(); ++i) u[i] = kdv_exact_periodic(mesh[i] - centre, t, c, L);
    return u;
}

}  // namespace ipmesh
