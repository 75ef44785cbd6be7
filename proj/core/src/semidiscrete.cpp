#include "ipmesh/semidiscrete.hpp"

#include <Eigen/LU>
#include <Eigen/SparseLU>
#include <string>

#include "ipmesh/errors.hpp"

namespace ipmesh {

namespace {

class SparseLuSolver final : public LinearSolver {
public:
    explicit SparseLuSolver(const SparseMatrix& m) : n_(m.rows()) {
        SparseMatrix a = m;
        a.makeCompressed();
        lu_.analyzePattern(a);
        lu_.factorize(a);
        if (lu_.info() != Eigen::Success) {
            throw LinearSolveError("sparse LU factorization failed: " + lu_.lastErrorMessage());
        }
    }
    Vector solve(const Vector& b) const override {
        if (b.size() != n_) throw DimensionError("SparseLuSolver: rhs size mismatch");
        Vector x = lu_.solve(b);
        if (!x.allFinite()) throw LinearSolveError("sparse LU solve produced non-finite values");
        return x;
    }

private:
    Index n_;
    // SparseLU::solve is logically const but not declared so.
    mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
};

class DenseLuSolver final : public LinearSolver {
public:
    explicit DenseLuSolver(const Matrix& m) : lu_(m) {
        if (!(lu_.rcond() > 1e-300)) throw LinearSolveError("dense LU: singular matrix");
    }
    Vector solve(const Vector& b) const override { return lu_.solve(b); }

private:
    Eigen::PartialPivLU<Matrix> lu_;
};

}  // namespace

std::unique_ptr<LinearSolver> make_sparse_lu(const SparseMatrix& matrix) {
    return std::make_unique<SparseLuSolver>(matrix);
}

std::unique_ptr<LinearSolver> make_dense_lu(const Matrix& matrix) {
    return std::make_unique<DenseLuSolver>(matrix);
}

DenseSystem::DenseSystem(std::shared_ptr<const DiscreteIntegral> integral, Matrix skew, int quad_order)
    : integral_(std::move(integral)), skew_(std::move(skew)), quad_order_(quad_order) {
    if (!integral_) throw DomainError("DenseSystem: null integral");
    if (skew_.rows() != integral_->dim() || skew_.cols() != integral_->dim()) {
        throw DimensionError("DenseSystem: skew matrix size " + std::to_string(skew_.rows()) +
                             " does not match integral dimension " + std::to_string(integral_->dim()));
    }
}

Vector DenseSystem::apply_skew(const Vector& w) const { return skew_ * w; }

Vector DenseSystem::avf(const Vector& v, const Vector& u) const {
    return avf_gradient(*integral_, v, u, quad_order_);
}

SparseMatrix DenseSystem::avf_jacobian(const Vector& v, const Vector& u) const {
    return ipmesh::avf_jacobian(*integral_, v, u, quad_order_);
}

std::unique_ptr<LinearSolver> DenseSystem::factor_step_matrix(double dt, const SparseMatrix& K, double mu,
                                                              CorrectionKind) const {
    const Index n = dim();
    const Matrix Kd = Matrix(K);
    Matrix m = Matrix::Identity(n, n) - (dt * skew_ - mu * Matrix::Identity(n, n)) * Kd;
    return make_dense_lu(m);
}

QuadraticIntegral QuadraticIntegral::identity(Index n) {
    SparseMatrix I(n, n);
    I.setIdentity();
    return QuadraticIntegral(I);
}

}  // namespace ipmesh
