#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "ipmesh/errors.hpp"
#include "ipmesh/kdv.hpp"
#include "oracles.hpp"

using namespace ipmesh;
using ipmesh::testing::Gen;

namespace {

Matrix dense(const SparseMatrix& m) { return Matrix(m); }

}  // namespace

TEST(KdvAssembly, UniformStencils) {
    const double h = 0.25;
    const FemOperators ops = assemble_operators(Mesh1D::uniform(0, 16 * h, 16, true));
    const Matrix A = dense(ops.A), B = dense(ops.B), E = dense(ops.E);
    for (Index i : {0, 5, 15}) {
        const Index l = (i + 15) % 16, r = (i + 1) % 16;
        EXPECT_NEAR(A(i, l), h / 6, 1e-15);
        EXPECT_NEAR(A(i, i), 2 * h / 3, 1e-15);
        EXPECT_NEAR(A(i, r), h / 6, 1e-15);
        EXPECT_NEAR(E(i, l), -1 / h, 1e-13);
        EXPECT_NEAR(E(i, i), 2 / h, 1e-13);
        EXPECT_NEAR(E(i, r), -1 / h, 1e-13);
        // B_ji = int phi_i phi_j': row i holds +1/2 at i-1 and -1/2 at i+1
        EXPECT_NEAR(B(i, l), 0.5, 1e-15);
        EXPECT_NEAR(B(i, i), 0.0, 1e-15);
        EXPECT_NEAR(B(i, r), -0.5, 1e-15);
        EXPECT_NEAR(ops.D(i, i, i), h / 2, 1e-15);
        EXPECT_NEAR(ops.D(i, i, r), h / 12, 1e-15);
        EXPECT_NEAR(ops.D(i, l, l), h / 12, 1e-15);
        EXPECT_EQ(ops.D(l, i, r), 0.0);
    }
}

TEST(KdvAssembly, MatchesClosedFormElementIntegrals) {
    Gen gen(1);
    for (int t = 0; t < 20; ++t) {
        const Mesh1D m = gen.mesh(-5, 5, gen.index(8, 64), true);
        const FemOperators ops = assemble_operators(m);
        const auto ref = ipmesh::testing::dense_hat_operators(m);
        EXPECT_LT((dense(ops.A) - ref.A).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_LT((dense(ops.B) - ref.B).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_LT((dense(ops.E) - ref.E).cwiseAbs().maxCoeff(), 1e-9 * ref.E.cwiseAbs().maxCoeff());
    }
}

TEST(KdvAssembly, OperatorInvariantsOnRandomMeshes) {
    Gen gen(2);
    for (int t = 0; t < 30; ++t) {
        const Index M = gen.index(8, 64);
        const Mesh1D m = gen.mesh(-5, 5, M, true);
        const FemOperators ops = assemble_operators(m);
        const Matrix A = dense(ops.A), B = dense(ops.B), E = dense(ops.E);
        EXPECT_LT((A - A.transpose()).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LT((B + B.transpose()).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_LT((E - E.transpose()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_GT(Eigen::SelfAdjointEigenSolver<Matrix>(A).eigenvalues().minCoeff(), 0.0);
        const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(E).eigenvalues();
        EXPECT_GT(ev[0], -1e-10);
        EXPECT_GT(ev[1], 1e-8);  // null space is the constants only
        EXPECT_LT((E * Vector::Ones(M)).norm(), 1e-11);
        // row sums of A are the support measures
        for (Index i = 0; i < M; ++i) {
            const double support = m.spacing(i) + m.spacing((i + M - 1) % M);
            EXPECT_NEAR(A.row(i).sum(), 0.5 * support, 1e-14);
        }
        EXPECT_LT((dense(ops.D.contract1(Vector::Ones(M))) - A).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(KdvAssembly, TensorSymmetryAndContractions) {
    Gen gen(3);
    const Mesh1D m = gen.mesh(-2, 2, 10, true);
    const CubicTensor& D = assemble_operators(m).D;
    for (const auto& e : D.entries()) {
        EXPECT_LE(e.i, e.j);
        EXPECT_LE(e.j, e.k);
    }
    // brute-force dense contraction
    const Vector a = gen.vector(10, -1, 1), b = gen.vector(10, -1, 1);
    Vector q = Vector::Zero(10);
    double c3 = 0;
    for (Index i = 0; i < 10; ++i)
        for (Index j = 0; j < 10; ++j)
            for (Index k = 0; k < 10; ++k) {
                EXPECT_EQ(D(i, j, k), D(k, i, j));
                EXPECT_EQ(D(i, j, k), D(j, i, k));
                q[i] += D(i, j, k) * a[j] * b[k];
                c3 += D(i, j, k) * a[i] * a[j] * a[k];
            }
    EXPECT_LT((D.contract2(a, b) - q).norm(), 1e-14);
    EXPECT_NEAR(D.contract3(a), c3, 1e-14);
}

TEST(KdvAssembly, DegenerateOrNonPeriodicMeshThrows) {
    EXPECT_THROW(assemble_operators(Mesh1D::uniform(0, 1, 8, false)), AssemblyError);
    EXPECT_THROW(assemble_operators(Mesh1D({0.0, 1e-17, 0.5, 1.0}, true)), AssemblyError);
}

TEST(KdvHamiltonian, ZeroAndConstant) {
    const double L = 3.0, k0 = 0.7;
    Gen gen(4);
    const FemOperators ops = assemble_operators(gen.mesh(-L, L, 20, true));
    EXPECT_EQ(kdv_hamiltonian(ops, Vector::Zero(20)), 0.0);
    EXPECT_NEAR(kdv_hamiltonian(ops, Vector::Constant(20, k0)), -k0 * k0 * k0 * 2 * L, 1e-13);
}

TEST(KdvHamiltonian, GradientAndHessianMatchFiniteDifferences) {
    Gen gen(5);
    for (int t = 0; t < 10; ++t) {
        const KdvSystem sys(gen.mesh(-3, 3, 12, true));
        const auto& I = sys.integral();
        const Vector u = gen.vector(12, -1, 2);
        const Vector g = I.gradient(u);
        const Vector fd = ipmesh::testing::fd_gradient([&](const Vector& x) { return I.value(x); }, u);
        EXPECT_LE((g - fd).norm(), 1e-7 * (1 + g.norm()));
        const Matrix H = Matrix(I.hessian(u));
        for (Index j = 0; j < 12; ++j) {
            Vector p = u, q = u;
            p[j] += 1e-6;
            q[j] -= 1e-6;
            EXPECT_LT(((I.gradient(p) - I.gradient(q)) / 2e-6 - H.col(j)).norm(), 1e-7);
        }
    }
}

TEST(KdvHamiltonian, QuadraticPartOnlyWhenTensorDropped) {
    Gen gen(6);
    FemOperators ops = assemble_operators(gen.mesh(-3, 3, 12, true));
    ops.D = CubicTensor(12, {});
    const Vector u = gen.vector(12, -1, 1);
    EXPECT_LT((kdv_gradient(ops, u) - ops.E * u).norm(), 1e-14);
}

TEST(KdvAvf, ClosedFormPropertiesOnRandomPairs) {
    Gen gen(7);
    for (int t = 0; t < 100; ++t) {
        const KdvSystem sys(gen.mesh(-3, 3, 12, true));
        const auto& ops = sys.operators();
        const Vector v = gen.vector(12, -1, 2);
        const Vector u = v + 0.2 * gen.vector(12, -1, 1);
        const Vector dg = kdv_avf_gradient(ops, v, u);
        // quadrature AVF with 2-point Gauss is exact on the cubic
        EXPECT_LT((dg - avf_gradient(sys.integral(), v, u, 2)).lpNorm<Eigen::Infinity>(), 1e-13);
        const double Hu = kdv_hamiltonian(ops, u), Hv = kdv_hamiltonian(ops, v);
        EXPECT_LE(secant_defect(sys.integral(), v, u, dg), 1e-12 * (1 + std::abs(Hu) + std::abs(Hv)));
        EXPECT_LT((kdv_avf_gradient(ops, u, u) - kdv_gradient(ops, u)).norm(), 1e-13);
    }
}

TEST(KdvAvf, JacobianMatchesFiniteDifferences) {
    Gen gen(8);
    const KdvSystem sys(gen.mesh(-3, 3, 10, true));
    const Vector v = gen.vector(10, -1, 2), u = gen.vector(10, -1, 2);
    const Matrix J = Matrix(sys.avf_jacobian(v, u));
    for (Index j = 0; j < 10; ++j) {
        Vector p = u, q = u;
        p[j] += 1e-6;
        q[j] -= 1e-6;
        EXPECT_LT(((sys.avf(v, p) - sys.avf(v, q)) / 2e-6 - J.col(j)).norm(), 1e-8);
    }
}

TEST(KdvSkew, MatchesDenseOracleOnUniformMesh) {
    const Mesh1D m = Mesh1D::uniform(-4, 4, 16, true);
    const FemOperators ops = assemble_operators(m);
    const Matrix Ainv = dense(ops.A).inverse();
    const Matrix S = -Ainv * dense(ops.B) * Ainv;
    Gen gen(9);
    for (int t = 0; t < 5; ++t) {
        const Vector w = gen.vector(16, -1, 1);
        EXPECT_LT((kdv_apply_skew(ops, w) - S * w).lpNorm<Eigen::Infinity>(), 1e-12);
    }
}

TEST(KdvSkew, SkewnessAndConstants) {
    Gen gen(10);
    const KdvSystem sys(gen.mesh(-4, 4, 24, true));
    const Vector w = gen.vector(24, -1, 1);
    EXPECT_LT(std::abs(w.dot(sys.apply_skew(w))), 1e-12);
    const Vector a1 = sys.operators().A * Vector::Ones(24);
    EXPECT_LT(sys.apply_skew(a1).norm(), 1e-12);
    const Vector u = gen.vector(24, -1, 2);
    const Vector f = sys.vector_field(u);
    EXPECT_LT(std::abs(a1.dot(f)), 1e-12);
    EXPECT_LT(std::abs(sys.integral().gradient(u).dot(f)), 1e-11);
}

TEST(KdvSystem, BlockStepMatrixMatchesDense) {
    Gen gen(11);
    const KdvSystem sys(gen.mesh(-4, 4, 14, true));
    const Vector v = gen.vector(14, -1, 2), u = gen.vector(14, -1, 2);
    const SparseMatrix K = sys.avf_jacobian(v, u);
    const Matrix Ainv = dense(sys.operators().A).inverse();
    const Matrix S = -Ainv * dense(sys.operators().B) * Ainv;
    const Vector b = gen.vector(14, -1, 1);
    const double dt = 0.05, mu = 0.3;
    const Matrix I = Matrix::Identity(14, 14);
    const Matrix P0 = I - (dt * S - mu * I) * dense(K);
    const Matrix P1 = I - (dt * S - mu * Ainv) * dense(K);
    EXPECT_LT((sys.factor_step_matrix(dt, K, mu, CorrectionKind::Avf)->solve(b) - P0.lu().solve(b)).norm(), 1e-10);
    EXPECT_LT((sys.factor_step_matrix(dt, K, mu, CorrectionKind::Weighted)->solve(b) - P1.lu().solve(b)).norm(),
              1e-10);
}

TEST(KdvExact, Values) {
    EXPECT_DOUBLE_EQ(kdv_exact(12.0, 2.0, 6.0), 3.0);
    EXPECT_DOUBLE_EQ(kdv_exact(-1.7, 0.0, 6.0), kdv_exact(1.7, 0.0, 6.0));
    // half height at sqrt(c)/2 |x - ct| = acosh(sqrt 2)
    const double x = 2 * std::acosh(std::sqrt(2.0)) / std::sqrt(6.0);
    EXPECT_NEAR(x, 0.719638520321462494506069291116, 1e-15);
    EXPECT_NEAR(kdv_exact(x, 0.0, 6.0), 1.5, 1e-14);
    EXPECT_THROW(kdv_exact(0, 0, -1), DomainError);
    EXPECT_NEAR(kdv_exact_periodic(-9.0, 1.0, 1.0, 10.0), kdv_exact(11.0, 1.0, 1.0), 1e-15);
}

TEST(KdvHamiltonian, SolitonEnergyConvergesToAnalyticValue) {
    const double c = 6, exact = -std::pow(c, 2.5) / 5;
    double err[3];
    const Index Ms[3] = {800, 1600, 3200};
    for (int i = 0; i < 3; ++i) {
        const KdvParams p = KdvParams::uniform(100, Ms[i], c);
        err[i] = std::abs(kdv_hamiltonian(assemble_operators(p.mesh), kdv_exact_state(p.mesh, 0, c)) - exact);
    }
    EXPECT_NEAR(std::log2(err[0] / err[1]), 2.0, 0.3);
    EXPECT_NEAR(std::log2(err[1] / err[2]), 2.0, 0.3);
}
