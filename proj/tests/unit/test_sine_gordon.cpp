#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "ipmesh/errors.hpp"
#include "ipmesh/mesh_adapt.hpp"
#include "ipmesh/sine_gordon.hpp"
#include "oracles.hpp"

using namespace ipmesh;
using ipmesh::testing::Gen;

TEST(TrapezoidWeights, Examples) {
    const Vector k1 = trapezoid_weights(Mesh1D({0.0, 0.5, 1.0}, false));
    EXPECT_DOUBLE_EQ(k1[0], 0.25);
    EXPECT_DOUBLE_EQ(k1[1], 0.5);
    EXPECT_DOUBLE_EQ(k1[2], 0.25);
    const Vector k2 = trapezoid_weights(Mesh1D({0.0, 0.2, 1.0}, false));
    EXPECT_DOUBLE_EQ(k2[0], 0.1);
    EXPECT_DOUBLE_EQ(k2[1], 0.5);
    EXPECT_DOUBLE_EQ(k2[2], 0.4);
}

TEST(TrapezoidWeights, MergedWeightsSumToLength) {
    Gen gen(1);
    for (int t = 0; t < 30; ++t) {
        const Mesh1D m = gen.mesh(-3, 4, gen.index(3, 50), true);
        const Vector k = merged_trapezoid_weights(m);
        EXPECT_EQ(k.size(), m.intervals());
        EXPECT_NEAR(k.sum(), 7.0, 1e-13);
        EXPECT_GT(k.minCoeff(), 0.0);
        EXPECT_DOUBLE_EQ(k[0], 0.5 * (m.spacing(0) + m.spacing(m.intervals() - 1)));
    }
}

TEST(TrapezoidWeights, AdaptedMeshesKeepTotal) {
    const SineGordonParams p = SineGordonParams::uniform(30, 120, 0.9);
    const Vector u = sg_exact_state(p.mesh, 3.0, 0.9).head(120);
    const Mesh1D m = adapt_mesh(u, p.mesh, MonitorConfig{});
    EXPECT_NEAR(merged_trapezoid_weights(m).sum(), 60.0, 1e-12);
}

TEST(SgEnergy, VacuumAndConstantVelocity) {
    const SineGordonParams p = SineGordonParams::uniform(5, 20, 0.5);
    Vector s = Vector::Zero(40);
    EXPECT_EQ(sg_energy(p, s), 0.0);
    s.tail(20).setOnes();
    EXPECT_NEAR(sg_energy(p, s), 5.0, 1e-13);
}

TEST(SgEnergy, MatchesFullIndexOracle) {
    Gen gen(2);
    for (int t = 0; t < 20; ++t) {
        const Mesh1D m = gen.mesh(-4, 4, gen.index(3, 30), true);
        const SineGordonEnergy I(m);
        const Vector s = gen.vector(I.dim(), -2, 2);
        EXPECT_NEAR(I.value(s), ipmesh::testing::sg_energy_full_index(m, s), 1e-12 * (1 + std::abs(I.value(s))));
    }
}

TEST(SgEnergy, GradientMatchesFiniteDifferences) {
    Gen gen(3);
    for (int t = 0; t < 20; ++t) {
        const Mesh1D m = gen.mesh(-2, 2, 16, true);
        const SineGordonEnergy I(m);
        const Vector s = gen.vector(I.dim(), -1.5, 1.5);
        const Vector g = I.gradient(s);
        const Vector fd = ipmesh::testing::fd_gradient([&](const Vector& x) { return I.value(x); }, s);
        for (Index i = 0; i < g.size(); ++i) EXPECT_LE(std::abs(g[i] - fd[i]), 1e-6 * std::max(1.0, std::abs(g[i])));
        // v-block is kappa * v
        const Vector k = I.weights();
        EXPECT_LT((g.tail(16) - k.cwiseProduct(s.tail(16))).norm(), 1e-14);
    }
}

TEST(SgEnergy, HessianMatchesFiniteDifferences) {
    Gen gen(4);
    const Mesh1D m = gen.mesh(-2, 2, 9, true);
    const SineGordonEnergy I(m);
    const Vector s = gen.vector(I.dim(), -1, 1);
    const Matrix H = Matrix(I.hessian(s));
    for (Index j = 0; j < s.size(); ++j) {
        Vector p = s, q = s;
        p[j] += 1e-6;
        q[j] -= 1e-6;
        EXPECT_LT(((I.gradient(p) - I.gradient(q)) / 2e-6 - H.col(j)).norm(), 1e-7);
    }
}

TEST(SgEnergy, VacuumIsCritical) {
    const SineGordonEnergy I(Mesh1D::uniform(-1, 1, 10, true));
    EXPECT_EQ(I.gradient(Vector::Zero(20)).norm(), 0.0);
}

TEST(SgSkew, BlockStructureAndSkewness) {
    Gen gen(5);
    const Mesh1D m = gen.mesh(-3, 3, 12, true);
    const SineGordonParams p{m, 3, 0.5};
    const SparseMatrix S = sg_build_skew(p);
    const Vector k = merged_trapezoid_weights(m);
    const Vector g = gen.vector(24, -1, 1);
    const Vector Sg = S * g;
    EXPECT_LT((Sg.head(12) - g.tail(12).cwiseQuotient(k)).norm(), 1e-14);
    EXPECT_LT((Sg.tail(12) + g.head(12).cwiseQuotient(k)).norm(), 1e-14);
    EXPECT_LT(Matrix(S + SparseMatrix(S.transpose())).cwiseAbs().maxCoeff(), 1e-15);
    const Vector a = gen.vector(24, -1, 1);
    EXPECT_LT(std::abs(a.dot(S * a)), 1e-13);
}

TEST(SgSystem, VacuumIsEquilibriumAndFieldOrthogonal) {
    Gen gen(6);
    const SineGordonSystem sys(gen.mesh(-4, 4, 20, true));
    EXPECT_EQ(sys.vector_field(Vector::Zero(40)).norm(), 0.0);
    for (int t = 0; t < 10; ++t) {
        const Vector s = gen.vector(40, -2, 2);
        const Vector g = sys.integral().gradient(s);
        EXPECT_LT(std::abs(g.dot(sys.vector_field(s))), 1e-12 * (1 + g.squaredNorm()));
    }
}

TEST(SgSystem, AvfSecantPropertyFourPointGauss) {
    Gen gen(7);
    for (int t = 0; t < 100; ++t) {
        const SineGordonSystem sys(gen.mesh(-4, 4, 32, true));
        const Vector v = gen.vector(64, -1, 1);
        const Vector u = v + 0.2 * gen.vector(64, -1, 1);
        const auto& I = sys.integral();
        EXPECT_LE(secant_defect(I, v, u, sys.avf(v, u)), 1e-10 * (1 + std::abs(I.value(u)) + std::abs(I.value(v))));
    }
}

TEST(SgExact, Values) {
    EXPECT_EQ(sg_exact(1.3, 0.0, 0.7), 0.0);
    // 4 atan(2 sinh(0.5/sqrt(0.75))), evaluated to 30 digits offline
    EXPECT_NEAR(sg_exact(0.0, 1.0, 0.5), 3.53658369922512045719997245621, 1e-13);
    EXPECT_DOUBLE_EQ(sg_exact(-2.1, 0.8, 0.9), sg_exact(2.1, 0.8, 0.9));
    EXPECT_THROW(sg_exact(0, 0, 1.0), DomainError);
    EXPECT_TRUE(std::isfinite(sg_exact(30.0, 2.0, 0.99)));
}

TEST(SgExact, VelocityValuesAndFiniteDifferences) {
    // 4 / sqrt(1 - 0.99^2)
    EXPECT_NEAR(sg_exact_velocity(0.0, 0.0, 0.99), 28.355248200333436030617414454, 1e-11);
    EXPECT_NEAR(sg_exact_velocity(0.3, 0.4, 0.7), 4.33536140756925256070373675053, 1e-12);
    Gen gen(8);
    for (int t = 0; t < 20; ++t) {
        const double x = gen.uniform(-5, 5), tt = gen.uniform(0, 3), c = gen.uniform(0.1, 0.95);
        const double fd = (sg_exact(x, tt + 1e-6, c) - sg_exact(x, tt - 1e-6, c)) / 2e-6;
        EXPECT_LE(std::abs(fd - sg_exact_velocity(x, tt, c)), 1e-7 * std::max(1.0, std::abs(fd)));
        EXPECT_DOUBLE_EQ(sg_exact_velocity(-x, tt, c), sg_exact_velocity(x, tt, c));
    }
}

TEST(SgEnergy, InitialEnergyConvergesFast) {
    // u = 0 at t = 0, so only the trapezoid sum of v^2 remains: spectral in h
    const double c = 0.99;
    const double exact = 16.0 / std::sqrt(1 - c * c);
    double prev = 0;
    for (Index M : {300, 600, 1200}) {
        const SineGordonParams p = SineGordonParams::uniform(30, M, c);
        const double e = std::abs(sg_energy(p, sg_exact_state(p.mesh, 0, c)) - exact);
        if (prev > 0) EXPECT_GT(std::log2(prev / e), 4.0);
        prev = e;
    }
    EXPECT_LT(prev, 1e-7);
}

TEST(SgEnergy, SecondOrderConvergenceOfMovingKinkEnergy) {
    const double c = 0.99;
    const double exact = 16.0 / std::sqrt(1 - c * c);
    double err[3];
    const Index Ms[3] = {1200, 2400, 4800};
    for (int i = 0; i < 3; ++i) {
        const SineGordonParams p = SineGordonParams::uniform(30, Ms[i], c);
        err[i] = std::abs(sg_energy(p, sg_exact_state(p.mesh, 0.5, c)) - exact);
    }
    EXPECT_NEAR(std::log2(err[0] / err[1]), 2.0, 0.3);
    EXPECT_NEAR(std::log2(err[1] / err[2]), 2.0, 0.3);
}

TEST(SgParams, Validation) {
    EXPECT_THROW(SineGordonParams::uniform(10, 20, 1.0), DomainError);
    EXPECT_THROW(SineGordonParams::uniform(10, 2, 0.5), DomainError);
    EXPECT_THROW((SineGordonParams{Mesh1D::uniform(-1, 1, 8, false), 1, 0.5}).validate(), DomainError);
}
