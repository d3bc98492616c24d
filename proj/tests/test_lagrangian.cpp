#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "mlg/lagrangian.hpp"
#include "support/oracles.hpp"

namespace {

const char* kCubic = "x1^3 - 3*x1*x2^2";

Eigen::MatrixXd mat2(double a, double b, double c, double d) {
    Eigen::MatrixXd m(2, 2);
    m << a, b, c, d;
    return m;
}

double maxAbs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a * b - b * a; }

}  // namespace

TEST(GeneralResidual, SymmetricJacobiansCancel) {
    const Eigen::MatrixXd h = mat2(1.5, -0.3, -0.3, 2.0);
    EXPECT_EQ(mlg::lagrangianResidualGeneral({h, h, h}), 0.0);
    const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
    EXPECT_EQ(mlg::lagrangianResidualGeneral({z, z, z}), 0.0);
}

TEST(GeneralResidual, CommutatorTermOfTwoByTwoExample) {
    const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
    EXPECT_DOUBLE_EQ(mlg::lagrangianResidualGeneral({mat2(0, 1, 1, 0), mat2(2, 0, 0, 0), z}), 2.0);
}

TEST(GeneralResidual, SeesNonSymmetricJacobians) {
    // f1 = (x2, 0): Df1 - Df1^T is nonzero even though nothing else is present.
    const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
    EXPECT_DOUBLE_EQ(mlg::lagrangianResidualGeneral({mat2(0, 1, 0, 0), z, z}), 1.0);
}

TEST(Commutator, Examples) {
    const std::vector<double> x{0.3, -0.7};
    auto res = [&](const char* a, const char* b, const char* c) {
        return mlg::commutatorResidual(mlg::PotentialTriple::fromText(2, a, b, c), x);
    };
    EXPECT_EQ(res(kCubic, kCubic, kCubic), 0.0);
    EXPECT_DOUBLE_EQ(res("x1*x2", "x1^2", "0"), 2.0);
    EXPECT_EQ(res("0.5*1.7*(x1^2 + x2^2)", "sin(x1)*x2^3", "0"), 0.0);
}

TEST(Symplectic, QuaternionRelations) {
    for (int n : {1, 2, 3}) {
        const auto sym = mlg::SymplecticStructures::forDimension(n);
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4 * n, 4 * n);
        for (int s = 0; s < 3; ++s) {
            const auto& S = sym.complex[static_cast<std::size_t>(s)];
            EXPECT_EQ(maxAbs(S * S + id), 0.0);
            EXPECT_EQ(maxAbs(S.transpose() * S - id), 0.0);
            EXPECT_EQ(maxAbs(sym.omega[static_cast<std::size_t>(s)] + sym.omega[static_cast<std::size_t>(s)].transpose()), 0.0);
            // I a_i = a_{n+i}, J a_i = a_{2n+i}, K a_i = a_{3n+i} on the standard basis.
            for (int i = 0; i < n; ++i) EXPECT_EQ(S((s + 1) * n + i, i), 1.0);
        }
        EXPECT_EQ(maxAbs(sym.complex[0] * sym.complex[1] - sym.complex[2]), 0.0);
    }
}

TEST(Pullback, EqualsHessianCommutatorsInThisConvention) {
    // <I t_a, t_b> = [H2, H3]_ab, <J t_a, t_b> = [H3, H1]_ab, <K t_a, t_b> = [H1, H2]_ab.
    oracle::Rng rng(31);
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + t % 4;
        const auto pt = mlg::PotentialTriple::fromText(n, oracle::randomPolynomial(rng, n, 3),
                                                       oracle::randomPolynomial(rng, n, 3),
                                                       oracle::randomPolynomial(rng, n, 3));
        const auto x = oracle::randomPoint(rng, n);
        const auto jets = mlg::potentialJets(pt, x);
        const auto h = mlg::hessiansOf(jets);
        const auto pb = mlg::pullbackResidual(mlg::embed(x, jets), mlg::SymplecticStructures::forDimension(n));
        const double scale = 1e-12 * (1 + h[0].norm() * h[1].norm() + h[1].norm() * h[2].norm() + h[2].norm() * h[0].norm());
        EXPECT_NEAR(pb[0], maxAbs(commutator(h[1], h[2])), scale);
        EXPECT_NEAR(pb[1], maxAbs(commutator(h[2], h[0])), scale);
        EXPECT_NEAR(pb[2], maxAbs(commutator(h[0], h[1])), scale);
    }
}

TEST(Pullback, VanishesExactlyWhenHessiansCommute) {
    oracle::Rng rng(32);
    int commuting = 0, generic = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 4;
        const bool wantCommuting = t % 2 == 0;
        std::array<std::string, 3> u;
        if (wantCommuting) {
            u = oracle::commutingTriple(rng, n);
        } else {
            for (auto& s : u) s = oracle::randomPolynomial(rng, n, 3);
        }
        const auto pt = mlg::PotentialTriple::fromText(n, u[0], u[1], u[2]);
        const auto x = oracle::randomPoint(rng, n);
        const auto jets = mlg::potentialJets(pt, x);
        const auto h = mlg::hessiansOf(jets);
        const auto pb = mlg::pullbackResidual(mlg::embed(x, jets), mlg::SymplecticStructures::forDimension(n));
        const bool viaCommutator = mlg::commutatorResidual(h) <= 1e-10;
        const bool viaGeneral = mlg::lagrangianResidualGeneral(h) <= 1e-10;
        const bool viaPullback = std::max({pb[0], pb[1], pb[2]}) <= 1e-10;
        ASSERT_EQ(viaCommutator, viaPullback) << u[0];
        ASSERT_EQ(viaCommutator, viaGeneral) << u[0];
        (viaCommutator ? commuting : generic)++;
    }
    // Every constructed triple commutes, and so does every n = 1 draw.
    EXPECT_GE(commuting, 100);
    EXPECT_GE(generic, 50);
}

TEST(Metric, Examples) {
    const std::vector<double> at{1.0, 0.0};
    const auto zero = mlg::PotentialTriple::fromText(2, "0", "0", "0");
    EXPECT_TRUE(mlg::inducedMetric(mlg::embed(at, mlg::potentialJets(zero, at))).isIdentity(0.0));

    const auto cubic = mlg::PotentialTriple::fromText(2, kCubic, kCubic, kCubic);
    const Eigen::MatrixXd g = mlg::inducedMetric(mlg::embed(at, mlg::potentialJets(cubic, at)));
    EXPECT_DOUBLE_EQ(g(0, 0), 109.0);
    EXPECT_DOUBLE_EQ(g(1, 1), 109.0);
    EXPECT_DOUBLE_EQ(g(0, 1), 0.0);

    const auto line = mlg::PotentialTriple::fromText(1, "0.5*2.5*x1^2", "0", "0");
    const std::vector<double> p{0.4};
    EXPECT_DOUBLE_EQ(mlg::inducedMetric(mlg::embed(p, mlg::potentialJets(line, p)))(0, 0), 1 + 2.5 * 2.5);
}

TEST(StarOmegaDet, Examples) {
    const std::vector<double> at{1.0, 0.0};
    EXPECT_EQ(mlg::starOmegaDet(mlg::PotentialTriple::fromText(2, "0", "0", "0"), at), 1.0);
    EXPECT_NEAR(mlg::starOmegaDet(mlg::PotentialTriple::fromText(2, kCubic, kCubic, kCubic), at), 1.0 / 109.0, 1e-15);
    EXPECT_NEAR(mlg::starOmegaDet(mlg::PotentialTriple::fromText(1, "0.5*x1^2", "0", "0"), std::vector<double>{3.0}),
                1.0 / std::sqrt(2.0), 1e-15);
}

TEST(StarOmegaDet, RangeAndMetricBound) {
    oracle::Rng rng(33);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 4;
        const auto pt = mlg::PotentialTriple::fromText(n, oracle::randomPolynomial(rng, n, 3),
                                                       t % 3 ? oracle::randomPolynomial(rng, n, 2) : "0", "0");
        const auto x = oracle::randomPoint(rng, n);
        const auto jets = mlg::potentialJets(pt, x);
        const double w = mlg::starOmegaDet(mlg::hessiansOf(jets));
        ASSERT_GT(w, 0.0);
        ASSERT_LE(w, 1.0);
        const Eigen::MatrixXd g = mlg::inducedMetric(mlg::embed(x, jets));
        EXPECT_EQ(maxAbs(g - g.transpose()), 0.0);
        ASSERT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff(), 1.0 - 1e-12);
    }
    // Affine potentials have zero Hessians: *Omega is exactly 1.
    EXPECT_EQ(mlg::starOmegaDet(mlg::PotentialTriple::fromText(2, "3*x1 - x2 + 1", "x2", "7"), std::vector<double>{0.2, 0.9}), 1.0);
}

TEST(Embedding, BlockStructure) {
    const auto pt = mlg::PotentialTriple::fromText(2, kCubic, "x1*x2^2", "sin(x1)");
    const std::vector<double> x{0.3, -0.4};
    const auto jets = mlg::potentialJets(pt, x);
    const auto ej = mlg::embed(x, jets);
    ASSERT_EQ(ej.position.size(), 8);
    EXPECT_EQ(ej.position(0), 0.3);
    EXPECT_EQ(ej.position(1), -0.4);
    for (int s = 0; s < 3; ++s) {
        EXPECT_EQ((ej.position.segment(2 + 2 * s, 2) - jets[static_cast<std::size_t>(s)].grad).norm(), 0.0);
        for (int a = 0; a < 2; ++a) {
            EXPECT_EQ(ej.tangents(a, a), 1.0);
            EXPECT_EQ((ej.tangents.col(a).segment(2 + 2 * s, 2) - jets[static_cast<std::size_t>(s)].hess.col(a)).norm(), 0.0);
        }
    }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            EXPECT_EQ((ej.second(a, b) - ej.second(b, a)).norm(), 0.0);
            EXPECT_EQ(ej.second(a, b).head(2).norm(), 0.0);
        }
}

TEST(Shapes, Flags) {
    EXPECT_TRUE(mlg::PotentialTriple::fromText(2, kCubic, "0", "0").isSpecialLagrangian());
    EXPECT_TRUE(mlg::PotentialTriple::fromText(2, kCubic, "1", "-2").isSpecialLagrangian());
    EXPECT_FALSE(mlg::PotentialTriple::fromText(2, kCubic, "x1", "0").isSpecialLagrangian());
    EXPECT_TRUE(mlg::PotentialTriple::fromText(2, kCubic, kCubic, kCubic).isTripleEqual());
    EXPECT_FALSE(mlg::PotentialTriple::fromText(2, kCubic, kCubic, "x1^3-3*x1*x2^2 + 0").isTripleEqual());
    EXPECT_TRUE(mlg::PotentialTriple::fromText(2, "0", "0", "0").hasShape(mlg::GraphShape::SpecialLagrangian));
    EXPECT_TRUE(mlg::PotentialTriple::fromText(2, "0", "0", "0").hasShape(mlg::GraphShape::TripleEqual));
    EXPECT_EQ(mlg::shapeFromString("triple-equal"), mlg::GraphShape::TripleEqual);
    EXPECT_EQ(mlg::toString(mlg::GraphShape::SpecialLagrangian), "special-lagrangian");
}
