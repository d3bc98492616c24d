#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "mlg/error.hpp"
#include "mlg/spectral.hpp"
#include "support/oracles.hpp"

namespace {

const char* kCubic = "x1^3 - 3*x1*x2^2";

Eigen::MatrixXd diag(std::initializer_list<double> d) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
    int i = 0;
    for (double x : d) v(i++) = x;
    return v.asDiagonal();
}

struct Sample {
    mlg::Hessians h;
    mlg::EmbeddingJet ej;
};

Sample sampleAt(const mlg::PotentialTriple& pt, const std::vector<double>& x) {
    const auto jets = mlg::potentialJets(pt, x);
    return {mlg::hessiansOf(jets), mlg::embed(x, jets)};
}

void expectInvariants(const mlg::Spectrum& spec, const mlg::Hessians& h) {
    const int n = spec.dim();
    EXPECT_LE((spec.basis.transpose() * spec.basis - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-12);
    for (int s = 0; s < 3; ++s)
        for (int i = 0; i < n; ++i) {
            const Eigen::VectorXd a = spec.basis.col(i);
            EXPECT_LE((h[static_cast<std::size_t>(s)] * a - spec.lambdas(i, s) * a).cwiseAbs().maxCoeff(), 1e-9);
        }
    for (int i = 0; i < n; ++i) EXPECT_GE(spec.normalizers(i), 1.0);
    for (int i = 1; i < n; ++i) {
        const Eigen::Vector3d p = spec.bigLambda(i - 1), q = spec.bigLambda(i);
        EXPECT_TRUE(std::lexicographical_compare(q.data(), q.data() + 3, p.data(), p.data() + 3) == false);
    }
}

}  // namespace

TEST(JointDiagonalize, DiagonalTriple) {
    const Eigen::MatrixXd h = diag({6, -6});
    const auto spec = mlg::jointDiagonalize({h, h, h});
    EXPECT_EQ(spec.lambdas.row(0), Eigen::RowVector3d(-6, -6, -6));
    EXPECT_EQ(spec.lambdas.row(1), Eigen::RowVector3d(6, 6, 6));
    EXPECT_NEAR(std::abs(spec.basis(1, 0)), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(spec.basis(0, 1)), 1.0, 1e-15);
    expectInvariants(spec, {h, h, h});
}

TEST(JointDiagonalize, OffDiagonalPair) {
    Eigen::MatrixXd h1(2, 2);
    h1 << 0, 1, 1, 0;
    const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
    const auto spec = mlg::jointDiagonalize({h1, z, z});
    EXPECT_NEAR(spec.lambdas(0, 0), -1.0, 1e-15);
    EXPECT_NEAR(spec.lambdas(1, 0), 1.0, 1e-15);
    EXPECT_EQ(spec.lambdas.col(1).norm() + spec.lambdas.col(2).norm(), 0.0);
    const double r = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(spec.basis(0, 0)), r, 1e-15);
    EXPECT_NEAR(spec.basis(0, 0) * spec.basis(1, 0), -0.5, 1e-15);  // (1, -1)/sqrt 2 for -1
    EXPECT_NEAR(spec.basis(0, 1) * spec.basis(1, 1), 0.5, 1e-15);   // (1, 1)/sqrt 2 for +1
    expectInvariants(spec, {h1, z, z});
}

TEST(JointDiagonalize, ZeroMatricesGiveIdentity) {
    const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(3, 3);
    const auto spec = mlg::jointDiagonalize({z, z, z});
    EXPECT_TRUE(spec.basis.isIdentity(0.0));
    EXPECT_EQ(spec.lambdas.norm(), 0.0);
}

TEST(JointDiagonalize, DegenerateFirstMatrixIsRefinedByTheOthers) {
    oracle::Rng rng(41);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 4;
        const Eigen::MatrixXd q = oracle::randomOrthogonal(rng, n);
        Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(n, n), d2 = d1, d3 = d1;
        for (int i = 0; i < n; ++i) {
            d1(i, i) = i < n / 2 ? 1.0 : -2.0;  // two clusters
            d2(i, i) = i % 2 ? 0.5 : 0.0;       // splits within clusters
            d3(i, i) = static_cast<double>(i);  // fully separates
        }
        const mlg::Hessians h{q * d1 * q.transpose(), q * d2 * q.transpose(), q * d3 * q.transpose()};
        const auto spec = mlg::jointDiagonalize(h);
        expectInvariants(spec, h);
        for (int s = 0; s < 3; ++s) {
            Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(n, n);
            for (int i = 0; i < n; ++i) rebuilt += spec.lambdas(i, s) * spec.basis.col(i) * spec.basis.col(i).transpose();
            EXPECT_LE((rebuilt - h[static_cast<std::size_t>(s)]).cwiseAbs().maxCoeff(), 1e-9);
        }
    }
}

TEST(JointDiagonalize, Deterministic) {
    oracle::Rng rng(42);
    const auto u = oracle::commutingTriple(rng, 4);
    const auto pt = mlg::PotentialTriple::fromText(4, u[0], u[1], u[2]);
    const auto s = sampleAt(pt, {0.1, -0.2, 0.3, 0.4});
    const auto a = mlg::jointDiagonalize(s.h), b = mlg::jointDiagonalize(s.h);
    EXPECT_EQ(a.basis, b.basis);
    EXPECT_EQ(a.lambdas, b.lambdas);
}

TEST(JointDiagonalize, NonCommutingThrowsAndNearCommutingIsFlagged) {
    Eigen::MatrixXd h1(2, 2), h2(2, 2);
    h1 << 0, 1, 1, 0;
    h2 << 2, 0, 0, 0;
    const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(2, 2);
    EXPECT_THROW(mlg::jointDiagonalize({h1, h2, z}), mlg::NotCommuting);

    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 2);
    p(0, 1) = p(1, 0) = 2e-9;  // commutator with diag(1, 0) has entries 2e-9: between tol and 10 tol
    const auto spec = mlg::jointDiagonalize({diag({1, 0}) + p, diag({1, 0}), z}, 1e-9);
    EXPECT_TRUE(spec.approximate);
    EXPECT_FALSE(mlg::jointDiagonalize({diag({1, 0}), diag({1, 0}), z}).approximate);
}

TEST(Frame, ZeroSpectrum) {
    const auto frame = mlg::buildFrame(mlg::Spectrum::fromLambdas(Eigen::MatrixXd::Zero(2, 3)));
    EXPECT_TRUE(frame.all().isIdentity(0.0));
}

TEST(Frame, SingleDirectionRows) {
    Eigen::MatrixXd l(1, 3);
    l << 1, 0, 0;
    const Eigen::MatrixXd e = mlg::buildFrame(mlg::Spectrum::fromLambdas(l)).all();
    const double r = 1 / std::sqrt(2.0);
    EXPECT_TRUE(e.col(0).isApprox(Eigen::Vector4d(1, 1, 0, 0) * r));
    EXPECT_TRUE(e.col(1).isApprox(Eigen::Vector4d(-1, 1, 0, 0) * r));
    EXPECT_TRUE(e.col(2).isApprox(Eigen::Vector4d(0, 0, 1, -1) * r));
    EXPECT_TRUE(e.col(3).isApprox(Eigen::Vector4d(0, 0, 1, 1) * r));
}

TEST(Frame, TripleCubicAtOneZero) {
    const auto pt = mlg::PotentialTriple::fromText(2, kCubic, kCubic, kCubic);
    const auto s = sampleAt(pt, {1.0, 0.0});
    const auto spec = mlg::jointDiagonalize(s.h);
    const auto frame = mlg::buildFrame(spec);
    // Row 1 is Lambda = (6, 6, 6) with a = e1.
    const Eigen::VectorXd a = spec.basis.col(1);
    EXPECT_NEAR(spec.normalizers(1), std::sqrt(109.0), 1e-13);
    Eigen::VectorXd want(8);
    want << a, 6 * a, 6 * a, 6 * a;
    EXPECT_LE((frame.tangent.col(1) - want / std::sqrt(109.0)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(mlg::starOmegaSpectral(spec), 1.0 / 109.0, 1e-16);
}

TEST(Frame, InvariantsOnRandomCommutingGraphs) {
    oracle::Rng rng(43);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + t % 4;
        const auto u = oracle::commutingTriple(rng, n);
        const auto pt = mlg::PotentialTriple::fromText(n, u[0], t % 3 ? u[1] : "0", t % 5 ? u[2] : "0");
        const auto s = sampleAt(pt, oracle::randomPoint(rng, n));
        const auto spec = mlg::jointDiagonalize(s.h);
        expectInvariants(spec, s.h);
        const auto frame = mlg::buildFrame(spec);
        const auto d = mlg::frameDefects(frame, spec, s.h, s.ej, mlg::SymplecticStructures::forDimension(n));
        ASSERT_LE(d.orthonormality, 1e-10);
        ASSERT_LE(d.complexStructure, 1e-10);
        ASSERT_LE(d.tangency, 1e-10);
        ASSERT_LE(d.reconstruction, 1e-9);
        const double viaDet = mlg::starOmegaDet(s.h);
        ASSERT_LE(std::abs(mlg::starOmegaSpectral(spec) - viaDet) / viaDet, 1e-10);
    }
}

TEST(Frame, TangentVectorsSpanTheGraphTangentSpace) {
    // Independent check: each e_i is a combination of the columns of dF with the predicted coefficients a_i / A_i.
    const auto pt = mlg::PotentialTriple::fromText(2, kCubic, "0", "0");
    const auto s = sampleAt(pt, {0.4, -0.7});
    const auto spec = mlg::jointDiagonalize(s.h);
    const auto frame = mlg::buildFrame(spec);
    for (int i = 0; i < 2; ++i) {
        const Eigen::VectorXd viaTangents = s.ej.tangents * spec.basis.col(i) / spec.normalizers(i);
        EXPECT_LE((viaTangents - frame.tangent.col(i)).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(StarOmegaSpectral, Examples) {
    EXPECT_EQ(mlg::starOmegaSpectral(mlg::Spectrum::fromLambdas(Eigen::MatrixXd::Zero(3, 3))), 1.0);
    Eigen::MatrixXd l(1, 3);
    l << 1, 1, 1;
    EXPECT_DOUBLE_EQ(mlg::starOmegaSpectral(mlg::Spectrum::fromLambdas(l)), 0.5);
}

TEST(SMatrix, Examples) {
    EXPECT_EQ(mlg::sMatrix(Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()).norm(), 0.0);

    const Eigen::Matrix3d s = mlg::sMatrix(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0));
    Eigen::Matrix3d want = Eigen::Matrix3d::Zero();
    want(0, 1) = want(1, 0) = 0.5;
    EXPECT_EQ(s, want);
    const Eigen::VectorXd ev = oracle::denseEigenvalues(s);
    EXPECT_NEAR(ev(0), -0.5, 1e-15);
    EXPECT_NEAR(ev(1), 0.0, 1e-15);
    EXPECT_NEAR(ev(2), 0.5, 1e-15);

    const Eigen::Matrix3d ones = mlg::sMatrix(Eigen::Vector3d::Ones(), Eigen::Vector3d::Ones());
    EXPECT_EQ(ones, Eigen::Matrix3d::Ones());
    EXPECT_NEAR(oracle::denseEigenvalues(ones)(2), 3.0, 1e-14);
}
