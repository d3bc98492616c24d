#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "mlg/error.hpp"
#include "mlg/expr.hpp"
#include "support/oracles.hpp"

using mlg::ParseError;

namespace {

const char* kHarmonicCubic = "x1^3 - 3*x1*x2^2";

ParseError::Kind kindOf(const char* src, int n) {
    try {
        mlg::parse(src, n);
    } catch (const ParseError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for " << src;
    return ParseError::Kind::Syntax;
}

}  // namespace

TEST(Parse, HarmonicCubicEvaluates) {
    const mlg::Expr e = mlg::parse(kHarmonicCubic, 2);
    EXPECT_EQ(e.dim(), 2);
    EXPECT_DOUBLE_EQ(mlg::evalExpr(e, std::vector<double>{1, 0}), 1.0);
    EXPECT_DOUBLE_EQ(mlg::evalExpr(e, std::vector<double>{1, 1}), -2.0);
}

TEST(Parse, VariableOutOfRange) {
    EXPECT_EQ(kindOf("x3", 2), ParseError::Kind::VariableOutOfRange);
    EXPECT_EQ(kindOf("x0", 2), ParseError::Kind::VariableOutOfRange);
}

TEST(Parse, UnbalancedParenthesisReportsOffset) {
    try {
        mlg::parse("x1*(x2", 2);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
        EXPECT_EQ(e.offset(), 6u);
    }
}

TEST(Parse, UnknownIdentifier) {
    EXPECT_EQ(kindOf("foo(x1)", 1), ParseError::Kind::UnknownIdentifier);
    EXPECT_EQ(kindOf("y + 1", 1), ParseError::Kind::UnknownIdentifier);
}

TEST(Parse, SyntaxErrors) {
    for (const char* src : {"", "1 +", "x1 x2", "(1", "1)", "sin x1", "2^x1", "1e999", "3 $ 4"}) {
        EXPECT_EQ(kindOf(src, 2), ParseError::Kind::Syntax) << src;
    }
}

TEST(Parse, Precedence) {
    const std::vector<double> x{2.0, 3.0};
    auto ev = [&](const char* s) { return mlg::evalExpr(mlg::parse(s, 2), x); };
    EXPECT_DOUBLE_EQ(ev("1 + 2*3"), 7.0);
    EXPECT_DOUBLE_EQ(ev("2^3^2"), 512.0);     // right associative
    EXPECT_DOUBLE_EQ(ev("-2^2"), -4.0);       // ^ binds tighter than unary minus
    EXPECT_DOUBLE_EQ(ev("8/4/2"), 1.0);       // left associative
    EXPECT_DOUBLE_EQ(ev("10 - 4 - 3"), 3.0);  // left associative
    EXPECT_DOUBLE_EQ(ev("x1^-1"), 0.5);
    EXPECT_DOUBLE_EQ(ev("2.5e1 + 1E-1"), 25.1);
    EXPECT_DOUBLE_EQ(ev("x2^(1+1)"), 9.0);
}

TEST(Eval, DomainErrors) {
    const std::vector<double> x{-1.0, 0.0};
    for (const char* src : {"log(x1)", "sqrt(x1)", "1/x2", "x1^0.5", "log(x2)"}) {
        EXPECT_THROW(mlg::evalExpr(mlg::parse(src, 2), x), mlg::DomainError) << src;
    }
    EXPECT_THROW(mlg::evalExpr(mlg::parse("exp(1000)", 2), x), mlg::DomainError);
    EXPECT_DOUBLE_EQ(mlg::evalExpr(mlg::parse("x1^3", 2), x), -1.0);  // integer power of a negative base
}

TEST(Eval, AgreesWithRecursiveOracle) {
    oracle::Rng rng(11);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + t % 4;
        const mlg::Expr e = mlg::parse(oracle::randomExpressionText(rng, n, 1 + t % 5), n);
        const auto x = oracle::randomPoint(rng, n);
        const double want = oracle::recursiveEval(e, x);
        const double got = mlg::evalExpr(e, x);
        ASSERT_LE(std::abs(got - want), 1e-14 * std::max(1.0, std::abs(want))) << e.toString();
        ++checked;
    }
    EXPECT_EQ(checked, 1000);
}

TEST(Print, RoundTripIsStructural) {
    oracle::Rng rng(12);
    for (int t = 0; t < 300; ++t) {
        const int n = 1 + t % 3;
        const mlg::Expr e = mlg::parse(oracle::randomExpressionText(rng, n, 4), n);
        const mlg::Expr back = mlg::parse(e.toString(), n);
        ASSERT_TRUE(mlg::structurallyEqual(e, back)) << e.toString();
    }
    const mlg::Expr e = mlg::parse(kHarmonicCubic, 2);
    EXPECT_TRUE(mlg::structurallyEqual(e, mlg::parse(e.toString(), 2)));
}

TEST(Print, NegativeConstantsSurvive) {
    const mlg::Expr e = mlg::parse("x1 * -2 - (-3)^2", 1);
    const mlg::Expr back = mlg::parse(e.toString(), 1);
    EXPECT_TRUE(mlg::structurallyEqual(e, back));
    EXPECT_DOUBLE_EQ(mlg::evalExpr(back, std::vector<double>{1.0}), -11.0);
}

TEST(Expr, ConstantDetection) {
    EXPECT_TRUE(mlg::parse("2*sin(1)", 3).isConstant());
    EXPECT_FALSE(mlg::parse("0*x1", 3).isConstant());
    EXPECT_TRUE(mlg::Expr::constant(5.0, 2).isConstant());
}
