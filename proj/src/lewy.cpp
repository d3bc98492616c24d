#include "mlg/lewy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mlg/error.hpp"

namespace mlg {

namespace {
const double kSqrt3 = std::sqrt(3.0);
constexpr double kBoundSlack = 1e-10;
}  // namespace

std::string toString(LewyMode m) { return m == LewyMode::Complex ? "complex" : "quaternionic"; }

LewyMode lewyModeFromString(const std::string& s) {
    if (s == "complex") return LewyMode::Complex;
    if (s == "quaternionic") return LewyMode::Quaternionic;
    throw ConfigError("unknown Lewy mode '" + s + "' (expected complex or quaternionic)");
}

double LewyParams::lowerEndpoint() const {
    if (mode == LewyMode::Complex) return -(1.0 + h * C) / (h - C);
    return -(1.0 / kSqrt3 + h * C) / (h - kSqrt3 * C);
}

double LewyParams::upperEndpoint() const { return mode == LewyMode::Complex ? h : h / kSqrt3; }

double LewyParams::eigenBound() const { return upperEndpoint(); }

double LewyParams::jacobianLowerBound() const {
    const double shift = mode == LewyMode::Complex ? C : kSqrt3 * C;
    return (h - shift) * (h - shift) / (1.0 + h * h);
}

LewyParams lewyParams(LewyMode mode, double C) {
    if (C < 0.0 || !std::isfinite(C)) throw NegativeC("Lewy lower-bound constant must be finite and >= 0");
    LewyParams p;
    p.mode = mode;
    p.C = C;
    if (mode == LewyMode::Complex) {
        p.h = C + std::sqrt(C * C + 1.0);
        p.b = 1.0 / std::sqrt(1.0 + p.h * p.h);
    } else {
        p.h = kSqrt3 * C + std::sqrt(3.0 * C * C + 1.0);
        p.b = 1.0 / (kSqrt3 * std::sqrt(1.0 + p.h * p.h));
    }
    p.a = p.h / std::sqrt(1.0 + p.h * p.h);
    return p;
}

double mobius(double lambda, const LewyParams& p) {
    if (p.mode == LewyMode::Complex) return (p.h * lambda - 1.0) / (p.h + lambda);
    return (p.h * lambda - 1.0 / kSqrt3) / (p.h + kSqrt3 * lambda);
}

namespace {

void requireBound(const Eigen::MatrixXd& hess, std::span<const double> x, const LewyParams& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hess, Eigen::EigenvaluesOnly);
    const double m = eig.eigenvalues()(0);
    if (m < -p.C - kBoundSlack) {
        std::ostringstream msg;
        msg << "Hess u has eigenvalue " << m << " below -C = " << -p.C << " at (";
        for (std::size_t i = 0; i < x.size(); ++i) msg << (i ? "," : "") << x[i];
        msg << ")";
        throw BoundViolated(msg.str());
    }
}

Eigen::Map<const Eigen::VectorXd> asVector(std::span<const double> x) {
    return {x.data(), static_cast<Eigen::Index>(x.size())};
}

// Rotated coordinates (xbar, ybar) of the graph point over x; no bound check.
std::pair<Eigen::VectorXd, Eigen::VectorXd> rotatePoint(const Eigen::VectorXd& x, const Eigen::VectorXd& grad,
                                                        const LewyParams& p) {
    const double s = 1.0 / std::sqrt(1.0 + p.h * p.h);
    if (p.mode == LewyMode::Complex) return {s * (p.h * x + grad), s * (-x + p.h * grad)};
    return {s * (p.h * x + kSqrt3 * grad), s * (-x / kSqrt3 + p.h * grad)};
}

}  // namespace

TransformedPoint transformComplex(const Jet3& u, std::span<const double> x, const LewyParams& p) {
    if (p.mode != LewyMode::Complex) throw ShapeMismatch("transformComplex needs complex-mode parameters");
    requireBound(u.hess, x, p);
    const auto n = u.hess.rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    TransformedPoint t;
    std::tie(t.xbar, t.ybar) = rotatePoint(asVector(x), u.grad, p);
    t.hessUbar = (p.h * id + u.hess).partialPivLu().solve(-id + p.h * u.hess);
    t.jacobianLowerBound = p.jacobianLowerBound();
    return t;
}

TransformedPoint transformQuaternionic(const Jet3& u, std::span<const double> x, const LewyParams& p) {
    if (p.mode != LewyMode::Quaternionic) throw ShapeMismatch("transformQuaternionic needs quaternionic parameters");
    requireBound(u.hess, x, p);
    const auto n = u.hess.rows();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    TransformedPoint t;
    std::tie(t.xbar, t.ybar) = rotatePoint(asVector(x), u.grad, p);
    t.hessUbar = (p.h * id + kSqrt3 * u.hess).partialPivLu().solve(-id / kSqrt3 + p.h * u.hess);
    t.jacobianLowerBound = p.jacobianLowerBound();
    return t;
}

TransformedPoint lewyTransform(const Jet3& u, std::span<const double> x, const LewyParams& p) {
    return p.mode == LewyMode::Complex ? transformComplex(u, x, p) : transformQuaternionic(u, x, p);
}

Eigen::VectorXd transformedEigenvalues(const Eigen::MatrixXd& hessU, const LewyParams& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hessU, Eigen::EigenvaluesOnly);
    Eigen::VectorXd out = eig.eigenvalues().unaryExpr([&](double l) { return mobius(l, p); });
    std::sort(out.data(), out.data() + out.size());
    return out;
}

Eigen::Matrix4d quaternionRotationBlock(double a, double b) {
    Eigen::Matrix4d d;
    d << a, b, b, b,
        -b, a, b, -b,
        -b, -b, a, b,
        -b, b, -b, a;
    return d;
}

Eigen::MatrixXd ambientRotation(const LewyParams& p, int n) {
    Eigen::MatrixXd block;
    if (p.mode == LewyMode::Complex) {
        block.resize(2, 2);
        block << p.a, p.b, -p.b, p.a;
    } else {
        block = quaternionRotationBlock(p.a, p.b);
    }
    const auto m = block.rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m * n, m * n);
    for (Eigen::Index r = 0; r < m; ++r)
        for (Eigen::Index c = 0; c < m; ++c)
            out.block(r * n, c * n, n, n) = block(r, c) * Eigen::MatrixXd::Identity(n, n);
    return out;
}

RoundTrip verifyLewyRoundTrip(const Expr& u, const LewyParams& p, std::span<const Point> samples, double eta) {
    RoundTrip rt;
    const int n = u.dim();
    for (const Point& x : samples) {
        const TransformedPoint t = lewyTransform(jetEval(u, x), x, p);
        rt.asymmetry = std::max(rt.asymmetry, (t.hessUbar - t.hessUbar.transpose()).cwiseAbs().maxCoeff());

        Eigen::MatrixXd dxbar(n, n), dybar(n, n);
        for (int a = 0; a < n; ++a) {
            Point plus = x, minus = x;
            plus[static_cast<std::size_t>(a)] += eta;
            minus[static_cast<std::size_t>(a)] -= eta;
            const auto [xp, yp] = rotatePoint(asVector(plus), jetEval(u, plus).grad, p);
            const auto [xm, ym] = rotatePoint(asVector(minus), jetEval(u, minus).grad, p);
            dxbar.col(a) = (xp - xm) / (2.0 * eta);
            dybar.col(a) = (yp - ym) / (2.0 * eta);
        }
        // d ybar / d xbar = (d ybar / dx) (d xbar / dx)^{-1}
        const Eigen::MatrixXd numeric = dxbar.transpose().partialPivLu().solve(dybar.transpose()).transpose();
        rt.discrepancy = std::max(rt.discrepancy, (numeric - t.hessUbar).cwiseAbs().maxCoeff());
    }
    return rt;
}

}  // namespace mlg
