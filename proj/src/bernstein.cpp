#include "mlg/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mlg/error.hpp"

namespace mlg {

std::string toString(TheoremId id) {
    switch (id) {
        case TheoremId::Thm32: return "thm-3.2";
        case TheoremId::CorSij: return "cor-Sij";
        case TheoremId::CorLambdaNorm: return "cor-LambdaNorm";
        case TheoremId::ThmCnSqrt6: return "thm-Cn-sqrt6";
        case TheoremId::ThmHnSqrt2: return "thm-Hn-sqrt2";
        case TheoremId::CorConvex: return "cor-convex";
    }
    return "";
}

std::string conclusion(TheoremId id) {
    switch (id) {
        case TheoremId::Thm32:
        case TheoremId::CorSij:
        case TheoremId::CorLambdaNorm:
            return "a minimal Lagrangian graph (x, grad u1, grad u2, grad u3) satisfying this on all of R^n is an "
                   "affine plane";
        case TheoremId::ThmCnSqrt6:
            return "a minimal Lagrangian graph (x, grad u) in C^n with Hess u >= -C I, C < sqrt(6)/12, is an affine "
                   "plane";
        case TheoremId::ThmHnSqrt2:
            return "a minimal Lagrangian graph (x, grad u, grad u, grad u) with Hess u >= -C I, C < sqrt(2)/12, is "
                   "an affine plane";
        case TheoremId::CorConvex:
            return "a minimal Lagrangian graph (x, grad u, grad u, grad u) with convex u is an affine plane";
    }
    return "";
}

double minEigenvalue3(const Eigen::Matrix3d& a) {
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (p1 == 0.0) return a.diagonal().minCoeff();

    const double q = a.trace() / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    const Eigen::Matrix3d b = (a - q * Eigen::Matrix3d::Identity()) / p;
    const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    double mu = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);

    // Near a repeated root the trigonometric form loses half the digits.
    // Two polishes, keeping whichever yields the better eigenpair: a simple
    // smallest root has a null vector given by a cross product of two rows of
    // (A - mu I); a double smallest root leaves (A - mu I) of rank one, whose
    // row space is the top eigenvector, and mu = (trace - top) / 2.
    const Eigen::Matrix3d shifted = a - mu * Eigen::Matrix3d::Identity();
    double bestResidual = std::numeric_limits<double>::infinity();
    double polished = mu;

    Eigen::Vector3d nullVec = Eigen::Vector3d::Zero();
    Eigen::Vector3d topRow = Eigen::Vector3d::Zero();
    for (int i = 0; i < 3; ++i) {
        if (shifted.row(i).squaredNorm() > topRow.squaredNorm()) topRow = shifted.row(i).transpose();
        for (int j = i + 1; j < 3; ++j) {
            const Eigen::Vector3d c = shifted.row(i).transpose().cross(shifted.row(j).transpose());
            if (c.squaredNorm() > nullVec.squaredNorm()) nullVec = c;
        }
    }
    if (nullVec.squaredNorm() > 0.0) {
        nullVec.normalize();
        const double m = nullVec.dot(a * nullVec);
        bestResidual = (a * nullVec - m * nullVec).norm();
        polished = m;
    }
    if (topRow.squaredNorm() > 0.0) {
        topRow.normalize();
        const double top = topRow.dot(a * topRow);
        const double m = 0.5 * (a.trace() - top);
        // Valid only if A = m I + (top - m) t t^T, i.e. m really is double.
        const Eigen::Matrix3d rest = a - m * Eigen::Matrix3d::Identity() - (top - m) * topRow * topRow.transpose();
        if (rest.norm() < bestResidual) polished = m;
    }
    return polished;
}

double tripleSumMinEigenvalue(const Spectrum& spec) {
    const int n = spec.dim();
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Eigen::Matrix3d m = sMatrix(spec.bigLambda(i), spec.bigLambda(j)) +
                                          sMatrix(spec.bigLambda(j), spec.bigLambda(k)) +
                                          sMatrix(spec.bigLambda(k), spec.bigLambda(i));
                worst = std::min(worst, minEigenvalue3(m));
            }
    return worst;
}

double pairMinEigenvalue(const Spectrum& spec) {
    const int n = spec.dim();
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) worst = std::min(worst, minEigenvalue3(sMatrix(spec.bigLambda(i), spec.bigLambda(j))));
    return worst;
}

double maxLambdaNormSquared(const Spectrum& spec) { return spec.lambdas.rowwise().squaredNorm().maxCoeff(); }

double maxAbsLambda(const Spectrum& spec) { return spec.lambdas.cwiseAbs().maxCoeff(); }

namespace {

template <class Score>
HypothesisEntry sweep(TheoremId id, std::span<const SampledSpectrum> spectra, Score score) {
    HypothesisEntry e;
    e.id = id;
    e.sampledPoints = spectra.size();
    e.margin = std::numeric_limits<double>::infinity();
    for (const auto& s : spectra) {
        const double m = score(s.spectrum);
        if (m < e.margin) {
            e.margin = m;
            e.witness = s.x;
        }
        e.K = std::max(e.K, maxAbsLambda(s.spectrum));
    }
    e.holds = e.margin > 0.0 && std::isfinite(e.K);
    return e;
}

}  // namespace

HypothesisEntry checkTheorem32(std::span<const SampledSpectrum> spectra) {
    return sweep(TheoremId::Thm32, spectra, [](const Spectrum& s) { return 3.0 + tripleSumMinEigenvalue(s); });
}

HypothesisEntry checkCorollarySij(std::span<const SampledSpectrum> spectra) {
    return sweep(TheoremId::CorSij, spectra, [](const Spectrum& s) { return 1.5 + pairMinEigenvalue(s); });
}

HypothesisEntry checkCorollaryLambdaNorm(std::span<const SampledSpectrum> spectra) {
    return sweep(TheoremId::CorLambdaNorm, spectra, [](const Spectrum& s) { return 1.5 - maxLambdaNormSquared(s); });
}

std::pair<double, Point> measuredLowerBound(std::span<const SampledHessian> samples) {
    double minEig = std::numeric_limits<double>::infinity();
    Point witness;
    for (const auto& s : samples) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.hess, Eigen::EigenvaluesOnly);
        const double m = eig.eigenvalues()(0);
        if (m < minEig) {
            minEig = m;
            witness = s.x;
        }
    }
    return {std::max(0.0, -minEig), witness};
}

std::vector<HypothesisEntry> checkHessianLowerBound(const PotentialTriple& pt,
                                                    std::span<const SampledHessian> samples) {
    const bool sl = pt.isSpecialLagrangian();
    const bool equal = pt.isTripleEqual();
    if (!sl && !equal) {
        throw ShapeMismatch("Hessian lower-bound theorems need (x, grad u, 0, 0) or (x, grad u, grad u, grad u)");
    }

    double minEig = std::numeric_limits<double>::infinity();
    double k = 0.0;
    Point witness;
    for (const auto& s : samples) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.hess, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues()(0) < minEig) {
            minEig = eig.eigenvalues()(0);
            witness = s.x;
        }
        k = std::max(k, eig.eigenvalues().cwiseAbs().maxCoeff());
    }
    const double cStar = std::max(0.0, -minEig);

    auto entry = [&](TheoremId id, double margin, bool holds) {
        HypothesisEntry e;
        e.id = id;
        e.margin = margin;
        e.holds = holds;
        e.witness = witness;
        e.K = k;
        e.sampledPoints = samples.size();
        return e;
    };

    std::vector<HypothesisEntry> out;
    if (sl) {
        const double bound = std::sqrt(6.0) / 12.0;
        out.push_back(entry(TheoremId::ThmCnSqrt6, bound - cStar, cStar < bound));
    }
    if (equal) {
        const double bound = std::sqrt(2.0) / 12.0;
        out.push_back(entry(TheoremId::ThmHnSqrt2, bound - cStar, cStar < bound));
        // Convexity is a non-strict bound: the margin is the smallest Hessian eigenvalue.
        out.push_back(entry(TheoremId::CorConvex, minEig, minEig >= 0.0));
    }
    return out;
}

double fQuadraticForm(const Eigen::Vector3d& x, const Eigen::Vector3d& li, const Eigen::Vector3d& lj,
                      const Eigen::Vector3d& lk) {
    const Eigen::Matrix3d m = 3.0 * Eigen::Matrix3d::Identity() + sMatrix(li, lj) + sMatrix(lj, lk) + sMatrix(lk, li);
    return x.dot(m * x);
}

}  // namespace mlg
