#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mlg/lagrangian.hpp"
#include "mlg/sampling.hpp"
#include "mlg/spectral.hpp"

namespace mlg {

enum class TheoremId { Thm32, CorSij, CorLambdaNorm, ThmCnSqrt6, ThmHnSqrt2, CorConvex };

/// Stable identifiers: thm-3.2, cor-Sij, cor-LambdaNorm, thm-Cn-sqrt6, thm-Hn-sqrt2, cor-convex.
std::string toString(TheoremId id);
/// The rigidity conclusion the theorem draws when its hypothesis holds on all of R^n.
std::string conclusion(TheoremId id);

/// Verdict of one theorem's hypothesis over a finite sample. Margins only
/// ever shrink as samples are added.
struct HypothesisEntry {
    TheoremId id = TheoremId::Thm32;
    bool holds = false;
    double margin = 0.0;
    Point witness;       // sample attaining the worst margin
    double K = 0.0;      // sample sup of |lambda_i^{(s)}|
    std::size_t sampledPoints = 0;
};

struct SampledSpectrum {
    Point x;
    Spectrum spectrum;
};

/// Smallest eigenvalue of a symmetric 3x3 matrix: trigonometric root of the
/// characteristic cubic, polished by a Rayleigh quotient on the null vector
/// of (A - mu I).
double minEigenvalue3(const Eigen::Matrix3d& a);

/// min over (i, j, k) of the smallest eigenvalue of S_ij + S_jk + S_ki for one spectrum.
double tripleSumMinEigenvalue(const Spectrum& spec);
/// min over (i, j) of the smallest eigenvalue of S_ij.
double pairMinEigenvalue(const Spectrum& spec);
/// max over i of |Lambda_i|^2.
double maxLambdaNormSquared(const Spectrum& spec);
double maxAbsLambda(const Spectrum& spec);

/// margin = 3 + min eig(S_ij + S_jk + S_ki); holds iff margin > 0 and K finite.
HypothesisEntry checkTheorem32(std::span<const SampledSpectrum> spectra);
/// margin = 3/2 + min eig(S_ij).
HypothesisEntry checkCorollarySij(std::span<const SampledSpectrum> spectra);
/// margin = 3/2 - sup |Lambda_i|^2.
HypothesisEntry checkCorollaryLambdaNorm(std::span<const SampledSpectrum> spectra);

struct SampledHessian {
    Point x;
    Eigen::MatrixXd hess;  // Hess u1
};

/// Measured C* = max(0, -min eig Hess u) over the samples, with its witness.
std::pair<double, Point> measuredLowerBound(std::span<const SampledHessian> samples);

/// Entries for thm-Cn-sqrt6 (shape (x, grad u, 0, 0)) and thm-Hn-sqrt2 plus
/// cor-convex (shape (x, grad u, grad u, grad u)); a triple having both shapes
/// gets all three. Throws ShapeMismatch for any other triple.
std::vector<HypothesisEntry> checkHessianLowerBound(const PotentialTriple& pt,
                                                    std::span<const SampledHessian> samples);

/// X (3I + S_ij + S_jk + S_ki) X^T.
double fQuadraticForm(const Eigen::Vector3d& x, const Eigen::Vector3d& li, const Eigen::Vector3d& lj,
                      const Eigen::Vector3d& lk);

}  // namespace mlg
