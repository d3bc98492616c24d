#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mlg/expr.hpp"
#include "mlg/jet.hpp"
#include "mlg/sampling.hpp"

namespace mlg {

enum class LewyMode { Complex, Quaternionic };

std::string toString(LewyMode m);
LewyMode lewyModeFromString(const std::string& s);

/// Rotation parameters for a Lewy transformation with lower bound Hess u >= -C I.
///
/// complex:      a = h / sqrt(1+h^2), b = 1 / sqrt(1+h^2),        h = C + sqrt(C^2 + 1)
/// quaternionic: a = h / sqrt(1+h^2), b = 1 / (sqrt(3) sqrt(1+h^2)), h = sqrt(3) C + sqrt(3 C^2 + 1)
struct LewyParams {
    LewyMode mode = LewyMode::Complex;
    double C = 0.0;
    double h = 1.0;
    double a = 0.0;
    double b = 0.0;

    /// Lower and upper ends of the transformed Hessian interval for this h.
    double lowerEndpoint() const;
    double upperEndpoint() const;
    /// The symmetric bound both endpoints reach at the closed-form h.
    double eigenBound() const;
    /// (h - C)^2 / (1+h^2), resp. (h - sqrt(3) C)^2 / (1+h^2).
    double jacobianLowerBound() const;
};

/// Throws NegativeC for C < 0.
LewyParams lewyParams(LewyMode mode, double C);

/// Transformed eigenvalue of a Hessian eigenvalue lambda:
/// (h lambda - 1) / (h + lambda), resp. (h lambda - 1/sqrt(3)) / (h + sqrt(3) lambda).
double mobius(double lambda, const LewyParams& p);

struct TransformedPoint {
    Eigen::VectorXd xbar;
    Eigen::VectorXd ybar;      // common value of the rotated gradient blocks
    Eigen::MatrixXd hessUbar;  // matrix-form route
    double jacobianLowerBound = 0.0;
};

/// Throws BoundViolated when min eig Hess u < -C - 1e-10.
TransformedPoint transformComplex(const Jet3& u, std::span<const double> x, const LewyParams& p);
TransformedPoint transformQuaternionic(const Jet3& u, std::span<const double> x, const LewyParams& p);
TransformedPoint lewyTransform(const Jet3& u, std::span<const double> x, const LewyParams& p);

/// Eigenvalues of hessUbar computed through the eigendecomposition of Hess u.
Eigen::VectorXd transformedEigenvalues(const Eigen::MatrixXd& hessU, const LewyParams& p);

/// The 4x4 block with rows (a,b,b,b), (-b,a,b,-b), (-b,-b,a,b), (-b,b,-b,a).
Eigen::Matrix4d quaternionRotationBlock(double a, double b);

/// Ambient rotation on the block layout [x | y] (complex, 2n) or
/// [x | y | z | w] (quaternionic, 4n): kron(block, I_n).
Eigen::MatrixXd ambientRotation(const LewyParams& p, int n);

struct RoundTrip {
    double asymmetry = 0.0;    // max |hessUbar - hessUbar^T|
    double discrepancy = 0.0;  // max |hessUbar - d ybar / d xbar (finite differences)|
};

/// Checks that the transformed graph is again a gradient graph over xbar.
RoundTrip verifyLewyRoundTrip(const Expr& u, const LewyParams& p, std::span<const Point> samples, double eta);

}  // namespace mlg
