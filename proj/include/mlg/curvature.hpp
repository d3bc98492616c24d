#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mlg/lagrangian.hpp"
#include "mlg/sampling.hpp"
#include "mlg/spectral.hpp"

namespace mlg {

/// h^{(s)}_{ijk} = <D_{e_i} e_j, e_{sn+k}>, s in {1,2,3}, stored with full index ranges.
class SecondFundamentalForm {
public:
    SecondFundamentalForm() = default;
    explicit SecondFundamentalForm(int n);

    int dim() const noexcept { return n_; }
    /// s is zero-based here (0 -> I, 1 -> J, 2 -> K).
    double operator()(int s, int i, int j, int k) const { return h_[index(s, i, j, k)]; }
    double& operator()(int s, int i, int j, int k) { return h_[index(s, i, j, k)]; }
    /// (h^{(1)}, h^{(2)}, h^{(3)}) at (i, j, k).
    Eigen::Vector3d vec(int i, int j, int k) const;

    double normSquared() const;
    /// Max over s and permutations of |h_{ijk} - h_{sigma(ijk)}|.
    double asymmetry() const;

private:
    int n_ = 0;
    std::vector<double> h_;

    std::size_t index(int s, int i, int j, int k) const {
        const auto n = static_cast<std::size_t>(n_);
        return ((static_cast<std::size_t>(s) * n + static_cast<std::size_t>(i)) * n + static_cast<std::size_t>(j)) * n +
               static_cast<std::size_t>(k);
    }
};

/// Projects d2F/dx_a dx_b on the normal frame and moves both parameter
/// indices to the tangent frame: h_{ijk} = P_ai P_bj <d2F_ab, e_{sn+k}>,
/// where e_i = sum_a P_ai dF/dx_a, P = g^{-1} (dF)^T e.
SecondFundamentalForm secondFundamentalForm(const EmbeddingJet& ej, const QuaternionFrame& frame,
                                            const Eigen::MatrixXd& metric);

/// Euclidean norm of the trace sum_i h^{(s)}_{iik} over (s, k).
double meanCurvatureNorm(const SecondFundamentalForm& sff);

/// Everything the toolkit knows about a graph at one parameter point.
struct PointGeometry {
    Point x;
    std::array<Jet3, 3> jets;
    Hessians hess;
    EmbeddingJet embedding;
    Eigen::MatrixXd metric;
    Spectrum spectrum;
    QuaternionFrame frame;
    double starOmega = 1.0;
    SecondFundamentalForm sff;
};

/// Throws NotCommuting when the Hessians fail the Lagrangian tolerance.
PointGeometry analyzePoint(const PotentialTriple& pt, std::span<const double> x, double lagrangianTol = 1e-9);

/// Max over k of |D_{e_k} *Omega - (-*Omega sum_{s,i} lambda_i^{(s)} h^{(s)}_{iik})|,
/// the left side by five-point central differences of step eta along e_k.
double starOmegaGradientCheck(const PotentialTriple& pt, std::span<const double> x, double eta,
                              double lagrangianTol = 1e-9);

struct BochnerReport {
    double lhs = 0.0;             // Laplace-Beltrami of ln(*Omega)^{-1}, outer differences
    double rhsQuadratic = 0.0;    // sum h_ijk (I + Li^T Lj) h_ijk^T
    double rhsSymmetrized = 0.0;  // (1/3) sum h_ijk (3I + Li^T Lj + Lj^T Lk + Lk^T Li) h_ijk^T
    double meanCurvatureNorm = 0.0;
    double fdStep = 0.0;

    double discrepancy() const { return std::abs(lhs - rhsQuadratic); }
};

double bochnerRhsQuadratic(const SecondFundamentalForm& sff, const Spectrum& spec);
double bochnerRhsSymmetrized(const SecondFundamentalForm& sff, const Spectrum& spec);

/// (1/sqrt(det g)) d_a (sqrt(det g) g^{ab} d_b f) for f = 1/2 ln det g. The
/// inner field is exact from third-order jets; only the outer divergence is
/// a five-point central difference of step eta, so the error is O(eta^4).
double logVolumeLaplacian(const PotentialTriple& pt, std::span<const double> x, double eta);

struct BochnerOptions {
    double minimalityTol = 1e-7;
    double lagrangianTol = 1e-9;
};

/// Throws NotMinimal when the mean curvature at x or at any stencil point
/// exceeds minimalityTol.
BochnerReport bochnerVerify(const PotentialTriple& pt, std::span<const double> x, double eta,
                            const BochnerOptions& opt = {});

}  // namespace mlg
