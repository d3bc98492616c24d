#include "mlg/curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "mlg/error.hpp"

namespace mlg {

SecondFundamentalForm::SecondFundamentalForm(int n)
    : n_(n), h_(3 * static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

Eigen::Vector3d SecondFundamentalForm::vec(int i, int j, int k) const {
    return {(*this)(0, i, j, k), (*this)(1, i, j, k), (*this)(2, i, j, k)};
}

double SecondFundamentalForm::normSquared() const {
    double sum = 0.0;
    for (double v : h_) sum += v * v;
    return sum;
}

double SecondFundamentalForm::asymmetry() const {
    double worst = 0.0;
    for (int s = 0; s < 3; ++s)
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) {
                    std::array<int, 3> p = {i, j, k};
                    const double ref = (*this)(s, i, j, k);
                    std::sort(p.begin(), p.end());
                    do {
                        worst = std::max(worst, std::abs(ref - (*this)(s, p[0], p[1], p[2])));
                    } while (std::next_permutation(p.begin(), p.end()));
                }
    return worst;
}

SecondFundamentalForm secondFundamentalForm(const EmbeddingJet& ej, const QuaternionFrame& frame,
                                            const Eigen::MatrixXd& metric) {
    const int n = frame.dim();
    const Eigen::MatrixXd p = metric.ldlt().solve(ej.tangents.transpose() * frame.tangent);

    SecondFundamentalForm sff(n);
    for (int s = 0; s < 3; ++s) {
        for (int k = 0; k < n; ++k) {
            const Eigen::VectorXd nu = frame.normalVector(s, k);
            Eigen::MatrixXd proj(n, n);  // <d2F/dx_a dx_b, nu>
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) proj(a, b) = ej.second(a, b).dot(nu);
            const Eigen::MatrixXd inFrame = p.transpose() * proj * p;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) sff(s, i, j, k) = inFrame(i, j);
        }
    }
    return sff;
}

double meanCurvatureNorm(const SecondFundamentalForm& sff) {
    const int n = sff.dim();
    double sum = 0.0;
    for (int s = 0; s < 3; ++s)
        for (int k = 0; k < n; ++k) {
            double trace = 0.0;
            for (int i = 0; i < n; ++i) trace += sff(s, i, i, k);
            sum += trace * trace;
        }
    return std::sqrt(sum);
}

PointGeometry analyzePoint(const PotentialTriple& pt, std::span<const double> x, double lagrangianTol) {
    PointGeometry g;
    g.x.assign(x.begin(), x.end());
    g.jets = potentialJets(pt, x);
    g.hess = hessiansOf(g.jets);
    const double residual = commutatorResidual(g.hess);
    if (residual > lagrangianTol) {
        std::ostringstream msg;
        msg << "graph is not Lagrangian at the point (commutator " << residual << " > " << lagrangianTol << ")";
        throw NotCommuting(msg.str());
    }
    g.embedding = embed(x, g.jets);
    g.metric = inducedMetric(g.embedding);
    g.spectrum = jointDiagonalize(g.hess, lagrangianTol);
    g.frame = buildFrame(g.spectrum);
    g.starOmega = starOmegaSpectral(g.spectrum);
    g.sff = secondFundamentalForm(g.embedding, g.frame, g.metric);
    return g;
}

namespace {

constexpr double kStencilOffsets[] = {-2.0, -1.0, 1.0, 2.0};

// Five-point central difference of step eta; truncation error O(eta^4).
template <class F>
double centralDifference(double eta, F f) {
    return (f(-2.0 * eta) - 8.0 * f(-eta) + 8.0 * f(eta) - f(2.0 * eta)) / (12.0 * eta);
}

}  // namespace

double starOmegaGradientCheck(const PotentialTriple& pt, std::span<const double> x, double eta,
                              double lagrangianTol) {
    const PointGeometry g = analyzePoint(pt, x, lagrangianTol);
    const int n = pt.n;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        // e_k has parameter coordinates a_k / A_k.
        const Eigen::VectorXd dir = g.spectrum.basis.col(k) / g.spectrum.normalizers(k);
        const double numeric = centralDifference(eta, [&](double t) {
            Point p(x.begin(), x.end());
            for (int a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] += t * dir(a);
            return starOmegaDet(pt, p);
        });

        double trace = 0.0;
        for (int s = 0; s < 3; ++s)
            for (int i = 0; i < n; ++i) trace += g.spectrum.lambdas(i, s) * g.sff(s, i, i, k);
        const double formula = -g.starOmega * trace;
        worst = std::max(worst, std::abs(numeric - formula));
    }
    return worst;
}

double bochnerRhsQuadratic(const SecondFundamentalForm& sff, const Spectrum& spec) {
    const int n = sff.dim();
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Eigen::Vector3d h = sff.vec(i, j, k);
                sum += h.squaredNorm() + h.dot(spec.bigLambda(i)) * spec.bigLambda(j).dot(h);
            }
    return sum;
}

double bochnerRhsSymmetrized(const SecondFundamentalForm& sff, const Spectrum& spec) {
    const int n = sff.dim();
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Eigen::Vector3d h = sff.vec(i, j, k);
                const double pi = h.dot(spec.bigLambda(i));
                const double pj = h.dot(spec.bigLambda(j));
                const double pk = h.dot(spec.bigLambda(k));
                sum += 3.0 * h.squaredNorm() + pi * pj + pj * pk + pk * pi;
            }
    return sum / 3.0;
}

namespace {

struct VolumeField {
    Eigen::VectorXd flux;  // sqrt(det g) g^{-1} grad f
    double sqrtDet = 1.0;
};

VolumeField volumeField(const PotentialTriple& pt, std::span<const double> x) {
    const auto jets = potentialJets(pt, x);
    const int n = pt.n;
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
    for (const auto& j : jets) g += j.hess * j.hess;
    const Eigen::LLT<Eigen::MatrixXd> llt(g);
    const Eigen::MatrixXd ginv = llt.solve(Eigen::MatrixXd::Identity(n, n));

    Eigen::VectorXd gradF(n);
    for (int b = 0; b < n; ++b) {
        Eigen::MatrixXd dg = Eigen::MatrixXd::Zero(n, n);
        for (const auto& j : jets) {
            const Eigen::MatrixXd t = j.thirdSlice(b);
            dg += t * j.hess + j.hess * t;
        }
        gradF(b) = 0.5 * (ginv * dg).trace();
    }
    VolumeField v;
    v.sqrtDet = llt.matrixL().determinant();
    v.flux = v.sqrtDet * (ginv * gradF);
    return v;
}

}  // namespace

double logVolumeLaplacian(const PotentialTriple& pt, std::span<const double> x, double eta) {
    const int n = pt.n;
    const double sqrtDet = volumeField(pt, x).sqrtDet;
    double divergence = 0.0;
    for (int a = 0; a < n; ++a) {
        divergence += centralDifference(eta, [&](double t) {
            Point p(x.begin(), x.end());
            p[static_cast<std::size_t>(a)] += t;
            return volumeField(pt, p).flux(a);
        });
    }
    return divergence / sqrtDet;
}

BochnerReport bochnerVerify(const PotentialTriple& pt, std::span<const double> x, double eta,
                            const BochnerOptions& opt) {
    const PointGeometry g = analyzePoint(pt, x, opt.lagrangianTol);
    BochnerReport r;
    r.fdStep = eta;
    r.meanCurvatureNorm = meanCurvatureNorm(g.sff);

    auto requireMinimal = [&](std::span<const double> at, double hnorm) {
        if (hnorm > opt.minimalityTol) {
            std::ostringstream msg;
            msg << "mean curvature " << hnorm << " exceeds " << opt.minimalityTol << " at (";
            for (std::size_t i = 0; i < at.size(); ++i) msg << (i ? "," : "") << at[i];
            msg << ")";
            throw NotMinimal(msg.str());
        }
    };
    requireMinimal(x, r.meanCurvatureNorm);
    for (int a = 0; a < pt.n; ++a) {
        for (double t : kStencilOffsets) {
            Point p(x.begin(), x.end());
            p[static_cast<std::size_t>(a)] += t * eta;
            requireMinimal(p, meanCurvatureNorm(analyzePoint(pt, p, opt.lagrangianTol).sff));
        }
    }

    r.lhs = logVolumeLaplacian(pt, x, eta);
    r.rhsQuadratic = bochnerRhsQuadratic(g.sff, g.spectrum);
    r.rhsSymmetrized = bochnerRhsSymmetrized(g.sff, g.spectrum);
    return r;
}

}  // namespace mlg
