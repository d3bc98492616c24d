#include "mlg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mlg/error.hpp"

namespace mlg {

Spectrum Spectrum::fromLambdas(const Eigen::MatrixXd& lambdas) {
    Spectrum s;
    const auto n = lambdas.rows();
    s.basis = Eigen::MatrixXd::Identity(n, n);
    s.lambdas = lambdas;
    s.normalizers = (1.0 + lambdas.rowwise().squaredNorm().array()).sqrt().matrix();
    return s;
}

namespace {

void refine(const Hessians& h, const std::array<double, 3>& gaps, const Eigen::MatrixXd& q, int level,
            std::vector<Eigen::VectorXd>& out) {
    if (level == 3 || q.cols() == 1) {
        for (int c = 0; c < q.cols(); ++c) out.push_back(q.col(c));
        return;
    }
    Eigen::MatrixXd m = q.transpose() * h[static_cast<std::size_t>(level)] * q;
    m = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    const Eigen::VectorXd& vals = eig.eigenvalues();  // ascending

    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= vals.size(); ++i) {
        if (i == vals.size() || vals(i) - vals(i - 1) > gaps[static_cast<std::size_t>(level)]) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }
    if (clusters.size() == 1) {
        refine(h, gaps, q, level + 1, out);
        return;
    }
    for (const auto& [b, e] : clusters) {
        Eigen::MatrixXd sub = q * eig.eigenvectors().middleCols(b, e - b);
        refine(h, gaps, sub, level + 1, out);
    }
}

}  // namespace

Spectrum jointDiagonalize(const Hessians& h, double tol) {
    const auto n = h[0].rows();
    const double residual = commutatorResidual(h);
    if (residual > 10.0 * tol) {
        std::ostringstream msg;
        msg << "Hessians do not commute (max commutator " << residual << " > " << 10.0 * tol << ")";
        throw NotCommuting(msg.str());
    }

    Hessians sym;
    std::array<double, 3> gaps{};
    for (std::size_t s = 0; s < 3; ++s) {
        sym[s] = 0.5 * (h[s] + h[s].transpose());
        double norm = n > 0 ? sym[s].cwiseAbs().rowwise().sum().maxCoeff() : 0.0;
        gaps[s] = 1e-8 * (1.0 + norm);
    }

    std::vector<Eigen::VectorXd> cols;
    refine(sym, gaps, Eigen::MatrixXd::Identity(n, n), 0, cols);

    struct Row {
        Eigen::VectorXd a;
        std::array<double, 3> l;
    };
    std::vector<Row> rows;
    rows.reserve(cols.size());
    for (Eigen::VectorXd a : cols) {
        Eigen::Index big = 0;
        a.cwiseAbs().maxCoeff(&big);
        if (a(big) < 0) a = -a;
        Row r{a, {}};
        for (std::size_t s = 0; s < 3; ++s) r.l[s] = a.dot(sym[s] * a);
        rows.push_back(std::move(r));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) { return x.l < y.l; });

    Spectrum out;
    out.basis.resize(n, n);
    out.lambdas.resize(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.basis.col(i) = rows[static_cast<std::size_t>(i)].a;
        for (int s = 0; s < 3; ++s) out.lambdas(i, s) = rows[static_cast<std::size_t>(i)].l[static_cast<std::size_t>(s)];
    }
    out.normalizers = (1.0 + out.lambdas.rowwise().squaredNorm().array()).sqrt().matrix();
    out.commutatorResidual = residual;
    out.approximate = residual > tol;
    return out;
}

Eigen::MatrixXd QuaternionFrame::all() const {
    Eigen::MatrixXd e(tangent.rows(), tangent.rows());
    e << tangent, normal;
    return e;
}

QuaternionFrame buildFrame(const Spectrum& spec) {
    const int n = spec.dim();
    QuaternionFrame f;
    f.tangent = Eigen::MatrixXd::Zero(4 * n, n);
    f.normal = Eigen::MatrixXd::Zero(4 * n, 3 * n);
    for (int i = 0; i < n; ++i) {
        const double l1 = spec.lambdas(i, 0), l2 = spec.lambdas(i, 1), l3 = spec.lambdas(i, 2);
        const double inv = 1.0 / spec.normalizers(i);
        const Eigen::VectorXd a = spec.basis.col(i);
        // Block coefficients of a_i in slots 0..3 for e_i, e_{n+i}, e_{2n+i}, e_{3n+i}.
        const std::array<std::array<double, 4>, 4> rows = {{
            {1.0, l1, l2, l3},
            {-l1, 1.0, -l3, l2},
            {-l2, l3, 1.0, -l1},
            {-l3, -l2, l1, 1.0},
        }};
        for (int r = 0; r < 4; ++r) {
            Eigen::VectorXd v(4 * n);
            for (int b = 0; b < 4; ++b) v.segment(b * n, n) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(b)] * inv * a;
            if (r == 0) {
                f.tangent.col(i) = v;
            } else {
                f.normal.col((r - 1) * n + i) = v;
            }
        }
    }
    return f;
}

double starOmegaSpectral(const Spectrum& spec) { return 1.0 / spec.normalizers.prod(); }

Eigen::Matrix3d sMatrix(const Eigen::Vector3d& li, const Eigen::Vector3d& lj) {
    return 0.5 * (li * lj.transpose() + lj * li.transpose());
}

double FrameDefects::worst() const {
    return std::max({orthonormality, complexStructure, tangency});
}

FrameDefects frameDefects(const QuaternionFrame& frame, const Spectrum& spec, const Hessians& h,
                          const EmbeddingJet& ej, const SymplecticStructures& sym) {
    FrameDefects d;
    const int n = frame.dim();
    const Eigen::MatrixXd e = frame.all();
    d.orthonormality = (e.transpose() * e - Eigen::MatrixXd::Identity(4 * n, 4 * n)).cwiseAbs().maxCoeff();

    for (int s = 0; s < 3; ++s) {
        Eigen::MatrixXd rotated = sym.complex[static_cast<std::size_t>(s)] * frame.tangent;
        Eigen::MatrixXd target = frame.normal.middleCols(s * n, n);
        d.complexStructure = std::max(d.complexStructure, (rotated - target).cwiseAbs().maxCoeff());
    }

    // Residual of projecting each e_i onto span(dF/dx_a).
    Eigen::MatrixXd coeff = ej.tangents.colPivHouseholderQr().solve(frame.tangent);
    d.tangency = (ej.tangents * coeff - frame.tangent).cwiseAbs().maxCoeff();

    for (std::size_t s = 0; s < 3; ++s) {
        Eigen::MatrixXd rebuilt = spec.basis * spec.lambdas.col(static_cast<Eigen::Index>(s)).asDiagonal() *
                                  spec.basis.transpose();
        d.reconstruction = std::max(d.reconstruction, (h[s] - rebuilt).cwiseAbs().maxCoeff());
    }
    return d;
}

}  // namespace mlg
