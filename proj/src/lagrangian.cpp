#include "mlg/lagrangian.hpp"

#include <algorithm>
#include <cmath>

#include "mlg/error.hpp"

namespace mlg {

std::string toString(GraphShape s) {
    switch (s) {
        case GraphShape::GeneralTriple: return "general-triple";
        case GraphShape::SpecialLagrangian: return "special-lagrangian";
        case GraphShape::TripleEqual: return "triple-equal";
    }
    return "general-triple";
}

GraphShape shapeFromString(const std::string& s) {
    if (s == "general-triple") return GraphShape::GeneralTriple;
    if (s == "special-lagrangian") return GraphShape::SpecialLagrangian;
    if (s == "triple-equal") return GraphShape::TripleEqual;
    throw ConfigError("unknown shape '" + s + "' (expected general-triple, special-lagrangian or triple-equal)");
}

PotentialTriple PotentialTriple::fromText(int n, const std::string& u1, const std::string& u2,
                                          const std::string& u3) {
    return PotentialTriple{n, {parse(u1, n), parse(u2, n), parse(u3, n)}};
}

bool PotentialTriple::isSpecialLagrangian() const { return u[1].isConstant() && u[2].isConstant(); }

bool PotentialTriple::isTripleEqual() const {
    return structurallyEqual(u[0], u[1]) && structurallyEqual(u[0], u[2]);
}

bool PotentialTriple::hasShape(GraphShape s) const {
    switch (s) {
        case GraphShape::GeneralTriple: return true;
        case GraphShape::SpecialLagrangian: return isSpecialLagrangian();
        case GraphShape::TripleEqual: return isTripleEqual();
    }
    return false;
}

std::array<Jet3, 3> potentialJets(const PotentialTriple& pt, std::span<const double> x) {
    return {jetEval(pt.u[0], x), jetEval(pt.u[1], x), jetEval(pt.u[2], x)};
}

Hessians hessiansOf(const std::array<Jet3, 3>& jets) { return {jets[0].hess, jets[1].hess, jets[2].hess}; }

EmbeddingJet embed(std::span<const double> x, const std::array<Jet3, 3>& jets) {
    const int n = jets[0].dim();
    EmbeddingJet ej;
    ej.position = Eigen::VectorXd::Zero(4 * n);
    ej.tangents = Eigen::MatrixXd::Zero(4 * n, n);
    for (int a = 0; a < n; ++a) {
        ej.position(a) = x[static_cast<std::size_t>(a)];
        ej.tangents(a, a) = 1.0;
    }
    for (int s = 0; s < 3; ++s) {
        ej.position.segment((s + 1) * n, n) = jets[static_cast<std::size_t>(s)].grad;
        ej.tangents.block((s + 1) * n, 0, n, n) = jets[static_cast<std::size_t>(s)].hess;
    }
    ej.secondDerivs.assign(static_cast<std::size_t>(n * n), Eigen::VectorXd::Zero(4 * n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            Eigen::VectorXd& v = ej.secondDerivs[static_cast<std::size_t>(a * n + b)];
            for (int s = 0; s < 3; ++s)
                for (int k = 0; k < n; ++k) v((s + 1) * n + k) = jets[static_cast<std::size_t>(s)].third(a, b, k);
        }
    }
    return ej;
}

SymplecticStructures SymplecticStructures::forDimension(int n) {
    // (target block, source block, sign) per structure, read off the quaternion products.
    struct Entry {
        int to, from;
        double sign;
    };
    const std::array<std::array<Entry, 4>, 3> table = {{
        {{{0, 1, -1}, {1, 0, 1}, {2, 3, -1}, {3, 2, 1}}},
        {{{0, 2, -1}, {1, 3, 1}, {2, 0, 1}, {3, 1, -1}}},
        {{{0, 3, -1}, {1, 2, -1}, {2, 1, 1}, {3, 0, 1}}},
    }};
    SymplecticStructures out;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t s = 0; s < 3; ++s) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4 * n, 4 * n);
        for (const Entry& e : table[s]) m.block(e.to * n, e.from * n, n, n) = e.sign * id;
        out.complex[s] = m;
        out.omega[s] = m.transpose();
    }
    return out;
}

double lagrangianResidualGeneral(const std::array<Eigen::MatrixXd, 3>& jac) {
    // Equation s: -d_i f_s^j + d_j f_s^i + sum_k (d_i f_p^k d_j f_q^k - d_j f_p^k d_i f_q^k)
    // with (p, q) = (2, 3), (3, 1), (1, 2).
    constexpr std::array<std::array<int, 3>, 3> order = {{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
    double worst = 0.0;
    for (const auto& [s, p, q] : order) {
        const Eigen::MatrixXd& fs = jac[static_cast<std::size_t>(s)];
        Eigen::MatrixXd cross = jac[static_cast<std::size_t>(p)].transpose() * jac[static_cast<std::size_t>(q)];
        Eigen::MatrixXd lhs = fs - fs.transpose() + cross - cross.transpose();
        worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
    }
    return worst;
}

double commutatorResidual(const Hessians& h) {
    double worst = 0.0;
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t t = s + 1; t < 3; ++t)
            worst = std::max(worst, (h[s] * h[t] - h[t] * h[s]).cwiseAbs().maxCoeff());
    return worst;
}

double commutatorResidual(const PotentialTriple& pt, std::span<const double> x) {
    return commutatorResidual(hessiansOf(potentialJets(pt, x)));
}

std::array<double, 3> pullbackResidual(const EmbeddingJet& ej, const SymplecticStructures& sym) {
    std::array<double, 3> out{};
    for (std::size_t s = 0; s < 3; ++s)
        out[s] = (ej.tangents.transpose() * sym.omega[s] * ej.tangents).cwiseAbs().maxCoeff();
    return out;
}

Eigen::MatrixXd inducedMetric(const EmbeddingJet& ej) {
    Eigen::MatrixXd g = ej.tangents.transpose() * ej.tangents;
    return 0.5 * (g + g.transpose());
}

double starOmegaDet(const Hessians& h) {
    const auto n = h[0].rows();
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
    for (const auto& m : h) g += m * m;
    // det g = det(L)^2 for the Cholesky factor L.
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    return 1.0 / llt.matrixL().determinant();
}

double starOmegaDet(const PotentialTriple& pt, std::span<const double> x) {
    return starOmegaDet(hessiansOf(potentialJets(pt, x)));
}

}  // namespace mlg
