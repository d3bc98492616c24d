#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mlg/expr.hpp"
#include "mlg/jet.hpp"

namespace mlg {

enum class GraphShape { GeneralTriple, SpecialLagrangian, TripleEqual };

std::string toString(GraphShape s);
GraphShape shapeFromString(const std::string& s);

/// Three potentials u1, u2, u3 on R^n defining the graph (x, grad u1, grad u2, grad u3).
struct PotentialTriple {
    int n = 1;
    std::array<Expr, 3> u;

    static PotentialTriple fromText(int n, const std::string& u1, const std::string& u2, const std::string& u3);

    /// (x, grad u, 0, 0): u2 and u3 carry no variables.
    bool isSpecialLagrangian() const;
    /// (x, grad u, grad u, grad u): all three trees identical.
    bool isTripleEqual() const;
    bool hasShape(GraphShape s) const;
};

using Hessians = std::array<Eigen::MatrixXd, 3>;

std::array<Jet3, 3> potentialJets(const PotentialTriple& pt, std::span<const double> x);
Hessians hessiansOf(const std::array<Jet3, 3>& jets);

/// Position, first and second parameter derivatives of F(x) = (x, grad u1, grad u2, grad u3).
/// Vectors in R^{4n} are laid out block-wise: [x | y1 | y2 | y3].
struct EmbeddingJet {
    Eigen::VectorXd position;
    Eigen::MatrixXd tangents;                   // 4n x n, column a = dF/dx_a
    std::vector<Eigen::VectorXd> secondDerivs;  // n*n, entry a*n+b = d2F/dx_a dx_b

    int dim() const { return static_cast<int>(tangents.cols()); }
    const Eigen::VectorXd& second(int a, int b) const {
        return secondDerivs[static_cast<std::size_t>(a * dim() + b)];
    }
};

EmbeddingJet embed(std::span<const double> x, const std::array<Jet3, 3>& jets);

/// Block complex structures on R^{4n}. On block coefficients (c0, c1, c2, c3)
/// they act as left multiplication by the quaternion units i, j, k:
///   I(c) = (-c1,  c0, -c3,  c2)
///   J(c) = (-c2,  c3,  c0, -c1)
///   K(c) = (-c3, -c2,  c1,  c0)
/// so I a_i = a_{n+i}, J a_i = a_{2n+i}, K a_i = a_{3n+i} and IJ = K.
struct SymplecticStructures {
    std::array<Eigen::MatrixXd, 3> complex;  // I, J, K
    std::array<Eigen::MatrixXd, 3> omega;    // matrices of g(S., .)

    static SymplecticStructures forDimension(int n);
};

/// Max |lhs| of the three Lagrangian equations for a graph (x, f1, f2, f3);
/// `jacobians[s](k, i)` = d f_{s+1}^k / d x_i.
double lagrangianResidualGeneral(const std::array<Eigen::MatrixXd, 3>& jacobians);

double commutatorResidual(const Hessians& h);
double commutatorResidual(const PotentialTriple& pt, std::span<const double> x);

/// Max entry of tangents^T * omega_s * tangents, per s.
std::array<double, 3> pullbackResidual(const EmbeddingJet& ej, const SymplecticStructures& sym);

Eigen::MatrixXd inducedMetric(const EmbeddingJet& ej);

/// 1 / sqrt(det(I + sum_s Hess(u_s)^2)).
double starOmegaDet(const Hessians& h);
double starOmegaDet(const PotentialTriple& pt, std::span<const double> x);

}  // namespace mlg
