#pragma once

#include <Eigen/Dense>

#include "mlg/lagrangian.hpp"

namespace mlg {

/// Common eigen-data of three commuting symmetric matrices.
struct Spectrum {
    Eigen::MatrixXd basis;        // n x n, orthonormal columns a_i
    Eigen::MatrixXd lambdas;      // n x 3, lambdas(i, s) = eigenvalue of H_{s+1} on a_i
    Eigen::VectorXd normalizers;  // A_i = sqrt(1 + |Lambda_i|^2)
    double commutatorResidual = 0.0;
    bool approximate = false;  // commutators were above tol but within 10 tol

    int dim() const { return static_cast<int>(lambdas.rows()); }
    Eigen::Vector3d bigLambda(int i) const { return lambdas.row(i).transpose(); }

    /// Spectrum with the standard basis and prescribed eigenvalue rows.
    static Spectrum fromLambdas(const Eigen::MatrixXd& lambdas);
};

/// Simultaneous diagonalization by recursive eigenspace refinement: split by
/// the eigenspaces of H1, restrict H2 to each block and split again, then H3.
/// Eigenvalues closer than 1e-8 (1 + |H|) are treated as one cluster. Rows
/// are sorted lexicographically by (lambda1, lambda2, lambda3).
///
/// Throws NotCommuting when a pairwise commutator exceeds 10 * tol; between
/// tol and 10 * tol the result is flagged `approximate`.
Spectrum jointDiagonalize(const Hessians& h, double tol = 1e-9);

/// The orthonormal frame {e_i, I e_i, J e_i, K e_i} built from a spectrum.
struct QuaternionFrame {
    Eigen::MatrixXd tangent;  // 4n x n, column i = e_i
    Eigen::MatrixXd normal;   // 4n x 3n, column s*n + i = e_{(s+1)n + i}

    int dim() const { return static_cast<int>(tangent.cols()); }
    const Eigen::VectorXd normalVector(int s, int k) const { return normal.col(s * dim() + k); }
    /// All 4n vectors in the order e_1, ..., e_{4n}.
    Eigen::MatrixXd all() const;
};

QuaternionFrame buildFrame(const Spectrum& spec);

/// 1 / prod_i A_i.
double starOmegaSpectral(const Spectrum& spec);

/// Symmetrized outer product (Li Lj^T + Lj Li^T) / 2.
Eigen::Matrix3d sMatrix(const Eigen::Vector3d& li, const Eigen::Vector3d& lj);

struct FrameDefects {
    double orthonormality = 0.0;  // max |E^T E - Id|
    double complexStructure = 0.0;  // max |e_{sn+i} - S e_i|
    double tangency = 0.0;  // distance of e_i from the tangent space
    double reconstruction = 0.0;  // max |H_s - sum_i lambda a a^T|

    /// Largest of the three frame defects; reconstruction is reported separately.
    double worst() const;
};

FrameDefects frameDefects(const QuaternionFrame& frame, const Spectrum& spec, const Hessians& h,
                          const EmbeddingJet& ej, const SymplecticStructures& sym);

}  // namespace mlg
