#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mlg/expr.hpp"

namespace mlg {

/// Value, gradient, Hessian and third-derivative tensor of a scalar field at
/// one point. The tensors are stored densely and kept exactly symmetric.
class Jet3 {
public:
    Jet3() = default;
    explicit Jet3(int n);

    int dim() const noexcept { return n_; }

    double value = 0.0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;

    double third(int i, int j, int k) const { return third_[index(i, j, k)]; }
    /// Writes all six permutations of (i, j, k).
    void setThird(int i, int j, int k, double v);

    /// Matrix slice (d/dx_k) Hess, i.e. entries third(i, j, k) for fixed k.
    Eigen::MatrixXd thirdSlice(int k) const;

    static Jet3 constant(double c, int n);
    static Jet3 variable(int index, double x, int n);

private:
    int n_ = 0;
    std::vector<double> third_;

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)) *
                   static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(k);
    }
};

/// Exact third-order jet of `e` at `x` by forward propagation of truncated
/// multivariate Taylor coefficients. Throws DomainError like evalExpr.
Jet3 jetEval(const Expr& e, std::span<const double> x);

}  // namespace mlg
