#include "mlg/jet.hpp"

#include <array>
#include <cmath>

#include "mlg/error.hpp"

namespace mlg {

Jet3::Jet3(int n)
    : grad(Eigen::VectorXd::Zero(n)),
      hess(Eigen::MatrixXd::Zero(n, n)),
      n_(n),
      third_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0) {}

void Jet3::setThird(int i, int j, int k, double v) {
    third_[index(i, j, k)] = v;
    third_[index(i, k, j)] = v;
    third_[index(j, i, k)] = v;
    third_[index(j, k, i)] = v;
    third_[index(k, i, j)] = v;
    third_[index(k, j, i)] = v;
}

Eigen::MatrixXd Jet3::thirdSlice(int k) const {
    Eigen::MatrixXd m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = third(i, j, k);
    return m;
}

Jet3 Jet3::constant(double c, int n) {
    Jet3 j(n);
    j.value = c;
    return j;
}

Jet3 Jet3::variable(int index, double x, int n) {
    Jet3 j(n);
    j.value = x;
    j.grad(index) = 1.0;
    return j;
}

namespace {

// Only the canonical entries i <= j <= k are computed; the setters mirror them.

Jet3 compose(const Jet3& f, const std::array<double, 4>& d) {
    // d = (phi, phi', phi'', phi''') evaluated at f.value
    const int n = f.dim();
    Jet3 r(n);
    r.value = d[0];
    r.grad = d[1] * f.grad;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double v = d[1] * f.hess(i, j) + d[2] * f.grad(i) * f.grad(j);
            r.hess(i, j) = v;
            r.hess(j, i) = v;
            for (int k = j; k < n; ++k) {
                double t = d[1] * f.third(i, j, k) +
                           d[2] * (f.hess(i, j) * f.grad(k) + f.hess(i, k) * f.grad(j) +
                                   f.hess(j, k) * f.grad(i)) +
                           d[3] * f.grad(i) * f.grad(j) * f.grad(k);
                r.setThird(i, j, k, t);
            }
        }
    }
    return r;
}

Jet3 linear(double a, const Jet3& f, double b, const Jet3& g) {
    const int n = f.dim();
    Jet3 r(n);
    r.value = a * f.value + b * g.value;
    r.grad = a * f.grad + b * g.grad;
    r.hess = a * f.hess + b * g.hess;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) r.setThird(i, j, k, a * f.third(i, j, k) + b * g.third(i, j, k));
    return r;
}

Jet3 product(const Jet3& f, const Jet3& g) {
    const int n = f.dim();
    Jet3 r(n);
    r.value = f.value * g.value;
    r.grad = f.grad * g.value + f.value * g.grad;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            double v = f.hess(i, j) * g.value + f.grad(i) * g.grad(j) + f.grad(j) * g.grad(i) +
                       f.value * g.hess(i, j);
            r.hess(i, j) = v;
            r.hess(j, i) = v;
            for (int k = j; k < n; ++k) {
                double t = f.third(i, j, k) * g.value + f.hess(i, j) * g.grad(k) + f.hess(i, k) * g.grad(j) +
                           f.hess(j, k) * g.grad(i) + f.grad(i) * g.hess(j, k) + f.grad(j) * g.hess(i, k) +
                           f.grad(k) * g.hess(i, j) + f.value * g.third(i, j, k);
                r.setThird(i, j, k, t);
            }
        }
    }
    return r;
}

// k-th derivative coefficient c * t^(p-k), with 0 * anything = 0.
double powerTerm(double c, double t, double e) { return c == 0.0 ? 0.0 : c * std::pow(t, e); }

std::array<double, 4> derivatives(Op op, double t, double p = 0.0) {
    switch (op) {
        case Op::Neg: return {-t, -1.0, 0.0, 0.0};
        case Op::Sin: return {std::sin(t), std::cos(t), -std::sin(t), -std::cos(t)};
        case Op::Cos: return {std::cos(t), -std::sin(t), -std::cos(t), std::sin(t)};
        case Op::Exp: {
            double e = std::exp(t);
            return {e, e, e, e};
        }
        case Op::Log:
            if (!(t > 0.0)) throw DomainError("log of nonpositive value");
            return {std::log(t), 1.0 / t, -1.0 / (t * t), 2.0 / (t * t * t)};
        case Op::Sqrt: {
            if (t < 0.0) throw DomainError("sqrt of negative value");
            double s = std::sqrt(t);
            return {s, 0.5 / s, -0.25 / (s * t), 0.375 / (s * t * t)};
        }
        case Op::Tanh: {
            double th = std::tanh(t);
            double sech2 = 1.0 - th * th;
            return {th, sech2, -2.0 * th * sech2, sech2 * (6.0 * th * th - 2.0)};
        }
        case Op::Pow:
            if (t < 0.0 && std::trunc(p) != p) throw DomainError("negative base with non-integer exponent");
            return {std::pow(t, p), powerTerm(p, t, p - 1.0), powerTerm(p * (p - 1.0), t, p - 2.0),
                    powerTerm(p * (p - 1.0) * (p - 2.0), t, p - 3.0)};
        default:
            return {0.0, 0.0, 0.0, 0.0};
    }
}

void requireFinite(const Jet3& j) {
    bool ok = std::isfinite(j.value) && j.grad.allFinite() && j.hess.allFinite();
    const int n = j.dim();
    for (int i = 0; ok && i < n; ++i)
        for (int a = i; ok && a < n; ++a)
            for (int b = a; ok && b < n; ++b) ok = std::isfinite(j.third(i, a, b));
    if (!ok) throw DomainError("non-finite derivative in jetEval");
}

}  // namespace

Jet3 jetEval(const Expr& e, std::span<const double> x) {
    const int n = e.dim();
    if (static_cast<int>(x.size()) < n) throw DomainError("point has fewer coordinates than the expression uses");
    auto nodes = e.nodes();
    std::vector<Jet3> val(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& nd = nodes[i];
        const Jet3* a = nd.lhs >= 0 ? &val[static_cast<std::size_t>(nd.lhs)] : nullptr;
        const Jet3* b = nd.rhs >= 0 ? &val[static_cast<std::size_t>(nd.rhs)] : nullptr;
        switch (nd.op) {
            case Op::Const: val[i] = Jet3::constant(nd.value, n); break;
            case Op::Var: val[i] = Jet3::variable(nd.var, x[static_cast<std::size_t>(nd.var)], n); break;
            case Op::Add: val[i] = linear(1.0, *a, 1.0, *b); break;
            case Op::Sub: val[i] = linear(1.0, *a, -1.0, *b); break;
            case Op::Mul: val[i] = product(*a, *b); break;
            case Op::Div: {
                double t = b->value;
                if (t == 0.0) throw DomainError("division by zero");
                std::array<double, 4> rec = {1.0 / t, -1.0 / (t * t), 2.0 / (t * t * t), -6.0 / (t * t * t * t)};
                val[i] = product(*a, compose(*b, rec));
                break;
            }
            case Op::Pow: val[i] = compose(*a, derivatives(Op::Pow, a->value, b->value)); break;
            default: val[i] = compose(*a, derivatives(nd.op, a->value)); break;
        }
        requireFinite(val[i]);
    }
    return val.back();
}

}  // namespace mlg
