#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mlg {

enum class Op { Const, Var, Neg, Sin, Cos, Exp, Log, Sqrt, Tanh, Add, Sub, Mul, Div, Pow };

bool isUnary(Op op) noexcept;
bool isBinary(Op op) noexcept;

/// One node of an expression tree. Children always precede their parent in
/// the owning node array, so the array is also a valid postfix program.
struct Node {
    Op op = Op::Const;
    double value = 0.0;  // Const
    int var = 0;         // Var, zero-based
    int lhs = -1;        // unary operand or left operand
    int rhs = -1;        // right operand; for Pow always a Const node
};

/// Immutable scalar expression over x1..xn. Cheap to copy (shared storage).
class Expr {
public:
    Expr();  // the constant 0 in dimension 1
    Expr(std::vector<Node> nodes, int dim);

    static Expr constant(double c, int dim);

    int dim() const noexcept { return dim_; }
    std::span<const Node> nodes() const noexcept { return *nodes_; }
    int root() const noexcept { return static_cast<int>(nodes_->size()) - 1; }
    const Node& node(int i) const { return (*nodes_)[static_cast<std::size_t>(i)]; }

    /// True when no variable occurs in the tree.
    bool isConstant() const;

    /// Fully parenthesized text that parses back to the same tree.
    std::string toString() const;

private:
    std::shared_ptr<const std::vector<Node>> nodes_;
    int dim_ = 1;
};

/// Parses a potential over variables x1..xn.
///
/// Precedence, tightest first: `^` (right associative, constant exponent),
/// unary minus, `* /`, `+ -`. Functions: sin cos exp log sqrt tanh.
/// Throws ParseError carrying the byte offset of the offending token.
Expr parse(std::string_view source, int n);

/// Real evaluation; throws DomainError outside the real domain.
double evalExpr(const Expr& e, std::span<const double> x);

bool structurallyEqual(const Expr& a, const Expr& b);

}  // namespace mlg
