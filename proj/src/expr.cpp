#include "mlg/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>

#include "mlg/error.hpp"

namespace mlg {

bool isUnary(Op op) noexcept {
    switch (op) {
        case Op::Neg:
        case Op::Sin:
        case Op::Cos:
        case Op::Exp:
        case Op::Log:
        case Op::Sqrt:
        case Op::Tanh:
            return true;
        default:
            return false;
    }
}

bool isBinary(Op op) noexcept {
    switch (op) {
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow:
            return true;
        default:
            return false;
    }
}

Expr::Expr() : Expr(std::vector<Node>{Node{}}, 1) {}

Expr::Expr(std::vector<Node> nodes, int dim)
    : nodes_(std::make_shared<const std::vector<Node>>(std::move(nodes))), dim_(dim) {}

Expr Expr::constant(double c, int dim) {
    Node n;
    n.op = Op::Const;
    n.value = c;
    return Expr({n}, dim);
}

bool Expr::isConstant() const {
    for (const Node& n : *nodes_) {
        if (n.op == Op::Var) return false;
    }
    return true;
}

namespace {

const char* functionName(Op op) {
    switch (op) {
        case Op::Sin: return "sin";
        case Op::Cos: return "cos";
        case Op::Exp: return "exp";
        case Op::Log: return "log";
        case Op::Sqrt: return "sqrt";
        case Op::Tanh: return "tanh";
        default: return "";
    }
}

char binarySymbol(Op op) {
    switch (op) {
        case Op::Add: return '+';
        case Op::Sub: return '-';
        case Op::Mul: return '*';
        case Op::Div: return '/';
        case Op::Pow: return '^';
        default: return '?';
    }
}

std::string formatConstant(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (v < 0) return "(" + s + ")";
    return s;
}

void printNode(const Expr& e, int i, std::string& out) {
    const Node& n = e.node(i);
    switch (n.op) {
        case Op::Const:
            out += formatConstant(n.value);
            return;
        case Op::Var:
            out += "x" + std::to_string(n.var + 1);
            return;
        case Op::Neg:
            out += "(-";
            printNode(e, n.lhs, out);
            out += ")";
            return;
        default:
            break;
    }
    if (isUnary(n.op)) {
        out += functionName(n.op);
        out += "(";
        printNode(e, n.lhs, out);
        out += ")";
        return;
    }
    out += "(";
    printNode(e, n.lhs, out);
    out += binarySymbol(n.op);
    printNode(e, n.rhs, out);
    out += ")";
}

class Parser {
public:
    Parser(std::string_view src, int n) : src_(src), dim_(n) {}

    Expr run() {
        // Nodes are appended in postfix order, so the root ends up last.
        parseSum();
        skipSpace();
        if (pos_ != src_.size()) {
            throw ParseError(ParseError::Kind::Syntax, pos_,
                             std::string("unexpected '") + src_[pos_] + "'");
        }
        return Expr(std::move(nodes_), dim_);
    }

private:
    std::string_view src_;
    int dim_;
    std::size_t pos_ = 0;
    std::vector<Node> nodes_;

    void skipSpace() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skipSpace();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int push(Node n) {
        nodes_.push_back(n);
        return static_cast<int>(nodes_.size()) - 1;
    }

    int pushBinary(Op op, int l, int r) {
        Node n;
        n.op = op;
        n.lhs = l;
        n.rhs = r;
        return push(n);
    }

    int parseSum() {
        int lhs = parseProduct();
        for (;;) {
            if (accept('+')) {
                lhs = pushBinary(Op::Add, lhs, parseProduct());
            } else if (accept('-')) {
                lhs = pushBinary(Op::Sub, lhs, parseProduct());
            } else {
                return lhs;
            }
        }
    }

    int parseProduct() {
        int lhs = parseUnary();
        for (;;) {
            if (accept('*')) {
                lhs = pushBinary(Op::Mul, lhs, parseUnary());
            } else if (accept('/')) {
                lhs = pushBinary(Op::Div, lhs, parseUnary());
            } else {
                return lhs;
            }
        }
    }

    int parseUnary() {
        if (accept('-')) {
            Node n;
            n.op = Op::Neg;
            n.lhs = parseUnary();
            return push(n);
        }
        return parsePower();
    }

    int parsePower() {
        int base = parsePrimary();
        skipSpace();
        if (pos_ < src_.size() && src_[pos_] == '^') {
            ++pos_;
            std::size_t exponentStart = pos_;
            std::size_t mark = nodes_.size();
            parseUnary();
            // Fold the exponent subtree into one constant; rebase its child indices first.
            std::vector<Node> rebased(nodes_.begin() + static_cast<std::ptrdiff_t>(mark), nodes_.end());
            for (Node& n : rebased) {
                if (n.lhs >= 0) n.lhs -= static_cast<int>(mark);
                if (n.rhs >= 0) n.rhs -= static_cast<int>(mark);
            }
            Expr detached(std::move(rebased), dim_);
            if (!detached.isConstant()) {
                throw ParseError(ParseError::Kind::Syntax, exponentStart,
                                 "exponent must be a constant expression");
            }
            double value = 0.0;
            try {
                std::vector<double> none(static_cast<std::size_t>(dim_), 0.0);
                value = evalExpr(detached, none);
            } catch (const DomainError&) {
                throw ParseError(ParseError::Kind::Syntax, exponentStart, "exponent is not a finite real");
            }
            nodes_.resize(mark);
            Node c;
            c.op = Op::Const;
            c.value = value;
            int cidx = push(c);
            return pushBinary(Op::Pow, base, cidx);
        }
        return base;
    }

    int parsePrimary() {
        skipSpace();
        if (pos_ >= src_.size()) {
            throw ParseError(ParseError::Kind::Syntax, pos_, "unexpected end of input");
        }
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            int inner = parseSum();
            if (!accept(')')) {
                throw ParseError(ParseError::Kind::Syntax, pos_, "expected ')'");
            }
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parseNumber();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parseIdentifier();
        throw ParseError(ParseError::Kind::Syntax, pos_, std::string("unexpected '") + c + "'");
    }

    int parseNumber() {
        std::size_t start = pos_;
        auto digits = [&] {
            std::size_t d = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++d;
            }
            return d;
        };
        std::size_t mantissa = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw ParseError(ParseError::Kind::Syntax, start, "malformed number");
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (digits() == 0) throw ParseError(ParseError::Kind::Syntax, start, "malformed exponent");
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (ec != std::errc() || ptr != src_.data() + pos_ || !std::isfinite(value)) {
            throw ParseError(ParseError::Kind::Syntax, start, "numeric literal out of range");
        }
        Node n;
        n.op = Op::Const;
        n.value = value;
        return push(n);
    }

    int parseIdentifier() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
            ++pos_;
        }
        std::string_view name = src_.substr(start, pos_ - start);

        if (name.size() > 1 && name[0] == 'x') {
            bool numeric = true;
            for (char d : name.substr(1)) numeric = numeric && std::isdigit(static_cast<unsigned char>(d));
            if (numeric) {
                int index = 0;
                auto [ptr, ec] = std::from_chars(name.data() + 1, name.data() + name.size(), index);
                if (ec != std::errc() || index < 1 || index > dim_) {
                    throw ParseError(ParseError::Kind::VariableOutOfRange, start,
                                     "variable " + std::string(name) + " outside x1..x" +
                                         std::to_string(dim_));
                }
                Node n;
                n.op = Op::Var;
                n.var = index - 1;
                return push(n);
            }
        }

        static constexpr std::pair<std::string_view, Op> kFunctions[] = {
            {"sin", Op::Sin}, {"cos", Op::Cos},   {"exp", Op::Exp},
            {"log", Op::Log}, {"sqrt", Op::Sqrt}, {"tanh", Op::Tanh},
        };
        for (const auto& [fname, op] : kFunctions) {
            if (name == fname) {
                if (!accept('(')) {
                    throw ParseError(ParseError::Kind::Syntax, pos_,
                                     "expected '(' after " + std::string(name));
                }
                Node n;
                n.op = op;
                n.lhs = parseSum();
                if (!accept(')')) throw ParseError(ParseError::Kind::Syntax, pos_, "expected ')'");
                return push(n);
            }
        }
        throw ParseError(ParseError::Kind::UnknownIdentifier, start,
                         "unknown identifier '" + std::string(name) + "'");
    }
};

double checked(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
    return v;
}

}  // namespace

std::string Expr::toString() const {
    std::string out;
    printNode(*this, root(), out);
    return out;
}

Expr parse(std::string_view source, int n) {
    if (n < 1) throw ParseError(ParseError::Kind::Syntax, 0, "dimension must be positive");
    return Parser(source, n).run();
}

double evalExpr(const Expr& e, std::span<const double> x) {
    auto nodes = e.nodes();
    std::vector<double> val(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        auto a = [&] { return val[static_cast<std::size_t>(n.lhs)]; };
        auto b = [&] { return val[static_cast<std::size_t>(n.rhs)]; };
        double v = 0.0;
        switch (n.op) {
            case Op::Const: v = n.value; break;
            case Op::Var:
                if (static_cast<std::size_t>(n.var) >= x.size()) {
                    throw DomainError("point has fewer coordinates than the expression uses");
                }
                v = x[static_cast<std::size_t>(n.var)];
                break;
            case Op::Neg: v = -a(); break;
            case Op::Sin: v = std::sin(a()); break;
            case Op::Cos: v = std::cos(a()); break;
            case Op::Exp: v = std::exp(a()); break;
            case Op::Log:
                if (!(a() > 0.0)) throw DomainError("log of nonpositive value");
                v = std::log(a());
                break;
            case Op::Sqrt:
                if (a() < 0.0) throw DomainError("sqrt of negative value");
                v = std::sqrt(a());
                break;
            case Op::Tanh: v = std::tanh(a()); break;
            case Op::Add: v = a() + b(); break;
            case Op::Sub: v = a() - b(); break;
            case Op::Mul: v = a() * b(); break;
            case Op::Div:
                if (b() == 0.0) throw DomainError("division by zero");
                v = a() / b();
                break;
            case Op::Pow:
                if (a() < 0.0 && std::trunc(b()) != b()) {
                    throw DomainError("negative base with non-integer exponent");
                }
                v = std::pow(a(), b());
                break;
        }
        val[i] = checked(v, "evalExpr");
    }
    return val.back();
}

bool structurallyEqual(const Expr& a, const Expr& b) {
    if (a.dim() != b.dim()) return false;
    std::function<bool(int, int)> same = [&](int i, int j) {
        const Node& p = a.node(i);
        const Node& q = b.node(j);
        if (p.op != q.op) return false;
        if (p.op == Op::Const) return p.value == q.value;
        if (p.op == Op::Var) return p.var == q.var;
        if (!same(p.lhs, q.lhs)) return false;
        return isBinary(p.op) ? same(p.rhs, q.rhs) : true;
    };
    return same(a.root(), b.root());
}

}  // namespace mlg
