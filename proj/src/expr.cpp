#include "slrsm/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace slrsm {
namespace detail {

enum class Func { sin, cos, exp, log, sqrt, abs };

struct ExprNode {
    enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };

    Kind kind;
    double value = 0.0;
    Func func = Func::sin;
    std::shared_ptr<const ExprNode> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_number(double v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::number;
    n->value = v;
    return n;
}

NodePtr make_node(ExprNode::Kind kind, NodePtr a, NodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_call(Func f, NodePtr arg) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprNode::Kind::call;
    n->func = f;
    n->a = std::move(arg);
    return n;
}

constexpr std::array<std::pair<std::string_view, Func>, 6> kFunctions{{
    {"sin", Func::sin},
    {"cos", Func::cos},
    {"exp", Func::exp},
    {"log", Func::log},
    {"sqrt", Func::sqrt},
    {"abs", Func::abs},
}};

std::string_view func_name(Func f) {
    for (const auto& [name, fn] : kFunctions)
        if (fn == f) return name;
    return "?";
}

// Recursive-descent parser.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?        -- right-associative exponent
//   primary := number | 'x' | func '(' expr ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse() {
        skip_ws();
        if (at_end()) throw SyntaxError("empty expression", pos_);
        NodePtr root = parse_expr();
        skip_ws();
        if (!at_end()) throw SyntaxError("unexpected trailing input", pos_);
        return root;
    }

private:
    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        for (;;) {
            skip_ws();
            if (consume('+'))
                lhs = make_node(ExprNode::Kind::add, lhs, parse_term());
            else if (consume('-'))
                lhs = make_node(ExprNode::Kind::sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        for (;;) {
            skip_ws();
            if (consume('*'))
                lhs = make_node(ExprNode::Kind::mul, lhs, parse_unary());
            else if (consume('/'))
                lhs = make_node(ExprNode::Kind::div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        skip_ws();
        if (consume('-')) return make_node(ExprNode::Kind::negate, parse_unary());
        if (consume('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        skip_ws();
        if (consume('^'))
            return make_node(ExprNode::Kind::pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (at_end()) throw SyntaxError("unexpected end of expression", pos_);
        char c = src_[pos_];

        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_expr();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    NodePtr parse_number() {
        double value = 0.0;
        const char* begin = src_.data() + pos_;
        const char* end = src_.data() + src_.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec == std::errc::result_out_of_range || !std::isfinite(value))
            throw SyntaxError("numeric literal out of range", pos_);
        if (ec != std::errc() || ptr == begin)
            throw SyntaxError("malformed numeric literal", pos_);
        pos_ += static_cast<std::size_t>(ptr - begin);
        return make_number(value);
    }

    NodePtr parse_identifier() {
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        std::string_view name = src_.substr(start, pos_ - start);

        if (name == "x") {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::variable;
            return n;
        }
        for (const auto& [fname, f] : kFunctions) {
            if (name == fname) {
                skip_ws();
                expect('(');
                NodePtr arg = parse_expr();
                expect(')');
                return make_call(f, arg);
            }
        }
        throw UnknownIdentifier("unknown identifier '" + std::string(name) + "'", start);
    }

    void expect(char c) {
        skip_ws();
        if (at_end() || src_[pos_] != c)
            throw SyntaxError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    bool consume(char c) {
        if (!at_end() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool at_end() const { return pos_ >= src_.size(); }

    std::string_view src_;
    std::size_t pos_ = 0;
};

double eval_node(const ExprNode& n, double x) {
    using Kind = ExprNode::Kind;
    switch (n.kind) {
        case Kind::number: return n.value;
        case Kind::variable: return x;
        case Kind::negate: return -eval_node(*n.a, x);
        case Kind::add: return eval_node(*n.a, x) + eval_node(*n.b, x);
        case Kind::sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
        case Kind::mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
        case Kind::div: {
            double num = eval_node(*n.a, x);
            double den = eval_node(*n.b, x);
            if (den == 0.0) throw DomainError("division by zero");
            return num / den;
        }
        case Kind::pow: {
            double base = eval_node(*n.a, x);
            double exponent = eval_node(*n.b, x);
            if (base == 0.0 && exponent < 0.0)
                throw DomainError("zero raised to a negative power");
            if (base < 0.0 && exponent != std::nearbyint(exponent))
                throw DomainError("fractional power of a negative base");
            return std::pow(base, exponent);
        }
        case Kind::call: {
            double arg = eval_node(*n.a, x);
            switch (n.func) {
                case Func::sin: return std::sin(arg);
                case Func::cos: return std::cos(arg);
                case Func::exp: return std::exp(arg);
                case Func::log:
                    if (arg <= 0.0) throw DomainError("log of a non-positive value");
                    return std::log(arg);
                case Func::sqrt:
                    if (arg < 0.0) throw DomainError("sqrt of a negative value");
                    return std::sqrt(arg);
                case Func::abs: return std::fabs(arg);
            }
            break;
        }
    }
    throw Error("corrupt expression tree");
}

void print_node(const ExprNode& n, std::string& out) {
    using Kind = ExprNode::Kind;
    switch (n.kind) {
        case Kind::number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", n.value);
            out += buf;
            return;
        }
        case Kind::variable: out += 'x'; return;
        case Kind::negate:
            out += "(-";
            print_node(*n.a, out);
            out += ')';
            return;
        case Kind::call:
            out += func_name(n.func);
            out += '(';
            print_node(*n.a, out);
            out += ')';
            return;
        default: break;
    }
    char op = '?';
    switch (n.kind) {
        case Kind::add: op = '+'; break;
        case Kind::sub: op = '-'; break;
        case Kind::mul: op = '*'; break;
        case Kind::div: op = '/'; break;
        case Kind::pow: op = '^'; break;
        default: break;
    }
    out += '(';
    print_node(*n.a, out);
    out += op;
    print_node(*n.b, out);
    out += ')';
}

bool equal_nodes(const ExprNode& lhs, const ExprNode& rhs) {
    if (lhs.kind != rhs.kind) return false;
    using Kind = ExprNode::Kind;
    switch (lhs.kind) {
        case Kind::number: return lhs.value == rhs.value;
        case Kind::variable: return true;
        case Kind::call:
            return lhs.func == rhs.func && equal_nodes(*lhs.a, *rhs.a);
        case Kind::negate: return equal_nodes(*lhs.a, *rhs.a);
        default: return equal_nodes(*lhs.a, *rhs.a) && equal_nodes(*lhs.b, *rhs.b);
    }
}

} // namespace
} // namespace detail

double PotentialExpr::operator()(double x) const {
    return detail::eval_node(*root_, x);
}

std::string PotentialExpr::canonical() const {
    std::string out;
    detail::print_node(*root_, out);
    return out;
}

bool PotentialExpr::same_tree(const PotentialExpr& other) const {
    return detail::equal_nodes(*root_, *other.root_);
}

PotentialExpr parse_potential(std::string_view source) {
    detail::Parser parser(source);
    return PotentialExpr(parser.parse(), std::string(source));
}

double eval_potential(const PotentialExpr& p, double x) {
    return p(x);
}

} // namespace slrsm
