#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "slrsm/errors.hpp"

namespace slrsm {

/// Malformed expression text. `position()` is the 0-based offset into the
/// source where parsing failed.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t position)
        : Error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Any identifier other than the variable `x` and the whitelisted functions.
class UnknownIdentifier : public SyntaxError {
public:
    using SyntaxError::SyntaxError;
};

/// Evaluation hit log/sqrt of a negative number or a division by zero.
class DomainError : public Error {
public:
    using Error::Error;
};

namespace detail {
struct ExprNode;
}

/// A parsed potential q(x): one free variable `x`, numeric literals,
/// + - * / ^ (right-associative), unary minus, and the functions
/// sin, cos, exp, log, sqrt, abs.
///
/// Immutable after parse; cheap to copy and safe to evaluate from many
/// threads concurrently. Evaluation is deterministic: the same source and
/// the same x give bit-identical results.
class PotentialExpr {
public:
    /// Value of q at x. Throws DomainError on log/sqrt of a negative
    /// number or division by zero.
    double operator()(double x) const;

    const std::string& source() const noexcept { return source_; }

    /// Fully parenthesized rendering of the tree. Re-parsing it yields a
    /// structurally identical tree.
    std::string canonical() const;

    /// Structural tree equality (not textual equality of sources).
    bool same_tree(const PotentialExpr& other) const;

    friend PotentialExpr parse_potential(std::string_view source);

private:
    PotentialExpr(std::shared_ptr<const detail::ExprNode> root, std::string source)
        : root_(std::move(root)), source_(std::move(source)) {}

    std::shared_ptr<const detail::ExprNode> root_;
    std::string source_;
};

/// Parse an infix expression over the variable x.
/// Throws SyntaxError / UnknownIdentifier with the offending position.
PotentialExpr parse_potential(std::string_view source);

/// Value of q at x (same as p(x)).
double eval_potential(const PotentialExpr& p, double x);

} // namespace slrsm
