#ifndef NULLGEOM_EXPR_HPP
#define NULLGEOM_EXPR_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullgeom/jet.hpp"

namespace nullgeom {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string &what)
        : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset)
    {
    }
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Names bound to values at evaluation time are missing.
class UnboundName : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class NodeKind { Constant, Param, Neg, Binary, Call, PowInt };

struct Node {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;   // Constant
    int param = -1;       // Param
    char op = 0;          // Binary: + - * /
    JetFunction func{};   // Call
    int exponent = 0;     // PowInt
    std::shared_ptr<const Node> lhs, rhs;
};

/// Immutable expression tree over a fixed list of parameter names.
class Expr {
public:
    Expr() = default;

    /// Grammar:
    ///   expr    := term (('+'|'-') term)*
    ///   term    := unary (('*'|'/') unary)*
    ///   unary   := '-' unary | power
    ///   power   := primary ('^' intexpr)?
    ///   intexpr := ['-'] integer ('^' intexpr)?     right-assoc, folded
    ///   primary := number | name | name '(' expr ')' | '(' expr ')'
    /// so "-x^2" is -(x^2) and "2^3^2" is 2^9.
    static Expr parse(std::string_view src, const std::vector<std::string> &params);

    static Expr constant(double v);
    static Expr param(int idx, int nparams);
    /// k * (this).
    Expr times(double k) const;

    const Node &root() const { return *root_; }
    bool empty() const noexcept { return root_ == nullptr; }
    int param_count() const noexcept { return nparams_; }

    /// Fully parenthesized text that parses back to an equal tree.
    std::string to_string(const std::vector<std::string> &params) const;

    double eval(std::span<const double> args) const;
    Jet eval(std::span<const Jet> args) const;

    friend bool operator==(const Expr &a, const Expr &b);

private:
    std::shared_ptr<const Node> root_;
    int nparams_ = 0;
};

bool structurally_equal(const Node &a, const Node &b);

} // namespace nullgeom

#endif
