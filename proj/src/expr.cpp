#include "nullgeom/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

namespace nullgeom {

namespace {

constexpr int kMaxDepth = 200;
constexpr long kMaxExponent = 64;

using NodePtr = std::shared_ptr<const Node>;

struct FunctionName {
    const char *name;
    JetFunction f;
};

constexpr FunctionName kFunctions[] = {
    {"sin", JetFunction::Sin}, {"cos", JetFunction::Cos}, {"tan", JetFunction::Tan},
    {"exp", JetFunction::Exp}, {"log", JetFunction::Log}, {"sqrt", JetFunction::Sqrt},
};

const char *function_name(JetFunction f)
{
    for (const auto &fn : kFunctions) {
        if (fn.f == f) {
            return fn.name;
        }
    }
    return "?";
}

NodePtr make_constant(double v)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Constant;
    n->value = v;
    return n;
}

class Parser {
public:
    Parser(std::string_view src, const std::vector<std::string> &params) : src_(src), params_(params) {}

    NodePtr run()
    {
        skip_ws();
        if (pos_ >= src_.size()) {
            throw ParseError(pos_, "empty expression");
        }
        NodePtr n = expr();
        skip_ws();
        if (pos_ != src_.size()) {
            throw ParseError(pos_, std::string("unexpected character '") + printable(src_[pos_]) + "'");
        }
        return n;
    }

private:
    std::string_view src_;
    const std::vector<std::string> &params_;
    std::size_t pos_ = 0;
    int depth_ = 0;

    struct DepthGuard {
        Parser &p;
        explicit DepthGuard(Parser &parser) : p(parser)
        {
            if (++p.depth_ > kMaxDepth) {
                throw ParseError(p.pos_, "expression nested too deeply");
            }
        }
        ~DepthGuard() { --p.depth_; }
    };

    static std::string printable(char c)
    {
        const auto uc = static_cast<unsigned char>(c);
        if (std::isprint(uc)) {
            return std::string(1, c);
        }
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\x%02x", uc);
        return buf;
    }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= src_.size()) {
                throw ParseError(pos_, std::string("expected '") + c + "' before end of input");
            }
            throw ParseError(pos_, std::string("expected '") + c + "', found '" + printable(src_[pos_]) + "'");
        }
    }

    static NodePtr binary(char op, NodePtr l, NodePtr r)
    {
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::Binary;
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    NodePtr expr()
    {
        DepthGuard g(*this);
        NodePtr lhs = term();
        for (;;) {
            if (accept('+')) {
                lhs = binary('+', lhs, term());
            } else if (accept('-')) {
                lhs = binary('-', lhs, term());
            } else {
                return lhs;
            }
        }
    }

    NodePtr term()
    {
        DepthGuard g(*this);
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*')) {
                lhs = binary('*', lhs, unary());
            } else if (accept('/')) {
                lhs = binary('/', lhs, unary());
            } else {
                return lhs;
            }
        }
    }

    NodePtr unary()
    {
        DepthGuard g(*this);
        if (accept('-')) {
            auto n = std::make_shared<Node>();
            n->kind = NodeKind::Neg;
            n->lhs = unary();
            return n;
        }
        return power();
    }

    NodePtr power()
    {
        DepthGuard g(*this);
        NodePtr base = primary();
        if (!accept('^')) {
            return base;
        }
        const long k = int_expr();
        auto n = std::make_shared<Node>();
        n->kind = NodeKind::PowInt;
        n->lhs = std::move(base);
        n->exponent = static_cast<int>(k);
        return n;
    }

    long int_expr()
    {
        DepthGuard g(*this);
        skip_ws();
        const std::size_t start = pos_;
        const bool negative = accept('-');
        skip_ws();
        const std::size_t digits = pos_;
        long v = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            v = v * 10 + (src_[pos_] - '0');
            if (v > 1000000) {
                throw ParseError(digits, "exponent too large");
            }
            ++pos_;
        }
        if (pos_ == digits) {
            throw ParseError(pos_, "expected integer exponent");
        }
        if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E')) {
            throw ParseError(pos_, "exponent must be an integer");
        }
        if (negative) {
            v = -v;
        }
        if (accept('^')) {
            const long e = int_expr();
            if (e < 0) {
                throw ParseError(start, "negative power in integer exponent");
            }
            long r = 1;
            for (long i = 0; i < e; ++i) {
                r *= v;
                if (std::labs(r) > kMaxExponent) {
                    throw ParseError(start, "exponent too large");
                }
            }
            v = r;
        }
        if (std::labs(v) > kMaxExponent) {
            throw ParseError(start, "exponent too large");
        }
        return v;
    }

    NodePtr number()
    {
        const std::size_t start = pos_;
        std::size_t p = pos_;
        auto digits = [&] {
            std::size_t q = p;
            while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
                ++p;
            }
            return p - q;
        };
        std::size_t nd = digits();
        if (p < src_.size() && src_[p] == '.') {
            ++p;
            nd += digits();
        }
        if (nd == 0) {
            throw ParseError(start, "malformed number");
        }
        if (p < src_.size() && (src_[p] == 'e' || src_[p] == 'E')) {
            std::size_t q = p + 1;
            if (q < src_.size() && (src_[q] == '+' || src_[q] == '-')) {
                ++q;
            }
            if (q < src_.size() && std::isdigit(static_cast<unsigned char>(src_[q]))) {
                p = q;
                digits();
            } else {
                throw ParseError(p, "malformed exponent in number");
            }
        }
        const std::string text(src_.substr(start, p - start));
        const double v = std::strtod(text.c_str(), nullptr);
        if (!std::isfinite(v)) {
            throw ParseError(start, "number out of range");
        }
        pos_ = p;
        return make_constant(v);
    }

    NodePtr primary()
    {
        DepthGuard g(*this);
        skip_ws();
        if (pos_ >= src_.size()) {
            throw ParseError(pos_, "unexpected end of input");
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return number();
        }
        if (accept('(')) {
            NodePtr inner = expr();
            expect(')');
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                ++pos_;
            }
            const std::string name(src_.substr(start, pos_ - start));
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == '(') {
                for (const auto &fn : kFunctions) {
                    if (name == fn.name) {
                        ++pos_;
                        auto n = std::make_shared<Node>();
                        n->kind = NodeKind::Call;
                        n->func = fn.f;
                        n->lhs = expr();
                        expect(')');
                        return n;
                    }
                }
                throw ParseError(start, "unknown function '" + name + "'");
            }
            for (std::size_t i = 0; i < params_.size(); ++i) {
                if (params_[i] == name) {
                    auto n = std::make_shared<Node>();
                    n->kind = NodeKind::Param;
                    n->param = static_cast<int>(i);
                    return n;
                }
            }
            if (name == "pi") {
                return make_constant(std::numbers::pi);
            }
            throw ParseError(start, "unknown identifier '" + name + "'");
        }
        throw ParseError(pos_, std::string("unexpected character '") + printable(c) + "'");
    }
};

void print(const Node &n, const std::vector<std::string> &params, std::string &out)
{
    switch (n.kind) {
    case NodeKind::Constant: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", n.value);
        out += buf;
        break;
    }
    case NodeKind::Param:
        if (n.param >= 0 && static_cast<std::size_t>(n.param) < params.size()) {
            out += params[n.param];
        } else {
            out += "$" + std::to_string(n.param);
        }
        break;
    case NodeKind::Neg:
        out += "(-";
        print(*n.lhs, params, out);
        out += ")";
        break;
    case NodeKind::Binary:
        out += "(";
        print(*n.lhs, params, out);
        out += ' ';
        out += n.op;
        out += ' ';
        print(*n.rhs, params, out);
        out += ")";
        break;
    case NodeKind::Call:
        out += function_name(n.func);
        out += "(";
        print(*n.lhs, params, out);
        out += ")";
        break;
    case NodeKind::PowInt:
        out += "((";
        print(*n.lhs, params, out);
        out += ")^" + std::to_string(n.exponent) + ")";
        break;
    }
}

template <class T>
T evaluate(const Node &n, std::span<const T> args)
{
    switch (n.kind) {
    case NodeKind::Constant:
        return T(n.value);
    case NodeKind::Param:
        if (n.param < 0 || static_cast<std::size_t>(n.param) >= args.size()) {
            throw UnboundName("parameter #" + std::to_string(n.param) + " is not bound");
        }
        return args[n.param];
    case NodeKind::Neg:
        return -evaluate<T>(*n.lhs, args);
    case NodeKind::Binary: {
        const T l = evaluate<T>(*n.lhs, args);
        const T r = evaluate<T>(*n.rhs, args);
        switch (n.op) {
        case '+':
            return l + r;
        case '-':
            return l - r;
        case '*':
            return l * r;
        default:
            if (value_of(r) == 0.0) {
                throw DomainError("division by zero");
            }
            return l / r;
        }
    }
    case NodeKind::Call:
        return apply(n.func, evaluate<T>(*n.lhs, args));
    case NodeKind::PowInt:
        return apply(JetFunction::PowInt, evaluate<T>(*n.lhs, args), n.exponent);
    }
    throw std::logic_error("corrupt expression node");
}

} // namespace

Expr Expr::parse(std::string_view src, const std::vector<std::string> &params)
{
    Expr e;
    e.root_ = Parser(src, params).run();
    e.nparams_ = static_cast<int>(params.size());
    return e;
}

Expr Expr::constant(double v)
{
    Expr e;
    e.root_ = make_constant(v);
    return e;
}

Expr Expr::times(double k) const
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Binary;
    n->op = '*';
    n->lhs = make_constant(k);
    n->rhs = root_;
    Expr e;
    e.root_ = std::move(n);
    e.nparams_ = nparams_;
    return e;
}

Expr Expr::param(int idx, int nparams)
{
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Param;
    n->param = idx;
    Expr e;
    e.root_ = n;
    e.nparams_ = nparams;
    return e;
}

std::string Expr::to_string(const std::vector<std::string> &params) const
{
    std::string out;
    if (root_) {
        print(*root_, params, out);
    }
    return out;
}

double Expr::eval(std::span<const double> args) const
{
    return evaluate<double>(*root_, args);
}

Jet Expr::eval(std::span<const Jet> args) const
{
    return evaluate<Jet>(*root_, args);
}

bool structurally_equal(const Node &a, const Node &b)
{
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case NodeKind::Constant:
        return a.value == b.value || (std::isnan(a.value) && std::isnan(b.value));
    case NodeKind::Param:
        return a.param == b.param;
    case NodeKind::Neg:
        return structurally_equal(*a.lhs, *b.lhs);
    case NodeKind::Binary:
        return a.op == b.op && structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    case NodeKind::Call:
        return a.func == b.func && structurally_equal(*a.lhs, *b.lhs);
    case NodeKind::PowInt:
        return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
    }
    return false;
}

bool operator==(const Expr &a, const Expr &b)
{
    if (!a.root_ || !b.root_) {
        return a.root_ == b.root_;
    }
    return structurally_equal(*a.root_, *b.root_);
}

} // namespace nullgeom
