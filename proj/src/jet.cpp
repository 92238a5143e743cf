#include "nullgeom/jet.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

namespace nullgeom {

namespace {

using Exponents = std::array<std::uint8_t, kMaxJetVars>;

int degree_of(const Exponents &e, int m)
{
    int d = 0;
    for (int i = 0; i < m; ++i) {
        d += e[i];
    }
    return d;
}

} // namespace

JetSpace::JetSpace(int m) : m_(m)
{
    Exponents zero{};
    exps_.push_back(zero);
    for (int i = 0; i < m; ++i) {
        Exponents e{};
        e[i] = 1;
        exps_.push_back(e);
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            Exponents e{};
            ++e[i];
            ++e[j];
            exps_.push_back(e);
        }
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            for (int k = j; k < m; ++k) {
                Exponents e{};
                ++e[i];
                ++e[j];
                ++e[k];
                exps_.push_back(e);
            }
        }
    }
    for (const auto &e : exps_) {
        degree_.push_back(degree_of(e, m));
    }

    auto find = [this](const Exponents &e) {
        auto it = std::find(exps_.begin(), exps_.end(), e);
        return static_cast<int>(it - exps_.begin());
    };

    const int n = size();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (degree_[a] + degree_[b] > kJetOrder) {
                continue;
            }
            Exponents e{};
            for (int v = 0; v < m; ++v) {
                e[v] = static_cast<std::uint8_t>(exps_[a][v] + exps_[b][v]);
            }
            products_.push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                                 static_cast<std::uint16_t>(find(e))});
        }
    }

    shifts_.resize(m);
    for (int v = 0; v < m; ++v) {
        for (int a = 0; a < n; ++a) {
            if (exps_[a][v] == 0) {
                continue;
            }
            Exponents e = exps_[a];
            --e[v];
            shifts_[v].push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(find(e)),
                                  static_cast<double>(exps_[a][v])});
        }
    }
}

const JetSpace &JetSpace::get(int m)
{
    if (m < 0 || m > kMaxJetVars) {
        throw std::invalid_argument("jet chart dimension " + std::to_string(m) + " outside [0, " +
                                    std::to_string(kMaxJetVars) + "]");
    }
    static std::array<std::unique_ptr<JetSpace>, kMaxJetVars + 1> spaces;
    static std::once_flag once;
    std::call_once(once, [] {
        for (int k = 0; k <= kMaxJetVars; ++k) {
            spaces[k].reset(new JetSpace(k));
        }
    });
    return *spaces[m];
}

int JetSpace::index_of(std::span<const int> vars) const
{
    if (vars.size() > static_cast<std::size_t>(kJetOrder)) {
        throw std::out_of_range("multi-index degree exceeds jet order");
    }
    Exponents e{};
    for (int v : vars) {
        if (v < 0 || v >= m_) {
            throw std::out_of_range("jet variable index " + std::to_string(v) + " out of range");
        }
        ++e[v];
    }
    auto it = std::find(exps_.begin(), exps_.end(), e);
    return static_cast<int>(it - exps_.begin());
}

Jet Jet::constant(int m, double v)
{
    Jet j;
    j.space_ = &JetSpace::get(m);
    j.c_.assign(j.space_->size(), 0.0);
    j.c_[0] = v;
    return j;
}

Jet Jet::variable(std::span<const double> u, int i)
{
    const int m = static_cast<int>(u.size());
    if (i < 0 || i >= m) {
        throw std::out_of_range("coordinate index " + std::to_string(i) + " outside chart of dimension " +
                                std::to_string(m));
    }
    Jet j = constant(m, u[i]);
    j.c_[1 + i] = 1.0;
    return j;
}

Jet Jet::from_coefficients(int m, std::vector<double> coeffs, int order)
{
    Jet j;
    j.space_ = &JetSpace::get(m);
    if (static_cast<int>(coeffs.size()) != j.space_->size()) {
        throw std::invalid_argument("coefficient count does not match jet space");
    }
    j.c_ = std::move(coeffs);
    j.order_ = order;
    j.truncate_to_order();
    return j;
}

double Jet::coeff(std::span<const int> vars) const
{
    if (!space_) {
        return vars.empty() ? c_[0] : 0.0;
    }
    return c_[space_->index_of(vars)];
}

double Jet::d(int i) const
{
    return coeff({i});
}

double Jet::d2(int i, int j) const
{
    return coeff({i, j}) * (i == j ? 2.0 : 1.0);
}

double Jet::d3(int i, int j, int k) const
{
    double f = 1.0;
    if (i == j && j == k) {
        f = 6.0;
    } else if (i == j || j == k || i == k) {
        f = 2.0;
    }
    return coeff({i, j, k}) * f;
}

Jet Jet::derivative(int i) const
{
    if (order_ <= 0) {
        throw std::logic_error("jet differentiated beyond its exact order");
    }
    if (!space_) {
        return Jet(0.0);
    }
    if (i < 0 || i >= space_->vars()) {
        throw std::out_of_range("derivative variable " + std::to_string(i) + " out of range");
    }
    Jet r;
    r.space_ = space_;
    r.order_ = order_ - 1;
    r.c_.assign(c_.size(), 0.0);
    for (const auto &s : space_->derivative_shifts(i)) {
        r.c_[s.to] += s.factor * c_[s.from];
    }
    r.truncate_to_order();
    return r;
}

Jet Jet::embed(int m) const
{
    if (!space_) {
        return *this;
    }
    if (m < space_->vars()) {
        throw std::invalid_argument("cannot embed jet into fewer variables");
    }
    const JetSpace &target = JetSpace::get(m);
    Jet r;
    r.space_ = &target;
    r.order_ = order_;
    r.c_.assign(target.size(), 0.0);
    for (int a = 0; a < space_->size(); ++a) {
        if (c_[a] == 0.0) {
            continue;
        }
        std::vector<int> vars;
        const auto &e = space_->exponents(a);
        for (int v = 0; v < space_->vars(); ++v) {
            for (int k = 0; k < e[v]; ++k) {
                vars.push_back(v);
            }
        }
        r.c_[target.index_of(vars)] = c_[a];
    }
    return r;
}

void Jet::promote(const JetSpace *s)
{
    if (space_ || !s) {
        return;
    }
    const double v = c_[0];
    space_ = s;
    c_.assign(s->size(), 0.0);
    c_[0] = v;
}

void Jet::truncate_to_order()
{
    if (!space_ || order_ >= kJetOrder) {
        return;
    }
    for (int a = 0; a < space_->size(); ++a) {
        if (space_->degree(a) > order_) {
            c_[a] = 0.0;
        }
    }
}

const JetSpace *Jet::common_space(const Jet &a, const Jet &b)
{
    if (a.space_ && b.space_ && a.space_ != b.space_) {
        throw std::invalid_argument("jets over charts of different dimension (" + std::to_string(a.vars()) +
                                    " vs " + std::to_string(b.vars()) + ")");
    }
    return a.space_ ? a.space_ : b.space_;
}

Jet Jet::operator-() const
{
    Jet r = *this;
    for (double &x : r.c_) {
        x = -x;
    }
    return r;
}

Jet &Jet::operator+=(const Jet &o)
{
    const JetSpace *s = common_space(*this, o);
    promote(s);
    if (o.space_) {
        for (std::size_t a = 0; a < c_.size(); ++a) {
            c_[a] += o.c_[a];
        }
    } else {
        c_[0] += o.c_[0];
    }
    order_ = std::min(order_, o.order_);
    truncate_to_order();
    return *this;
}

Jet &Jet::operator-=(const Jet &o)
{
    return *this += -o;
}

Jet &Jet::operator*=(double s)
{
    for (double &x : c_) {
        x *= s;
    }
    return *this;
}

Jet operator*(const Jet &a, const Jet &b)
{
    const JetSpace *s = Jet::common_space(a, b);
    if (!a.space_ || !b.space_) {
        Jet r = a.space_ ? a : b;
        const double k = a.space_ ? b.c_[0] : a.c_[0];
        r *= k;
        r.order_ = std::min(a.order_, b.order_);
        r.truncate_to_order();
        return r;
    }
    Jet r;
    r.space_ = s;
    r.order_ = std::min(a.order_, b.order_);
    r.c_.assign(s->size(), 0.0);
    for (const auto &p : s->products()) {
        r.c_[p.out] += a.c_[p.lhs] * b.c_[p.rhs];
    }
    r.truncate_to_order();
    return r;
}

Jet &Jet::operator*=(const Jet &o)
{
    *this = *this * o;
    return *this;
}

Jet operator/(const Jet &a, const Jet &b)
{
    return a * recip(b);
}

Jet &Jet::operator/=(const Jet &o)
{
    *this = *this / o;
    return *this;
}

namespace {

// Values of f, f', f'', f''' at x.
std::array<double, 4> derivative_table(JetFunction f, double x, int k)
{
    switch (f) {
    case JetFunction::Sin: {
        const double s = std::sin(x), c = std::cos(x);
        return {s, c, -s, -c};
    }
    case JetFunction::Cos: {
        const double s = std::sin(x), c = std::cos(x);
        return {c, -s, -c, s};
    }
    case JetFunction::Tan: {
        if (std::abs(std::cos(x)) < 1e-12) {
            throw DomainError("tan evaluated at a pole (argument " + std::to_string(x) + ")");
        }
        const double t = std::tan(x), s = 1.0 + t * t;
        return {t, s, 2.0 * t * s, 2.0 * s * (1.0 + 3.0 * t * t)};
    }
    case JetFunction::Exp: {
        const double e = std::exp(x);
        return {e, e, e, e};
    }
    case JetFunction::Log:
        if (!(x > 0.0)) {
            throw DomainError("log of non-positive value " + std::to_string(x));
        }
        return {std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)};
    case JetFunction::Sqrt: {
        if (!(x > 0.0)) {
            throw DomainError("sqrt requires a positive value, got " + std::to_string(x));
        }
        const double s = std::sqrt(x);
        return {s, 0.5 / s, -0.25 / (x * s), 0.375 / (x * x * s)};
    }
    case JetFunction::Neg:
        return {-x, -1.0, 0.0, 0.0};
    case JetFunction::Recip:
        if (x == 0.0) {
            throw DomainError("reciprocal of zero");
        }
        return {1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x)};
    case JetFunction::PowInt:
        break;
    }
    (void)k;
    throw std::logic_error("no derivative table for this function");
}

} // namespace

Jet apply(JetFunction f, const Jet &a, int exponent)
{
    if (!std::isfinite(a.value())) {
        throw DomainError("non-finite jet value");
    }
    if (f == JetFunction::Neg) {
        return -a;
    }
    if (f == JetFunction::PowInt) {
        if (exponent < 0) {
            return pow_int(recip(a), -exponent);
        }
        Jet r(1.0);
        for (int i = 0; i < exponent; ++i) {
            r *= a;
        }
        if (a.space() && exponent == 0) {
            r = Jet::constant(a.vars(), 1.0);
        }
        return r;
    }
    if (f == JetFunction::Sqrt && a.value() == 0.0) {
        const auto cs = a.coefficients();
        const bool flat = std::all_of(cs.begin() + 1, cs.end(), [](double x) { return x == 0.0; });
        if (flat) {
            return a;
        }
    }
    const auto t = derivative_table(f, a.value(), exponent);
    Jet delta = a - a.value();
    Jet delta2 = delta * delta;
    Jet delta3 = delta2 * delta;
    Jet r = delta * t[1] + delta2 * (t[2] / 2.0) + delta3 * (t[3] / 6.0);
    r += Jet(t[0]);
    return r;
}

double apply(JetFunction f, double a, int exponent)
{
    switch (f) {
    case JetFunction::Neg:
        return -a;
    case JetFunction::PowInt:
        if (a == 0.0 && exponent < 0) {
            throw DomainError("zero raised to a negative power");
        }
        return std::pow(a, exponent);
    case JetFunction::Sqrt:
        if (a < 0.0) {
            throw DomainError("sqrt of negative value " + std::to_string(a));
        }
        return std::sqrt(a);
    default:
        return derivative_table(f, a, exponent)[0];
    }
}

Jet sin(const Jet &a) { return apply(JetFunction::Sin, a); }
Jet cos(const Jet &a) { return apply(JetFunction::Cos, a); }
Jet tan(const Jet &a) { return apply(JetFunction::Tan, a); }
Jet exp(const Jet &a) { return apply(JetFunction::Exp, a); }
Jet log(const Jet &a) { return apply(JetFunction::Log, a); }
Jet sqrt(const Jet &a) { return apply(JetFunction::Sqrt, a); }
Jet recip(const Jet &a) { return apply(JetFunction::Recip, a); }
Jet pow_int(const Jet &a, int k) { return apply(JetFunction::PowInt, a, k); }

} // namespace nullgeom
