#ifndef NULLGEOM_JET_HPP
#define NULLGEOM_JET_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nullgeom {

/// Largest supported chart dimension. Coefficient count grows as C(m+3,3).
inline constexpr int kMaxJetVars = 10;
inline constexpr int kJetOrder = 3;

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Multi-index bookkeeping shared by all jets in m variables.
///
/// Coefficients are stored densely in graded order: the constant term, then
/// the m first-degree terms, then degree two (i <= j), then degree three
/// (i <= j <= k). A coefficient c_a is the Taylor coefficient of h^a, so the
/// partial derivative of multi-index a equals a! * c_a.
class JetSpace {
public:
    struct Product {
        std::uint16_t lhs, rhs, out;
    };
    struct Shift {
        std::uint16_t from, to;
        double factor;
    };

    static const JetSpace &get(int m);

    int vars() const noexcept { return m_; }
    int size() const noexcept { return static_cast<int>(degree_.size()); }
    int degree(int idx) const noexcept { return degree_[idx]; }
    const std::array<std::uint8_t, kMaxJetVars> &exponents(int idx) const { return exps_[idx]; }

    /// Linear index of a multi-index given by up to three variable indices.
    int index_of(std::span<const int> vars) const;

    std::span<const Product> products() const noexcept { return products_; }
    std::span<const Shift> derivative_shifts(int var) const { return shifts_.at(var); }

private:
    explicit JetSpace(int m);

    int m_;
    std::vector<int> degree_;
    std::vector<std::array<std::uint8_t, kMaxJetVars>> exps_;
    std::vector<Product> products_;
    std::vector<std::vector<Shift>> shifts_;
};

/// Truncated multivariate Taylor expansion of order three.
///
/// A jet without a space is a plain constant and combines with any other
/// jet. `order()` records the highest degree whose coefficients are still
/// exact: differentiation lowers it by one, and coefficients above it are
/// held at zero.
class Jet {
public:
    Jet() : c_{0.0} {}
    Jet(double v) : c_{v} {} // NOLINT(google-explicit-constructor)

    static Jet constant(int m, double v);
    /// Coordinate jet u_i expanded about the point u.
    static Jet variable(std::span<const double> u, int i);
    /// Jet with explicit coefficients in graded order.
    static Jet from_coefficients(int m, std::vector<double> coeffs, int order = kJetOrder);

    double value() const noexcept { return c_[0]; }
    int vars() const noexcept { return space_ ? space_->vars() : 0; }
    int order() const noexcept { return order_; }
    bool is_constant_only() const noexcept { return space_ == nullptr; }
    const JetSpace *space() const noexcept { return space_; }
    std::span<const double> coefficients() const noexcept { return c_; }

    /// Raw Taylor coefficient of the given multi-index (list of variables).
    double coeff(std::span<const int> vars) const;
    double coeff(std::initializer_list<int> vars) const
    {
        return coeff(std::span<const int>(vars.begin(), vars.size()));
    }
    /// First, second and third partial derivatives at the expansion point.
    double d(int i) const;
    double d2(int i, int j) const;
    double d3(int i, int j, int k) const;

    /// Partial derivative jet with respect to variable i.
    Jet derivative(int i) const;
    /// Same expansion in more variables; the new variables do not appear.
    Jet embed(int m) const;

    Jet operator-() const;
    Jet &operator+=(const Jet &o);
    Jet &operator-=(const Jet &o);
    Jet &operator*=(const Jet &o);
    Jet &operator/=(const Jet &o);
    Jet &operator*=(double s);

    friend Jet operator+(Jet a, const Jet &b) { return a += b; }
    friend Jet operator-(Jet a, const Jet &b) { return a -= b; }
    friend Jet operator*(const Jet &a, const Jet &b);
    friend Jet operator/(const Jet &a, const Jet &b);
    friend Jet operator+(Jet a, double b) { return a += Jet(b); }
    friend Jet operator+(double a, Jet b) { return b += Jet(a); }
    friend Jet operator-(Jet a, double b) { return a -= Jet(b); }
    friend Jet operator-(double a, const Jet &b) { return Jet(a) - b; }
    friend Jet operator*(Jet a, double b) { return a *= b; }
    friend Jet operator*(double a, Jet b) { return b *= a; }
    friend Jet operator/(Jet a, double b) { return a *= 1.0 / b; }

private:
    const JetSpace *space_ = nullptr;
    int order_ = kJetOrder;
    std::vector<double> c_;

    void promote(const JetSpace *s);
    void truncate_to_order();
    static const JetSpace *common_space(const Jet &a, const Jet &b);
};

enum class JetFunction { Sin, Cos, Tan, Exp, Log, Sqrt, Neg, Recip, PowInt };

/// Composition f(a) truncated at order three. Throws DomainError outside
/// the domain of f.
Jet apply(JetFunction f, const Jet &a, int exponent = 0);

Jet sin(const Jet &a);
Jet cos(const Jet &a);
Jet tan(const Jet &a);
Jet exp(const Jet &a);
Jet log(const Jet &a);
Jet sqrt(const Jet &a);
Jet recip(const Jet &a);
Jet pow_int(const Jet &a, int k);

/// Same operations on plain reals, with identical domain rules.
double apply(JetFunction f, double a, int exponent = 0);

inline double sqrt(double x) { return std::sqrt(x); }

inline double value_of(double x) noexcept { return x; }
inline double value_of(const Jet &x) noexcept { return x.value(); }

} // namespace nullgeom

#endif
