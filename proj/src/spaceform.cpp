#include "nullgeom/spaceform.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nullgeom {

namespace {

void require_even(int n)
{
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("screen dimension must be even and at least 2, got " + std::to_string(n));
    }
}

Rational pow(const Rational &q, int k)
{
    Rational r = 1;
    for (int i = 0; i < k; ++i) {
        r *= q;
    }
    return r;
}

double to_double(const Rational &q)
{
    return static_cast<double>(q);
}

// |a - b| as a double, never zero when a != b.
double exact_residual(const Rational &a, const Rational &b)
{
    if (a == b) {
        return 0.0;
    }
    const Rational d = a - b;
    const double r = to_double(d < 0 ? Rational(-d) : d);
    return r > 0.0 ? r : 1.0;
}

std::vector<double> params_point(int n, const Rational &c, const Rational &V, int k)
{
    return {double(n), to_double(c), to_double(V), double(k)};
}

} // namespace

Rational parse_rational(const std::string &text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s += ch;
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("empty rational");
    }
    auto parse_int = [&](const std::string &part) -> boost::multiprecision::cpp_int {
        std::size_t i = 0;
        if (i < part.size() && (part[i] == '+' || part[i] == '-')) {
            ++i;
        }
        if (i == part.size()) {
            throw std::invalid_argument("malformed rational '" + text + "'");
        }
        for (std::size_t j = i; j < part.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(part[j]))) {
                throw std::invalid_argument("malformed rational '" + text + "'");
            }
        }
        return boost::multiprecision::cpp_int(part[0] == '+' ? part.substr(1) : part);
    };
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const auto den = parse_int(s.substr(slash + 1));
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + text + "'");
        }
        return Rational(parse_int(s.substr(0, slash)), den);
    }
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        const std::string frac = s.substr(dot + 1);
        std::string whole = s.substr(0, dot);
        const bool neg = !whole.empty() && whole[0] == '-';
        if (whole.empty() || whole == "-" || whole == "+") {
            whole += "0";
        }
        if (frac.empty()) {
            return Rational(parse_int(whole));
        }
        const auto f = parse_int(frac);
        if (frac[0] == '-' || frac[0] == '+') {
            throw std::invalid_argument("malformed rational '" + text + "'");
        }
        boost::multiprecision::cpp_int scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        const Rational w(parse_int(whole));
        const Rational part(f, scale);
        return neg ? Rational(w - part) : Rational(w + part);
    }
    return Rational(parse_int(s));
}

std::string to_string(const Rational &q)
{
    return q.str();
}

Rational binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return 0;
    }
    Rational r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

IntegralTable recurrence_table(int n, const Rational &c, const Rational &V)
{
    require_even(n);
    IntegralTable t{n, c, V, std::vector<Rational>(n + 1)};
    t.I[0] = V;
    t.I[1] = 0;
    for (int r = 0; r + 2 <= n; ++r) {
        t.I[r + 2] = c * (n - r) * t.I[r] / (r + 2);
    }
    return t;
}

IntegralTable einstein_table(int n, const Rational &mu, const Rational &V)
{
    require_even(n);
    IntegralTable t{n, mu / n, V, std::vector<Rational>(n + 1)};
    t.I[0] = V;
    t.I[1] = 0;
    for (int r = 0; r + 2 <= n; ++r) {
        t.I[r + 2] = mu * (n - r) * t.I[r] / (n * (r + 2));
    }
    return t;
}

Rational closed_form(int n, const Rational &c, const Rational &V, int k)
{
    require_even(n);
    return pow(c, k) * binomial(n / 2, k) * V;
}

void closed_form_check(const IntegralTable &t, const std::string &id, Report &out)
{
    double odd = 0.0;
    for (int r = 0; r <= t.n; ++r) {
        if (r % 2 == 1) {
            odd = std::max(odd, exact_residual(t.I[r], 0));
            continue;
        }
        const int k = r / 2;
        const Rational expect = closed_form(t.n, t.curvature, t.volume, k);
        out.add(id + "/closed_form", "I_{2k} = c^k C(n/2, k) V", params_point(t.n, t.curvature, t.volume, k),
                exact_residual(t.I[r], expect), 0.0);
    }
    out.add(id + "/odd_vanish", "I_{2k+1} = 0", params_point(t.n, t.curvature, t.volume, -1), odd, 0.0);
}

void volume_consistency(int n, const Rational &c, const Rational &V, Report &out)
{
    const IntegralTable t = recurrence_table(n, c, V);
    const Rational lhs = 2 * t.I[2];
    const Rational rhs = Rational(n) * c * V;
    out.add("spaceform/volume_consistency", "2 I_2 = n c V", params_point(n, c, V, 1), exact_residual(lhs, rhs), 0.0);
}

void einstein_checks(int n, const Rational &mu, const Rational &V, Report &out)
{
    const IntegralTable e = einstein_table(n, mu, V);
    closed_form_check(e, "spaceform/einstein", out);

    const IntegralTable s = recurrence_table(n, mu / n, V);
    double sub = 0.0;
    for (int r = 0; r <= n; ++r) {
        sub = std::max(sub, exact_residual(e.I[r], s.I[r]));
    }
    out.add("spaceform/einstein_substitution", "Einstein table = space-form table with c = mu/n",
            params_point(n, mu, V, -1), sub, 0.0);

    // The statement's exponent n/2 against the derived exponent k.
    double gap = 0.0;
    for (int k = 0; 2 * k <= n; ++k) {
        const Rational printed = pow(mu / n, n / 2) * binomial(n / 2, k) * V;
        gap = std::max(gap, exact_residual(printed, e.I[2 * k]));
    }
    out.info("spaceform/einstein_statement_exponent", params_point(n, mu, V, -1), gap,
             "largest gap between (mu/n)^(n/2) C(n/2,k) V and the recurrence");
}

std::string table_csv(const IntegralTable &t)
{
    std::string s = "r,exact,decimal\n";
    for (int r = 0; r <= t.n; ++r) {
        s += std::to_string(r) + "," + to_string(t.I[r]) + "," + format_double(to_double(t.I[r])) + "\n";
    }
    return s;
}

} // namespace nullgeom
