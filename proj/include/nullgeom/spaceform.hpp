#ifndef NULLGEOM_SPACEFORM_HPP
#define NULLGEOM_SPACEFORM_HPP

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nullgeom/report.hpp"

namespace nullgeom {

using Rational = boost::multiprecision::cpp_rational;

/// Accepts "p", "p/q" and plain decimals such as "-0.25".
Rational parse_rational(const std::string &text);
std::string to_string(const Rational &q);

/// Integrals I_r of the mean curvatures over a compact ambient space,
/// reduced to the recurrence they satisfy.
struct IntegralTable {
    int n = 0;
    Rational curvature; // c, or mu/n for the Einstein variant
    Rational volume;
    std::vector<Rational> I; // r = 0..n
};

/// I_0 = V, I_1 = 0, (r+2) I_{r+2} = c (n - r) I_r. n must be even and >= 2.
IntegralTable recurrence_table(int n, const Rational &c, const Rational &V);

/// n (r+2) I_{r+2} = mu (n - r) I_r with the same seeds.
IntegralTable einstein_table(int n, const Rational &mu, const Rational &V);

/// c^k C(l, k) V with l = n/2.
Rational closed_form(int n, const Rational &c, const Rational &V, int k);

Rational binomial(int n, int k);

/// Exact comparison of every even entry with the closed form and of every
/// odd entry with zero. `id` prefixes the check ids.
void closed_form_check(const IntegralTable &t, const std::string &id, Report &out);

/// 2 I_2 = n c V.
void volume_consistency(int n, const Rational &c, const Rational &V, Report &out);

/// The Einstein table against its closed form, the recurrence table with
/// c = mu/n, and the value printed with exponent n/2 (info only).
void einstein_checks(int n, const Rational &mu, const Rational &V, Report &out);

/// Columns r, exact, decimal.
std::string table_csv(const IntegralTable &t);

} // namespace nullgeom

#endif
