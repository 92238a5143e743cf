#ifndef NULLGEOM_TESTS_SUPPORT_HPP
#define NULLGEOM_TESTS_SUPPORT_HPP

// Shared fixtures and reference implementations for the test programs.

#include <cmath>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nullgeom/matrix.hpp"

namespace testsupport {

using nullgeom::Mat;
using Rational = boost::multiprecision::cpp_rational;

/// diag(eps) * Sym, self-adjoint for the metric diag(eps).
inline Mat<double> random_self_adjoint(std::mt19937_64 &rng, int n, bool indefinite)
{
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Mat<double> sym(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            sym(i, j) = sym(j, i) = d(rng) / std::sqrt(double(n));
        }
    }
    if (indefinite) {
        for (int i = 0; i < n; ++i) {
            if (rng() & 1) {
                for (int j = 0; j < n; ++j) {
                    sym(i, j) = -sym(i, j);
                }
            }
        }
    }
    return sym;
}

/// L D L^{-1} with L unit lower triangular over the integers; exact.
inline Mat<Rational> integer_spectrum_operator(std::mt19937_64 &rng, const std::vector<int> &eig)
{
    const int n = static_cast<int>(eig.size());
    std::uniform_int_distribution<int> d(-2, 2);
    Mat<Rational> l = Mat<Rational>::identity(n), linv = Mat<Rational>::identity(n), dm(n, n);
    for (int i = 0; i < n; ++i) {
        dm(i, i) = eig[i];
        for (int j = 0; j < i; ++j) {
            l(i, j) = d(rng);
        }
    }
    // forward substitution for the inverse of a unit lower-triangular matrix
    for (int j = 0; j < n; ++j) {
        for (int i = j + 1; i < n; ++i) {
            Rational s = 0;
            for (int k = j; k < i; ++k) {
                s += l(i, k) * linv(k, j);
            }
            linv(i, j) = -s;
        }
    }
    return l * dm * linv;
}

/// e_r of a list of values by summing over all r-subsets.
template <class T>
std::vector<T> brute_force_elementary(const std::vector<T> &x)
{
    const int n = static_cast<int>(x.size());
    std::vector<T> e(n + 1, T(0));
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        T prod(1);
        int r = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                prod *= x[i];
                ++r;
            }
        }
        e[r] += prod;
    }
    return e;
}

inline double binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return 0.0;
    }
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

} // namespace testsupport

#endif
