#ifndef NULLGEOM_LINALG_HPP
#define NULLGEOM_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "nullgeom/matrix.hpp"

namespace nullgeom {

/// Input geometry violates a structural precondition (rank, nondegeneracy).
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Jet &x) { return std::abs(x.value()); }

template <class T>
double max_magnitude(const Mat<T> &a)
{
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) {
            m = std::max(m, magnitude(a(i, j)));
        }
    }
    return m;
}

/// Solves A X = B by Gaussian elimination with partial pivoting on values.
template <class T>
Mat<T> solve(Mat<T> a, Mat<T> b, double rel_tol = 1e-12)
{
    const int n = a.rows();
    if (a.cols() != n || b.rows() != n) {
        throw std::invalid_argument("solve: shape mismatch");
    }
    const double scale = std::max(max_magnitude(a), 1e-300);
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i) {
            if (magnitude(a(i, k)) > magnitude(a(p, k))) {
                p = i;
            }
        }
        if (magnitude(a(p, k)) <= rel_tol * scale) {
            throw GeometryError("singular linear system (pivot " + std::to_string(k) + ")");
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
            }
            for (int j = 0; j < b.cols(); ++j) {
                std::swap(b(k, j), b(p, j));
            }
        }
        const T inv = T(1) / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const T f = a(i, k) * inv;
            for (int j = k; j < n; ++j) {
                a(i, j) -= f * a(k, j);
            }
            for (int j = 0; j < b.cols(); ++j) {
                b(i, j) -= f * b(k, j);
            }
        }
    }
    Mat<T> x(n, b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        for (int i = n - 1; i >= 0; --i) {
            T s = b(i, j);
            for (int k = i + 1; k < n; ++k) {
                s -= a(i, k) * x(k, j);
            }
            x(i, j) = s / a(i, i);
        }
    }
    return x;
}

template <class T>
Vec<T> solve(const Mat<T> &a, const Vec<T> &b, double rel_tol = 1e-12)
{
    Mat<T> bm(static_cast<int>(b.size()), 1);
    bm.set_col(0, b);
    return solve(a, bm, rel_tol).col(0);
}

template <class T>
Mat<T> inverse(const Mat<T> &a)
{
    return solve(a, Mat<T>::identity(a.rows()));
}

/// Basis of the null space of A. Rank is decided on values with full
/// pivoting; the basis entries carry the same scalar type as A.
template <class T>
std::vector<Vec<T>> null_space(Mat<T> a, double rel_tol = 1e-9)
{
    const int r = a.rows();
    const int c = a.cols();
    std::vector<int> colperm(c);
    std::iota(colperm.begin(), colperm.end(), 0);
    const double scale = max_magnitude(a);
    int rank = 0;
    if (scale > 0.0) {
        for (int k = 0; k < std::min(r, c); ++k) {
            int pi = -1, pj = -1;
            double best = rel_tol * scale;
            for (int i = k; i < r; ++i) {
                for (int j = k; j < c; ++j) {
                    if (magnitude(a(i, j)) > best) {
                        best = magnitude(a(i, j));
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi < 0) {
                break;
            }
            for (int j = 0; j < c; ++j) {
                std::swap(a(k, j), a(pi, j));
            }
            for (int i = 0; i < r; ++i) {
                std::swap(a(i, k), a(i, pj));
            }
            std::swap(colperm[k], colperm[pj]);
            const T inv = T(1) / a(k, k);
            for (int j = k; j < c; ++j) {
                a(k, j) *= inv;
            }
            for (int i = 0; i < r; ++i) {
                if (i == k) {
                    continue;
                }
                const T f = a(i, k);
                for (int j = k; j < c; ++j) {
                    a(i, j) -= f * a(k, j);
                }
            }
            ++rank;
        }
    }
    // Reduced form: x_pivot(k) = -sum_free a(k, free) x_free.
    std::vector<Vec<T>> basis;
    for (int f = rank; f < c; ++f) {
        Vec<T> v(c, T(0));
        v[colperm[f]] = T(1);
        for (int k = 0; k < rank; ++k) {
            v[colperm[k]] = -a(k, f);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

inline double determinant(Mat<double> a)
{
    const int n = a.rows();
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(a(i, k)) > std::abs(a(p, k))) {
                p = i;
            }
        }
        if (a(p, k) == 0.0) {
            return 0.0;
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
            }
            det = -det;
        }
        det *= a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            for (int j = k; j < n; ++j) {
                a(i, j) -= f * a(k, j);
            }
        }
    }
    return det;
}

} // namespace nullgeom

#endif
