#ifndef NULLGEOM_SEMIMETRIC_HPP
#define NULLGEOM_SEMIMETRIC_HPP

#include <string>
#include <vector>

#include "nullgeom/linalg.hpp"

namespace nullgeom {

/// Diagonal flat metric diag(signs) on R^dim.
struct Signature {
    std::vector<int> signs;

    Signature() = default;
    explicit Signature(std::vector<int> s);

    int dim() const noexcept { return static_cast<int>(signs.size()); }
    static Signature lorentzian(int dim); // (-,+,...,+)
    static Signature euclidean(int dim);
};

template <class T>
T inner(const Signature &sig, const Vec<T> &x, const Vec<T> &y)
{
    if (static_cast<int>(x.size()) != sig.dim() || static_cast<int>(y.size()) != sig.dim()) {
        throw std::invalid_argument("inner: vector of length " + std::to_string(x.size()) + "/" +
                                    std::to_string(y.size()) + " against metric of dimension " +
                                    std::to_string(sig.dim()));
    }
    T s(0);
    for (int k = 0; k < sig.dim(); ++k) {
        if (sig.signs[k] > 0) {
            s += x[k] * y[k];
        } else {
            s -= x[k] * y[k];
        }
    }
    return s;
}

/// eta * v, the metric-lowered components.
template <class T>
Vec<T> lower(const Signature &sig, Vec<T> v)
{
    for (int k = 0; k < sig.dim(); ++k) {
        if (sig.signs[k] < 0) {
            v[k] = -v[k];
        }
    }
    return v;
}

/// Null space of the Gram matrix of `span`, returned as ambient vectors
/// together with their coefficients in `span`.
template <class T>
struct RadicalResult {
    std::vector<Vec<T>> vectors;
    std::vector<Vec<T>> coefficients;
};

template <class T>
RadicalResult<T> radical_basis(const Signature &sig, const std::vector<Vec<T>> &span, double rel_tol = 1e-9)
{
    const int k = static_cast<int>(span.size());
    Mat<T> g(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = i; j < k; ++j) {
            g(i, j) = inner(sig, span[i], span[j]);
            g(j, i) = g(i, j);
        }
    }
    RadicalResult<T> r;
    r.coefficients = null_space(g, rel_tol);
    for (const auto &c : r.coefficients) {
        Vec<T> v(sig.dim(), T(0));
        for (int i = 0; i < k; ++i) {
            v = axpy(v, c[i], span[i]);
        }
        r.vectors.push_back(std::move(v));
    }
    return r;
}

/// Z_i = sum_j coeffs(i, j) * input_j with <Z_i, Z_j> = signs_i delta_ij.
template <class T>
struct OrthonormalResult {
    std::vector<Vec<T>> vectors;
    std::vector<int> signs;
    Mat<T> coeffs;
};

/// Sign-aware Gram-Schmidt. The remaining vector of largest |<v,v>| is
/// taken as the next pivot; ties within `tie_tol` keep input order.
template <class T>
OrthonormalResult<T> gram_schmidt_indefinite(const Signature &sig, const std::vector<Vec<T>> &vecs,
                                             double degeneracy_tol = 1e-10, double tie_tol = 1e-9)
{
    const int k = static_cast<int>(vecs.size());
    std::vector<Vec<T>> work = vecs;
    Mat<T> coeff = Mat<T>::identity(k);
    std::vector<bool> used(k, false);
    OrthonormalResult<T> out;
    out.coeffs = Mat<T>(k, k);
    for (int step = 0; step < k; ++step) {
        int best = -1;
        double best_norm = -1.0;
        for (int i = 0; i < k; ++i) {
            if (used[i]) {
                continue;
            }
            const double nn = magnitude(inner(sig, work[i], work[i]));
            if (best < 0 || nn > best_norm * (1.0 + tie_tol) + tie_tol * 1e-300) {
                best = i;
                best_norm = nn;
            }
        }
        double euclid = 0.0;
        for (const auto &c : work[best]) {
            euclid += magnitude(c) * magnitude(c);
        }
        if (!(best_norm > degeneracy_tol * std::max(euclid, 1e-300))) {
            throw GeometryError("metric degenerate on span at orthonormalization pivot " + std::to_string(step) +
                                " (input vector " + std::to_string(best) + ")");
        }
        used[best] = true;
        const T nrm = inner(sig, work[best], work[best]);
        const int s = value_of(nrm) > 0 ? 1 : -1;
        const T inv = T(1) / sqrt(s > 0 ? nrm : -nrm);
        Vec<T> z = scaled(work[best], inv);
        for (int j = 0; j < k; ++j) {
            out.coeffs(step, j) = coeff(best, j) * inv;
        }
        for (int i = 0; i < k; ++i) {
            if (used[i]) {
                continue;
            }
            // v_i -= s <v_i, z> z
            T proj = inner(sig, work[i], z);
            if (s < 0) {
                proj = -proj;
            }
            work[i] = axpy(work[i], -proj, z);
            for (int j = 0; j < k; ++j) {
                coeff(i, j) -= proj * out.coeffs(step, j);
            }
        }
        out.vectors.push_back(std::move(z));
        out.signs.push_back(s);
    }
    return out;
}

/// Unique null N with <N,E> = 1 and N orthogonal to the screen and to W.
template <class T>
Vec<T> solve_transversal(const Signature &sig, const Vec<T> &e, const std::vector<Vec<T>> &screen, const Vec<T> &w)
{
    const int d = sig.dim();
    if (static_cast<int>(screen.size()) + 3 != d) {
        throw std::invalid_argument("transversal solve needs dim-3 screen vectors");
    }
    Mat<T> a(d, d);
    Vec<T> rhs(d, T(0));
    auto put_row = [&](int row, const Vec<T> &v) {
        const Vec<T> lv = lower(sig, v);
        for (int k = 0; k < d; ++k) {
            a(row, k) = lv[k];
        }
    };
    put_row(0, e);
    rhs[0] = T(1);
    for (std::size_t i = 0; i < screen.size(); ++i) {
        put_row(static_cast<int>(i) + 1, screen[i]);
    }
    put_row(d - 2, w);
    // Gauge row: Euclidean orthogonality to E picks one particular solution.
    for (int k = 0; k < d; ++k) {
        a(d - 1, k) = e[k];
    }
    Vec<T> n0;
    try {
        n0 = solve(a, rhs);
    } catch (const GeometryError &) {
        throw GeometryError("transversal system is singular; input is not half-lightlike");
    }
    const T half_norm = inner(sig, n0, n0) * 0.5;
    return axpy(n0, -half_norm, e);
}

} // namespace nullgeom

#endif
