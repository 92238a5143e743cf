#ifndef NULLGEOM_NEWTON_HPP
#define NULLGEOM_NEWTON_HPP

#include <string>
#include <vector>

#include "nullgeom/matrix.hpp"
#include "nullgeom/report.hpp"

namespace nullgeom {

/// S_0..S_dim and the signed transformations T_0..T_dim of one operator,
/// with T_r = (-1)^r S_r I + A T_{r-1}.
template <class T>
struct NewtonChain {
    int dim = 0;
    std::vector<T> S;
    std::vector<Mat<T>> Tr;
};

/// p_k = tr(A^k) for k = 1..dim (index 0 holds dim).
template <class T>
std::vector<T> power_sums(const Mat<T> &a)
{
    const int n = a.rows();
    std::vector<T> p(n + 1, T(0));
    p[0] = T(n);
    Mat<T> pw = a;
    for (int k = 1; k <= n; ++k) {
        p[k] = pw.trace();
        if (k < n) {
            pw = pw * a;
        }
    }
    return p;
}

/// Elementary symmetric functions of the eigenvalues from Newton's
/// identities on power sums; no eigendecomposition.
template <class T>
std::vector<T> symmetric_functions(const Mat<T> &a)
{
    const int n = a.rows();
    const std::vector<T> p = power_sums(a);
    std::vector<T> s(n + 1, T(0));
    s[0] = T(1);
    for (int r = 1; r <= n; ++r) {
        T acc(0);
        for (int i = 1; i <= r; ++i) {
            if (i % 2 == 1) {
                acc += s[r - i] * p[i];
            } else {
                acc -= s[r - i] * p[i];
            }
        }
        s[r] = acc / T(r);
    }
    return s;
}

template <class T>
NewtonChain<T> newton_chain(const Mat<T> &a)
{
    NewtonChain<T> c;
    c.dim = a.rows();
    c.S = symmetric_functions(a);
    c.Tr.push_back(Mat<T>::identity(c.dim));
    for (int r = 1; r <= c.dim; ++r) {
        Mat<T> t = a * c.Tr[r - 1];
        const T sr = (r % 2 == 0) ? c.S[r] : T(-c.S[r]);
        for (int i = 0; i < c.dim; ++i) {
            t(i, i) += sr;
        }
        c.Tr.push_back(std::move(t));
    }
    return c;
}

/// S_r beyond the operator dimension vanish.
template <class T>
T s_or_zero(const std::vector<T> &s, int r)
{
    return (r >= 0 && r < static_cast<int>(s.size())) ? s[r] : T(0);
}

struct NewtonTolerances {
    double relative = 1e-9;
    double cayley_hamilton = 1e-10;
};

/// Trace identities, recursion and Cayley-Hamilton residuals. Check ids
/// are prefixed with `prefix`; rows are attributed to `point`.
void verify_trace_identities(const NewtonChain<double> &chain, const Mat<double> &a, const NewtonTolerances &tol,
                             const std::string &prefix, const std::vector<double> &point, Report &out);

/// True when the operator has eigenvalues with nonzero imaginary part.
bool has_complex_spectrum(const Mat<double> &a, double rel_tol = 1e-9);

} // namespace nullgeom

#endif
