#include "nullgeom/newton.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "nullgeom/linalg.hpp"

namespace nullgeom {

void verify_trace_identities(const NewtonChain<double> &c, const Mat<double> &a, const NewtonTolerances &tol,
                             const std::string &prefix, const std::vector<double> &point, Report &out)
{
    const int n = c.dim;
    const auto &S = c.S;
    auto sgn = [](int r) { return r % 2 == 0 ? 1.0 : -1.0; };
    double r_tr = 0.0, r_at = 0.0, r_a2t = 0.0, r_rec = 0.0;
    const Mat<double> a2 = a * a;
    for (int r = 0; r <= n; ++r) {
        const Mat<double> &t = c.Tr[r];
        const double s1 = S[1 <= n ? 1 : 0];
        const double sr1 = s_or_zero(S, r + 1), sr2 = s_or_zero(S, r + 2);

        const double tr = t.trace();
        const double rhs_tr = sgn(r) * (n - r) * S[r];
        r_tr = std::max(r_tr, std::abs(tr - rhs_tr) / (1.0 + std::abs(tr) + std::abs(rhs_tr)));

        const double at = (a * t).trace();
        const double rhs_at = sgn(r) * (r + 1) * sr1;
        r_at = std::max(r_at, std::abs(at - rhs_at) / (1.0 + std::abs(at) + std::abs(rhs_at)));

        const double a2t = (a2 * t).trace();
        const double rhs_a2t = sgn(r + 1) * (-s1 * sr1 + (r + 2) * sr2);
        const double scale = 1.0 + std::abs(a2t) + std::abs(s1 * sr1) + std::abs((r + 2) * sr2);
        r_a2t = std::max(r_a2t, std::abs(a2t - rhs_a2t) / scale);

        if (r > 0) {
            Mat<double> rec = a * c.Tr[r - 1];
            double mag = 1.0 + max_magnitude(rec) + std::abs(S[r]);
            for (int i = 0; i < n; ++i) {
                rec(i, i) += sgn(r) * S[r];
            }
            r_rec = std::max(r_rec, max_magnitude(rec - t) / mag);
        }
    }
    double ch = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
            row += std::abs(c.Tr[n](i, j));
        }
        ch = std::max(ch, row);
    }
    out.add(prefix + "trace_T", "tr T_r = (-1)^r (dim - r) S_r", point, r_tr, tol.relative);
    out.add(prefix + "trace_AT", "tr(A T_r) = (-1)^r (r+1) S_{r+1}", point, r_at, tol.relative);
    out.add(prefix + "trace_A2T", "tr(A^2 T_r) = (-1)^{r+1} (-S_1 S_{r+1} + (r+2) S_{r+2})", point, r_a2t,
            tol.relative);
    out.add(prefix + "recursion", "T_r = (-1)^r S_r I + A T_{r-1}", point, r_rec, tol.relative);
    out.add(prefix + "cayley_hamilton", "T_dim = 0", point, ch, tol.cayley_hamilton);
    if (has_complex_spectrum(a)) {
        out.info(prefix + "complex_spectrum", point, 1.0, "operator has non-real eigenvalues");
    }
}

bool has_complex_spectrum(const Mat<double> &a, double rel_tol)
{
    const int n = a.rows();
    if (n == 0) {
        return false;
    }
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = a(i, j);
        }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i) {
        if (std::abs(es.eigenvalues()[i].imag()) > rel_tol * scale) {
            return true;
        }
    }
    return false;
}

} // namespace nullgeom
