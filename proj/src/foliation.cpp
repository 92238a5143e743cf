#include "nullgeom/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nullgeom/linalg.hpp"

namespace nullgeom {

namespace {

Vec<Jet> zeros(int d)
{
    return Vec<Jet>(d, Jet(0.0));
}

Vec<Jet> extend(const Vec<Jet> &v, int vars)
{
    Vec<Jet> r = v;
    r.resize(vars, Jet(0.0));
    return r;
}

std::vector<Jet> chart_args(const std::vector<double> &at, int chart)
{
    std::vector<Jet> args;
    for (int i = 0; i < chart; ++i) {
        args.push_back(Jet::variable(at, i));
    }
    return args;
}

double sign_pow(int r)
{
    return r % 2 == 0 ? 1.0 : -1.0;
}

Vec<Jet> apply_op(const Mat<Jet> &T, const Vec<Jet> &v)
{
    return T * v;
}

double leaf_inner(const FoliationPoint &fp, const Vec<double> &a, const Vec<double> &b)
{
    double s = 0.0;
    for (int j = 0; j < fp.n; ++j) {
        s += fp.eps[j] * a[j] * b[j];
    }
    return s;
}

} // namespace

LCoeffs LCoeffs::from_strings(const std::string &a, const std::string &b, const std::string &c,
                              const std::vector<std::string> &params)
{
    LCoeffs L;
    L.a = Expr::parse(a, params);
    L.b = Expr::parse(b, params);
    L.c = Expr::parse(c, params);
    return L;
}

LCoeffs LCoeffs::scaled(double k) const
{
    LCoeffs L;
    L.a = a.times(k);
    L.b = b.times(k);
    L.c = c.times(k);
    return L;
}

FoliationPoint build_foliation_point(const FrameData &frame, const LCoeffs &L, double t0)
{
    const int chart = frame.n + 1;
    if (frame.vars != chart + 1) {
        throw std::invalid_argument("foliation points need a frame with one extra jet variable");
    }
    FoliationPoint fp;
    fp.n = frame.n;
    fp.vars = frame.vars;
    fp.t_var = chart;
    fp.t0 = t0;
    fp.sig = frame.sig;
    fp.point = frame.u;
    fp.point.push_back(t0);

    const auto args = chart_args(fp.point, chart);
    const Jet a = L.a.eval(args), b = L.b.eval(args), c = L.c.eval(args);
    Vec<Jet> l = scaled(frame.E.amb, a);
    l = axpy(l, b, frame.N);
    l = axpy(l, c, frame.W);
    const Jet ll = inner(frame.sig, l, l);
    fp.norm_LL = ll.value();
    if (!(fp.norm_LL > 0.0)) {
        throw GeometryError("<L, L> = " + std::to_string(fp.norm_LL) + " is not positive");
    }
    fp.What = scaled(l, 1.0 / sqrt(ll));

    fp.What_chart = zeros(fp.vars);
    fp.What_chart[fp.t_var] = Jet::constant(fp.vars, 1.0);
    fp.accel = derive_along(fp.What_chart, fp.What);

    // Leaf tangents at (u, t): d Phi (z_i, 0) = Z_i + t D_{z_i} What.
    const Jet t = Jet::variable(fp.point, fp.t_var);
    std::vector<Vec<Jet>> amb, charts;
    for (int i = 0; i < fp.n; ++i) {
        Vec<Jet> z = extend(frame.Z[i].chart, fp.vars);
        amb.push_back(axpy(frame.Z[i].amb, t, derive_along(z, fp.What)));
        charts.push_back(std::move(z));
    }
    auto gs = gram_schmidt_indefinite(fp.sig, amb);
    fp.e = gs.vectors;
    fp.eps = gs.signs;
    for (int i = 0; i < fp.n; ++i) {
        Vec<Jet> ci = zeros(fp.vars);
        for (int j = 0; j < fp.n; ++j) {
            ci = axpy(ci, gs.coeffs(i, j), charts[j]);
        }
        fp.ec.push_back(std::move(ci));
    }

    fp.A = Mat<Jet>(fp.n, fp.n);
    for (int i = 0; i < fp.n; ++i) {
        const Vec<Jet> dw = derive_along(fp.ec[i], fp.What);
        for (int j = 0; j < fp.n; ++j) {
            fp.A(j, i) = -double(fp.eps[j]) * inner(fp.sig, dw, fp.e[j]);
        }
    }
    fp.chain = newton_chain(fp.A);

    for (int k = 0; k < fp.vars; ++k) {
        Mat<double> g(fp.n, fp.n);
        for (int i = 0; i < fp.n; ++i) {
            Vec<Jet> de(fp.e[i].size());
            for (std::size_t m = 0; m < de.size(); ++m) {
                de[m] = fp.e[i][m].derivative(k);
            }
            for (int j = 0; j < fp.n; ++j) {
                g(j, i) = fp.eps[j] * inner(fp.sig, de, fp.e[j]).value();
            }
        }
        fp.gamma.push_back(std::move(g));
    }
    return fp;
}

Vec<Jet> leaf_components(const FoliationPoint &fp, const Vec<Jet> &v)
{
    Vec<Jet> r(fp.n);
    for (int j = 0; j < fp.n; ++j) {
        r[j] = double(fp.eps[j]) * inner(fp.sig, v, fp.e[j]);
    }
    return r;
}

Vec<Jet> leaf_vector(const FoliationPoint &fp, const Vec<Jet> &comps)
{
    Vec<Jet> r = zeros(static_cast<int>(fp.What.size()));
    for (int j = 0; j < fp.n; ++j) {
        r = axpy(r, comps[j], fp.e[j]);
    }
    return r;
}

Vec<Jet> leaf_derivative(const FoliationPoint &fp, const Vec<Jet> &chart_dir, const Vec<Jet> &field)
{
    return leaf_components(fp, derive_along(chart_dir, field));
}

Mat<double> operator_derivative(const FoliationPoint &fp, const Vec<Jet> &chart_dir, const Mat<Jet> &T)
{
    const int n = fp.n;
    Mat<double> gx(n, n), dt(n, n);
    for (int k = 0; k < fp.vars; ++k) {
        const double xk = chart_dir[k].value();
        if (xk == 0.0) {
            continue;
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                gx(j, i) += xk * fp.gamma[k](j, i);
                dt(j, i) += xk * T(j, i).d(k);
            }
        }
    }
    const Mat<double> tv = values(T);
    return dt + gx * tv - tv * gx;
}

Vec<double> divergence_T(const FoliationPoint &fp, const Mat<Jet> &T)
{
    Vec<double> r(fp.n, 0.0);
    for (int b = 0; b < fp.n; ++b) {
        const Mat<double> d = operator_derivative(fp, fp.ec[b], T);
        for (int j = 0; j < fp.n; ++j) {
            r[j] += fp.eps[b] * d(j, b);
        }
    }
    return r;
}

double divergence(const FoliationPoint &fp, const Vec<Jet> &field, bool with_normal)
{
    double s = 0.0;
    for (int b = 0; b < fp.n; ++b) {
        s += fp.eps[b] * inner(fp.sig, derive_along(fp.ec[b], field), fp.e[b]).value();
    }
    if (with_normal) {
        s += inner(fp.sig, derive_along(fp.What_chart, field), fp.What).value();
    }
    return s;
}

void check_foliation_point(const FoliationPoint &fp, const FrameData &frame, const FormsData &forms,
                           const LCoeffs &L, const FoliationTolerances &tol, Report &out)
{
    const int n = fp.n;
    const auto &p = fp.point;
    out.add("foliation/unit_normal", "<What, What> = 1", p,
            std::abs(inner(fp.sig, fp.What, fp.What).value() - 1.0), tol.unit);

    double normal = 0.0;
    for (int i = 0; i < n; ++i) {
        normal = std::max(normal, std::abs(inner(fp.sig, fp.What, fp.e[i]).value()));
        normal = std::max(normal, std::abs(inner(fp.sig, fp.What, frame.Z[i].amb).value()));
    }
    out.add("foliation/normal_to_leaf", "<What, Z_i> = 0", p, normal, tol.unit);
    out.add("foliation/accel_tangent", "<D_What What, What> = 0", p,
            std::abs(inner(fp.sig, fp.accel, fp.What).value()), tol.unit);

    double sa = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            sa = std::max(sa, std::abs(fp.eps[j] * fp.A(j, i).value() - fp.eps[i] * fp.A(i, j).value()));
        }
    }
    out.add("foliation/self_adjoint", "g(A X, Y) = g(X, A Y)", p, sa, tol.shape);

    if (fp.t0 == 0.0) {
        // A through the shape operators of M versus the projected derivative.
        const auto args = chart_args(fp.point, n + 1);
        const double s = std::sqrt(fp.norm_LL);
        const double a = L.a.eval(args).value(), b = L.b.eval(args).value(), c = L.c.eval(args).value();
        Mat<double> comb(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                comb(j, i) = (a * forms.A_E(j + 1, i + 1).value() + b * forms.A_N(j + 1, i + 1).value() +
                              c * forms.A_W(j + 1, i + 1).value()) /
                             s;
            }
        }
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            const Vec<Jet> dw = derive_along(extend(frame.Z[i].chart, fp.vars), fp.What);
            for (int j = 0; j < n; ++j) {
                const double direct = -inner(fp.sig, dw, frame.Z[j].amb).value();
                res = std::max(res, std::abs(direct - frame.eps_i[j] * comb(j, i)));
            }
        }
        const auto sc = symmetric_functions(comb);
        for (int r = 1; r <= n; ++r) {
            res = std::max(res, std::abs(sc[r] - fp.chain.S[r].value()));
        }
        out.add("foliation/shape_operator", "g(A X, PY) = -<D_X What, PY>, A = (a A*_E + b A_N + c A_W)/|L|", p,
                res, tol.shape);
        out.info("foliation/L_norm_squared", p, fp.norm_LL, "normal scaled by 1/sqrt<L,L>");
    }

    double defect = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec<Jet> dw = derive_along(fp.ec[i], fp.What);
        const Vec<Jet> tang = leaf_vector(fp, leaf_components(fp, dw));
        for (std::size_t m = 0; m < dw.size(); ++m) {
            defect = std::max(defect, std::abs(dw[m].value() - tang[m].value()));
        }
    }
    out.info("foliation/normal_connection_defect", p, defect, "size of the normal part of D_X What");
}

void check_lemma1(const FoliationPoint &fp, const FoliationTolerances &tol, Report &out)
{
    const int n = fp.n;
    auto asym = [&](const Mat<double> &m) {
        double r = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                r = std::max(r, std::abs(fp.eps[j] * m(j, i) - fp.eps[i] * m(i, j)));
            }
        }
        return r;
    };
    double ra = 0.0, rt = 0.0;
    for (int k = 0; k < n; ++k) {
        ra = std::max(ra, asym(operator_derivative(fp, fp.ec[k], fp.A)));
        for (int r = 1; r <= n; ++r) {
            rt = std::max(rt, asym(operator_derivative(fp, fp.ec[k], fp.chain.Tr[r])));
        }
    }
    out.add("lemma1/shape_operator", "g((nabla'_X A) Y, Z) = g(Y, (nabla'_X A) Z)", fp.point, ra, tol.lemma1);
    out.add("lemma1/newton", "g((nabla'_X T_r) Y, Z) = g(Y, (nabla'_X T_r) Z)", fp.point, rt, tol.lemma1);
}

void check_lemma2(const FoliationPoint &fp, const FoliationTolerances &tol, Report &out)
{
    const int n = fp.n;
    auto norm = [](const Vec<double> &v) {
        double m = 0.0;
        for (double x : v) {
            m = std::max(m, std::abs(x));
        }
        return m;
    };
    std::vector<Vec<double>> div;
    for (int r = 0; r <= n; ++r) {
        div.push_back(divergence_T(fp, fp.chain.Tr[r]));
    }
    const Mat<double> a = values(fp.A);
    double rec = 0.0, flat = 0.0;
    for (int r = 1; r <= n; ++r) {
        const Vec<double> ad = a * div[r - 1];
        for (int j = 0; j < n; ++j) {
            rec = std::max(rec, std::abs(div[r][j] - ad[j]));
        }
        flat = std::max(flat, norm(div[r]));
    }
    out.add("lemma2/div_T0", "div'(T_0) = 0", fp.point, norm(div[0]), tol.lemma2);
    out.add("lemma2/recursion", "div'(T_r) = A div'(T_{r-1}) (flat ambient)", fp.point, rec, tol.lemma2);
    out.add("lemma2/div_flat", "div'(T_r) = 0 (flat ambient)", fp.point, flat, tol.lemma2);
}

double lemma3_residual(const FoliationPoint &fp, bool parallel_correction)
{
    const int n = fp.n;
    // F_i = e_i - sum_k (v_k - p_k) sum_j gamma[k](j, i) e_j has nabla' F_i = 0 at p.
    std::vector<Vec<Jet>> f = fp.e, fc = fp.ec;
    if (parallel_correction) {
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < fp.vars; ++k) {
                const Jet dv = Jet::variable(fp.point, k) - fp.point[k];
                for (int j = 0; j < n; ++j) {
                    const double g = fp.gamma[k](j, i);
                    if (g == 0.0) {
                        continue;
                    }
                    f[i] = axpy(f[i], -g * dv, fp.e[j]);
                    fc[i] = axpy(fc[i], -g * dv, fp.ec[j]);
                }
            }
        }
    }
    const Mat<double> a = values(fp.A);
    const Mat<double> a2 = a * a;
    const Vec<double> v = values(leaf_components(fp, fp.accel));
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        const Vec<Jet> dw = derive_along(fc[i], fp.What);
        const Vec<Jet> dv = derive_along(fc[i], fp.accel);
        for (int j = 0; j < n; ++j) {
            const double lhs = inner(fp.sig, dv, f[j]).value();
            // g((nabla'_What A) F_i, F_j) = What(g(A F_i, F_j)) when nabla' F = 0 at p
            const Jet form = -inner(fp.sig, dw, f[j]);
            const double dform = form.d(fp.t_var);
            const double rhs = fp.eps[j] * a2(j, i) - dform + fp.eps[i] * v[i] * fp.eps[j] * v[j];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return worst;
}

void check_lemma3(const FoliationPoint &fp, const FoliationTolerances &tol, Report &out)
{
    out.add("lemma3/parallel_frame",
            "g(nabla'_{Z_i} D_What What, Z_j) = g(A^2 Z_i, Z_j) - g((nabla'_What A) Z_i, Z_j) + g(V, Z_i) g(Z_j, V)",
            fp.point, lemma3_residual(fp, true), tol.lemma3);
    out.info("lemma3/unparallel_frame", fp.point, lemma3_residual(fp, false),
             "same identity in the Gram-Schmidt frame without the parallel correction");
}

void check_theorems(const FoliationPoint &fp, int r_max, const FoliationTolerances &tol, Report &out)
{
    const int n = fp.n;
    const auto &S = fp.chain.S;
    const auto &p = fp.point;
    const Jet s1 = S[1];
    out.add("theorems12/S1_divergence", "S_1 = -div(What)", p, std::abs(s1.value() + divergence(fp, fp.What, true)),
            tol.theorems);

    const Vec<Jet> vc = leaf_components(fp, fp.accel);
    for (int r = 0; r <= std::min(r_max, n); ++r) {
        const std::string tag = "/r" + std::to_string(r);
        const Jet sr1 = s_or_zero(S, r + 1), sr2 = s_or_zero(S, r + 2);
        const double dS = sr1.d(fp.t_var);
        const double sgn = sign_pow(r + 1);
        const double quad = sgn * (-s1.value() * sr1.value() + (r + 2) * sr2.value());

        const double p31_lhs = divergence(fp, scaled(fp.What, sr1), true);
        const double p31_rhs = -s1.value() * sr1.value() + dS;
        out.add("theorems12/P31" + tag, "div(S_{r+1} What) = -S_1 S_{r+1} + What(S_{r+1})", p,
                std::abs(p31_lhs - p31_rhs), tol.theorems);

        const Mat<Jet> &T = fp.chain.Tr[r];
        const Vec<Jet> tv = leaf_vector(fp, apply_op(T, vc));
        const Vec<double> divT = divergence_T(fp, T);
        const Vec<double> vv = values(vc), tvv = values(apply_op(T, vc));
        const double gdiv = leaf_inner(fp, divT, vv);
        const double gvtv = leaf_inner(fp, vv, tvv);

        const double prop_lhs = divergence(fp, tv, false);
        const double prop_rhs = gdiv + sgn * dS + quad + gvtv;
        out.add("theorems12/proposition1" + tag,
                "div'(T_r V) = g(div' T_r, V) + (-1)^{r+1} What(S_{r+1}) + (-1)^{r+1}(-S_1 S_{r+1} + (r+2) S_{r+2}) + "
                "g(V, T_r V)",
                p, std::abs(prop_lhs - prop_rhs), tol.theorems);

        const double t1_lhs = divergence(fp, tv, true);
        const double t1_rhs = gdiv + sgn * dS + quad;
        out.add("theorems12/theorem1" + tag,
                "div(T_r V) = g(div' T_r, V) + (-1)^{r+1} What(S_{r+1}) + (-1)^{r+1}(-S_1 S_{r+1} + (r+2) S_{r+2})", p,
                std::abs(t1_lhs - t1_rhs), tol.theorems);

        const Vec<Jet> field = axpy(tv, sign_pow(r) * sr1, fp.What);
        const double t2_lhs = divergence(fp, field, true);
        const double t2_rhs = gdiv + sgn * (r + 2) * sr2.value();
        out.add("theorems12/theorem2" + tag, "div(T_r V + (-1)^r S_{r+1} What) = g(div' T_r, V) + (-1)^{r+1}(r+2) S_{r+2}",
                p, std::abs(t2_lhs - t2_rhs), tol.theorems);
    }
}

double normal_derivative_fd(const Immersion &imm, const std::vector<double> &u, const LCoeffs &L, int k, double h)
{
    const FrameData frame = build_frame(imm, u, 1);
    const FoliationPoint plus = build_foliation_point(frame, L, h);
    const FoliationPoint minus = build_foliation_point(frame, L, -h);
    return (s_or_zero(plus.chain.S, k).value() - s_or_zero(minus.chain.S, k).value()) / (2 * h);
}

void check_normal_derivative(const Immersion &imm, const LCoeffs &L, const FoliationPoint &fp, int r_max, double h,
                             const FoliationTolerances &tol, Report &out)
{
    const std::vector<double> u(fp.point.begin(), fp.point.begin() + fp.t_var);
    for (int r = 0; r <= std::min(r_max, fp.n); ++r) {
        const double jet = s_or_zero(fp.chain.S, r + 1).d(fp.t_var);
        const double fd = normal_derivative_fd(imm, u, L, r + 1, h);
        out.add("theorems12/normal_derivative_fd/r" + std::to_string(r),
                "What(S_{r+1}) against a central difference along the normal line", fp.point, std::abs(jet - fd),
                tol.fd);
    }
}

} // namespace nullgeom
