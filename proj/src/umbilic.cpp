#include "nullgeom/umbilic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nullgeom/newton.hpp"

namespace nullgeom {

namespace {

int sign_pow(int r) { return r % 2 == 0 ? 1 : -1; }

double derive(const TangentField &x, const Jet &f)
{
    double s = 0.0;
    for (std::size_t k = 0; k < x.chart.size(); ++k) {
        s += x.chart[k].value() * f.d(static_cast<int>(k));
    }
    return s;
}

// Pieces needed to differentiate operators on TM at one point.
struct TangentCalculus {
    const FrameData &frame;
    const FormsData &forms;
    int t; // n + 1
    std::vector<Mat<double>> nab;

    TangentCalculus(const FrameData &f, const FormsData &fd) : frame(f), forms(fd), t(fd.n + 1)
    {
        for (const auto &m : fd.nabla) {
            nab.push_back(values(m));
        }
    }

    double weight(int a) const { return a == 0 ? 1.0 : double(frame.eps_i[a - 1]); }

    double g(const Vec<double> &u, const Vec<double> &v) const
    {
        double s = 0.0;
        for (int i = 1; i < t; ++i) {
            s += frame.eps_i[i - 1] * u[i] * v[i];
        }
        return s;
    }

    static Vec<double> unit(int t, int a)
    {
        Vec<double> e(t, 0.0);
        e[a] = 1.0;
        return e;
    }

    // (nabla_{X_a} T)(c, b)
    Mat<double> covd(int a, const Mat<Jet> &T) const
    {
        Mat<double> tv = values(T), r(t, t);
        const Mat<double> &G = nab[a];
        for (int c = 0; c < t; ++c) {
            for (int b = 0; b < t; ++b) {
                double s = derive(frame.X(a), T(c, b));
                for (int d = 0; d < t; ++d) {
                    s += G(c, d) * tv(d, b) - tv(c, d) * G(d, b);
                }
                r(c, b) = s;
            }
        }
        return r;
    }

    Vec<double> div(const Mat<Jet> &T) const
    {
        Vec<double> s(t, 0.0);
        for (int a = 0; a < t; ++a) {
            const Vec<double> col = covd(a, T).col(a);
            for (int c = 0; c < t; ++c) {
                s[c] += weight(a) * col[c];
            }
        }
        return s;
    }

    // bilinear forms given by a matrix M(a, b) = F(X_a, X_b)
    static double form(const Mat<double> &m, const Vec<double> &u, const Vec<double> &v)
    {
        double s = 0.0;
        for (int a = 0; a < m.rows(); ++a) {
            for (int b = 0; b < m.cols(); ++b) {
                s += u[a] * m(a, b) * v[b];
            }
        }
        return s;
    }

    // C(U, PV) with C(j, a) = C(X_a, Z_j)
    double C(const Vec<double> &u, const Vec<double> &v) const
    {
        double s = 0.0;
        for (int j = 0; j + 1 < t; ++j) {
            for (int a = 0; a < t; ++a) {
                s += u[a] * forms.C(j, a).value() * v[j + 1];
            }
        }
        return s;
    }
};

void require_umbilical(const UmbilicFit &fit, double tol, bool screen)
{
    if (!fit.umbilical(tol)) {
        throw NotUmbilical("not totally umbilical: B residual " + format_double(fit.res_B) + ", D residual " +
                           format_double(fit.res_D));
    }
    if (screen && !fit.screen_umbilical(tol)) {
        throw NotUmbilical("screen not totally umbilical: C residual " + format_double(fit.res_C));
    }
}

// Exact multiples alpha, beta with tr T_r = alpha S_r and tr(A T_r) = beta S_{r+1},
// read off diag(1, ..., dim).
std::pair<Rational, Rational> trace_multiples(int dim, int r)
{
    Mat<Rational> a(dim, dim);
    for (int i = 0; i < dim; ++i) {
        a(i, i) = i + 1;
    }
    const NewtonChain<Rational> ch = newton_chain(a);
    const Rational alpha = ch.Tr[r].trace() / ch.S[r];
    const Rational beta = (a * ch.Tr[r]).trace() / ch.S[r + 1];
    return {alpha, beta};
}

double form_residual(const OdeForm &x, const OdeForm &y)
{
    const Rational diffs[] = {x.dES - y.dES, x.tauS - y.tauS, x.cS - y.cS, x.H1S - y.H1S};
    double worst = 0.0;
    for (const Rational &d : diffs) {
        if (d != 0) {
            const double v = std::abs(static_cast<double>(d));
            worst = std::max(worst, v > 0.0 ? v : 1.0);
        }
    }
    return worst;
}

} // namespace

UmbilicFit umbilicity_fit(const FormsData &forms, const std::vector<int> &eps_i)
{
    const int n = forms.n, t = n + 1;
    UmbilicFit f;
    for (int i = 1; i < t; ++i) {
        f.H1 += eps_i[i - 1] * forms.B(i, i).value() / n;
        f.H2 += eps_i[i - 1] * forms.D(i, i).value() / n;
        f.K += eps_i[i - 1] * forms.C(i - 1, i).value() / n;
    }
    auto g = [&](int a, int b) { return (a == b && a > 0) ? double(eps_i[a - 1]) : 0.0; };
    for (int a = 0; a < t; ++a) {
        for (int b = 0; b < t; ++b) {
            f.res_B = std::max(f.res_B, std::abs(forms.B(a, b).value() - f.H1 * g(a, b)));
            f.res_D = std::max(f.res_D, std::abs(forms.D(a, b).value() - f.H2 * g(a, b)));
        }
    }
    for (int j = 0; j < n; ++j) {
        for (int a = 0; a < t; ++a) {
            f.res_C = std::max(f.res_C, std::abs(forms.C(j, a).value() - f.K * g(a, j + 1)));
        }
    }
    return f;
}

void check_umbilic_consequences(const FormsData &forms, int eps, const UmbilicFit &fit, const UmbilicTolerances &tol,
                                const std::vector<double> &point, Report &out)
{
    require_umbilical(fit, tol.fit, false);
    const int t = forms.n + 1;
    double r_ae = 0.0, r_aw = 0.0, r_de = 0.0;
    for (int a = 0; a < t; ++a) {
        for (int b = 1; b < t; ++b) {
            const double p = (a == b) ? 1.0 : 0.0;
            r_ae = std::max(r_ae, std::abs(forms.A_E(b, a).value() - fit.H1 * p));
            r_aw = std::max(r_aw, std::abs(forms.A_W(b, a).value() - eps * fit.H2 * p));
        }
        r_de = std::max(r_de, std::abs(forms.D(a, 0).value()));
    }
    out.add("umbilic/A_E", "A*_E = H1 P", point, r_ae, tol.consequences);
    out.add("umbilic/A_W", "P A_W = eps H2 P", point, r_aw, tol.consequences);
    out.add("umbilic/D_E", "D(X, E) = 0", point, r_de, tol.consequences);
    out.add("umbilic/rho_E", "rho(E) = 0", point, std::abs(forms.rho[0].value()), tol.consequences);
    out.info("umbilic/H1", point, fit.H1);
    out.info("umbilic/H2", point, fit.H2);
    out.info("umbilic/totally_geodesic", point, std::max(std::abs(fit.H1), std::abs(fit.H2)),
             "zero when B and D vanish");

    if (!fit.screen_umbilical(tol.fit)) {
        out.info("umbilic/screen_fit_residual", point, fit.res_C, "screen not totally umbilical");
        return;
    }
    double r_an = 0.0, r_ce = 0.0;
    for (int a = 0; a < t; ++a) {
        for (int b = 0; b < t; ++b) {
            const double p = (a == b && a > 0) ? 1.0 : 0.0;
            r_an = std::max(r_an, std::abs(forms.A_N(b, a).value() - fit.K * p));
        }
    }
    for (int j = 0; j < forms.n; ++j) {
        r_ce = std::max(r_ce, std::abs(forms.C(j, 0).value()));
    }
    out.add("umbilic/A_N", "A_N = K P", point, r_an, tol.consequences);
    out.add("umbilic/C_E", "C(E, PX) = 0", point, r_ce, tol.consequences);
    out.info("umbilic/K", point, fit.K);
}

OdeResidual ode_residual(double dE_S, double S_r1, double S_r, double tauE, double H1, double c, int n, int r)
{
    const double base = dE_S - tauE * (r + 1) * S_r1;
    const double curv = c * sign_pow(r) * (n + 1 - r) * S_r;
    const double mean = H1 * (r + 1) * S_r1;
    return {base - curv - mean, base - curv, base - mean};
}

OdeForm stated_ode_form(int n, int r)
{
    return {1, Rational(-(r + 1)), Rational(-sign_pow(r) * (n + 1 - r)), Rational(-(r + 1))};
}

OdeForm substituted_ode_form(int n, int r)
{
    const auto [alpha, beta] = trace_multiples(n + 1, r);
    const Rational s = sign_pow(r);
    return {1, Rational(-s * beta), Rational(-s * alpha), Rational(-s * beta)};
}

void check_substitution(int n, Report &out)
{
    for (int r = 0; r <= n; ++r) {
        out.add("umbilic/substitution", "stated equation = traces substituted", {double(n), double(r)},
                form_residual(stated_ode_form(n, r), substituted_ode_form(n, r)), 0.0);
    }
}

void check_ode(const FrameData &frame, const FormsData &forms, const UmbilicFit &fit, double c,
               const UmbilicTolerances &tol, Report &out)
{
    require_umbilical(fit, tol.fit, true);
    const int n = forms.n;
    const NewtonChain<Jet> ch = newton_chain(forms.A_N);
    const double tauE = forms.tau[0].value();
    for (int r = 0; r <= n; ++r) {
        const double dES = derive(frame.E, ch.S[r + 1]);
        const double s1 = ch.S[r + 1].value(), s0 = ch.S[r].value();
        const OdeResidual res = ode_residual(dES, s1, s0, tauE, fit.H1, c, n, r);
        const double scale = 1.0 + std::max({std::abs(dES), std::abs(tauE * s1), std::abs(c * s0),
                                             std::abs(fit.H1 * s1)}) * (n + 1);
        const std::string suffix = "/r" + std::to_string(r);
        out.add("umbilic/ode" + suffix, "E(S_{r+1}) - tau(E)(r+1)S_{r+1} - c(-1)^r(n+1-r)S_r = H1(r+1)S_{r+1}",
                frame.u, std::abs(res.theorem), tol.ode * scale);
        if (std::abs(fit.H1) <= tol.fit) {
            out.add("umbilic/ode_metric" + suffix, "metric induced connection", frame.u, std::abs(res.metric_case),
                    tol.ode * scale);
        }
        if (c == 0.0) {
            out.add("umbilic/ode_flat" + suffix, "flat ambient", frame.u, std::abs(res.flat_case), tol.ode * scale);
        }
    }
}

void check_proposition_ingredients(const FrameData &frame, const FormsData &forms, double c,
                                   const UmbilicTolerances &tol, Report &out)
{
    const TangentCalculus tc(frame, forms);
    const int t = tc.t, n = forms.n;
    const NewtonChain<Jet> ch = newton_chain(forms.A_N);
    const Mat<double> A = values(forms.A_N), Bm = values(forms.B), Dm = values(forms.D);
    const Vec<double> tau = values(forms.tau), rho = values(forms.rho);
    std::vector<Mat<double>> dA;
    for (int a = 0; a < t; ++a) {
        dA.push_back(tc.covd(a, forms.A_N));
    }
    auto e = [&](int a) { return TangentCalculus::unit(t, a); };
    const double eps = frame.eps;

    for (int r = 1; r <= n + 1; ++r) {
        const Mat<double> Tp = values(ch.Tr[r - 1]);
        const Vec<double> divT = tc.div(ch.Tr[r]), divTp = tc.div(ch.Tr[r - 1]);
        double r_div = 0.0, r_b = 0.0, scale = 1.0;
        for (int b = 0; b < t; ++b) {
            const Vec<double> xb = e(b);
            double rhs = (b == 0) ? 0.0 : sign_pow(r) * derive(frame.X(b), ch.S[r]);
            rhs += tc.g(dA[0] * (Tp * e(0)), xb);
            rhs += tc.g(divTp, A * xb);
            for (int i = 1; i < t; ++i) {
                rhs += tc.weight(i) * tc.g(dA[i] * (Tp * e(i)), xb);
            }
            const double lhs = tc.g(divT, xb);
            r_div = std::max(r_div, std::abs(lhs - rhs));
            scale = std::max(scale, std::abs(lhs));

            for (int i = 1; i < t; ++i) {
                const Vec<double> tz = Tp * e(i);
                const double l = tc.g(dA[i] * tz, xb);
                const double rr = tc.g(tz, dA[i] * xb) - (b == 0 ? 1.0 : 0.0) * TangentCalculus::form(Bm, e(i), A * tz);
                r_b = std::max(r_b, std::abs(l - rr));
            }
        }
        const std::string suffix = "/r" + std::to_string(r);
        out.add("umbilic/div_recursion" + suffix, "g(div T_r, X) recursion", frame.u, r_div, tol.proposition * scale);
        out.add("umbilic/B_term" + suffix, "g((nabla_Z A)TZ, X) = g(TZ, (nabla_Z A)X) - lambda(X) B(Z, A TZ)", frame.u,
                r_b, tol.proposition * scale);

        // Codazzi-type identity specialized to PZ = T Z_i, both brace signs.
        double plus = 0.0, minus = 0.0;
        for (int i = 1; i < t; ++i) {
            const Vec<double> zi = e(i), tz = Tp * zi;
            for (int b = 0; b < t; ++b) {
                const Vec<double> xb = e(b);
                const double lhs = tc.g(tz, dA[i] * xb);
                const double base = -c * (b == 0 ? 1.0 : 0.0) * tc.g(zi, tz) + tc.g(dA[b] * zi, tz) -
                                    tau[b] * tc.C(xb, tz) + eps * tau[i] * tc.C(zi, tz);
                const double brace =
                    rho[b] * TangentCalculus::form(Dm, zi, tz) - rho[i] * TangentCalculus::form(Dm, xb, tz);
                plus = std::max(plus, std::abs(lhs - base - brace));
                minus = std::max(minus, std::abs(lhs - base + brace));
            }
        }
        out.info("umbilic/newton_codazzi_plus" + suffix, frame.u, plus);
        out.info("umbilic/newton_codazzi_minus" + suffix, frame.u, minus);
    }

    // N-component of the flat or constant-curvature Codazzi equation.
    double plus = 0.0, minus = 0.0;
    for (int a = 0; a < t; ++a) {
        for (int b = 0; b < t; ++b) {
            for (int k = 1; k < t; ++k) {
                const Vec<double> xa = e(a), xb = e(b), zk = e(k);
                const double base = tc.g(dA[a] * xb, zk) - tc.g(dA[b] * xa, zk) + tau[b] * tc.C(xa, zk) -
                                    eps * tau[a] * tc.C(xb, zk);
                const double curv = c * (tc.g(xb, zk) * (a == 0 ? 1.0 : 0.0) - tc.g(xa, zk) * (b == 0 ? 1.0 : 0.0));
                const double brace = rho[b] * Dm(a, k) - rho[a] * Dm(b, k);
                plus = std::max(plus, std::abs(base + brace - curv));
                minus = std::max(minus, std::abs(base - brace - curv));
            }
        }
    }
    out.info("umbilic/codazzi_N_plus", frame.u, plus);
    out.info("umbilic/codazzi_N_minus", frame.u, minus);
}

} // namespace nullgeom
