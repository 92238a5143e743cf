#include "nullgeom/halflightlike.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace nullgeom {

namespace {

std::string point_string(std::span<const double> u)
{
    std::string s = "(";
    for (std::size_t k = 0; k < u.size(); ++k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%s%.6g", k ? ", " : "", u[k]);
        s += buf;
    }
    return s + ")";
}

Vec<Jet> zeros(int d)
{
    return Vec<Jet>(d, Jet(0.0));
}

double max_abs(const Vec<Jet> &v)
{
    double m = 0.0;
    for (const auto &x : v) {
        m = std::max(m, std::abs(x.value()));
    }
    return m;
}

TangentField combine(const std::vector<TangentField> &fields, const Mat<Jet> &coeffs, int row)
{
    TangentField t{zeros(static_cast<int>(fields[0].amb.size())), zeros(static_cast<int>(fields[0].chart.size()))};
    for (std::size_t j = 0; j < fields.size(); ++j) {
        t.amb = axpy(t.amb, coeffs(row, static_cast<int>(j)), fields[j].amb);
        t.chart = axpy(t.chart, coeffs(row, static_cast<int>(j)), fields[j].chart);
    }
    return t;
}

// Chart vector c with sum_k c_k d_k x = v, from the Euclidean normal equations.
Vec<Jet> chart_coordinates(const std::vector<Vec<Jet>> &dx, const Vec<Jet> &v, int index)
{
    const int k = static_cast<int>(dx.size());
    Mat<Jet> jtj(k, k);
    Vec<Jet> rhs(k);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            jtj(a, b) = euclid_dot(dx[a], dx[b]);
        }
        rhs[a] = euclid_dot(dx[a], v);
    }
    Vec<Jet> c = solve(jtj, rhs);
    Vec<Jet> back = zeros(static_cast<int>(v.size()));
    for (int a = 0; a < k; ++a) {
        back = axpy(back, c[a], dx[a]);
    }
    double res = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        res = std::max(res, std::abs(back[i].value() - v[i].value()));
    }
    if (res > 1e-8 * std::max(1.0, max_abs(v))) {
        throw GeometryError("screen vector " + std::to_string(index) + " is not tangent to the immersion (residual " +
                            std::to_string(res) + ")");
    }
    return c;
}

} // namespace

Immersion Immersion::from_strings(Signature sig, std::vector<std::string> params,
                                  const std::vector<std::string> &components)
{
    Immersion imm;
    imm.sig = std::move(sig);
    imm.params = std::move(params);
    for (const auto &c : components) {
        imm.x.push_back(Expr::parse(c, imm.params));
    }
    return imm;
}

std::vector<Vec<Jet>> FrameData::basis() const
{
    std::vector<Vec<Jet>> b;
    b.push_back(E.amb);
    for (const auto &z : Z) {
        b.push_back(z.amb);
    }
    b.push_back(N);
    b.push_back(W);
    return b;
}

Vec<Jet> derive_along(const Vec<Jet> &chart_dir, const Vec<Jet> &field)
{
    Vec<Jet> r = zeros(static_cast<int>(field.size()));
    for (std::size_t k = 0; k < chart_dir.size(); ++k) {
        for (std::size_t i = 0; i < field.size(); ++i) {
            r[i] += chart_dir[k] * field[i].derivative(static_cast<int>(k));
        }
    }
    return r;
}

FrameData build_frame(const Immersion &imm, std::span<const double> u, int extra_vars)
{
    const int chart = imm.chart_dim();
    const int dim = imm.sig.dim();
    if (static_cast<int>(u.size()) != chart) {
        throw std::invalid_argument("chart point has " + std::to_string(u.size()) + " coordinates, expected " +
                                    std::to_string(chart));
    }
    if (static_cast<int>(imm.x.size()) != dim) {
        throw std::invalid_argument("immersion has " + std::to_string(imm.x.size()) + " components for dimension " +
                                    std::to_string(dim));
    }
    if (dim != chart + 2) {
        throw GeometryError("ambient dimension must exceed the chart dimension by two");
    }

    FrameData f;
    f.sig = imm.sig;
    f.u.assign(u.begin(), u.end());
    f.n = chart - 1;
    f.vars = chart + extra_vars;

    std::vector<double> at(u.begin(), u.end());
    at.resize(f.vars, 0.0);
    std::vector<Jet> args;
    for (int i = 0; i < chart; ++i) {
        args.push_back(Jet::variable(at, i));
    }
    for (const auto &e : imm.x) {
        Jet xi = e.eval(args);
        if (xi.is_constant_only()) {
            xi = Jet::constant(f.vars, xi.value());
        }
        f.x.push_back(std::move(xi));
    }
    for (int k = 0; k < chart; ++k) {
        Vec<Jet> d(dim);
        for (int i = 0; i < dim; ++i) {
            d[i] = f.x[i].derivative(k);
        }
        f.dx.push_back(std::move(d));
    }

    Mat<double> jac(dim, chart);
    for (int k = 0; k < chart; ++k) {
        for (int i = 0; i < dim; ++i) {
            jac(i, k) = f.dx[k][i].value();
        }
    }
    if (!null_space(jac).empty()) {
        throw GeometryError("immersion Jacobian is rank deficient at " + point_string(u));
    }

    // Radical direction, scaled so its first significant axis equals 1.
    auto rad = radical_basis(f.sig, f.dx);
    if (rad.vectors.size() != 1) {
        throw GeometryError("radical has rank " + std::to_string(rad.vectors.size()) + " at " + point_string(u) +
                            "; a half-lightlike immersion needs rank one");
    }
    Vec<Jet> e = rad.vectors[0];
    Vec<Jet> alpha = rad.coefficients[0];
    const double emax = max_abs(e);
    int axis = 0;
    while (std::abs(e[axis].value()) <= 1e-9 * emax) {
        ++axis;
    }
    const Jet inv = 1.0 / e[axis];
    f.E.amb = scaled(e, inv);
    f.E.chart = scaled(alpha, inv);
    f.E.amb[axis] = Jet::constant(f.vars, 1.0);

    // Screen.
    std::vector<TangentField> screen_in;
    if (!imm.screen_override.empty()) {
        if (static_cast<int>(imm.screen_override.size()) != f.n) {
            throw std::invalid_argument("screen override needs " + std::to_string(f.n) + " vectors");
        }
        for (int i = 0; i < f.n; ++i) {
            const auto &exprs = imm.screen_override[i];
            if (static_cast<int>(exprs.size()) != dim) {
                throw std::invalid_argument("screen override vector " + std::to_string(i) + " needs " +
                                            std::to_string(dim) + " components");
            }
            Vec<Jet> v;
            for (const auto &ex : exprs) {
                Jet c = ex.eval(args);
                if (c.is_constant_only()) {
                    c = Jet::constant(f.vars, c.value());
                }
                v.push_back(std::move(c));
            }
            Vec<Jet> c = chart_coordinates(f.dx, v, i);
            screen_in.push_back({std::move(v), std::move(c)});
        }
    } else {
        // Euclidean complement of E inside the tangent span; the chart axis
        // carrying most of E is the dependent one and is dropped.
        int drop = 0;
        for (int k = 1; k < chart; ++k) {
            if (std::abs(f.E.chart[k].value()) > std::abs(f.E.chart[drop].value())) {
                drop = k;
            }
        }
        const Jet ee = euclid_dot(f.E.amb, f.E.amb);
        for (int k = 0; k < chart; ++k) {
            if (k == drop) {
                continue;
            }
            const Jet proj = euclid_dot(f.E.amb, f.dx[k]) / ee;
            Vec<Jet> unit = zeros(chart);
            unit[k] = Jet::constant(f.vars, 1.0);
            screen_in.push_back({axpy(f.dx[k], -proj, f.E.amb), axpy(unit, -proj, f.E.chart)});
        }
    }
    std::vector<Vec<Jet>> amb_in;
    for (const auto &t : screen_in) {
        amb_in.push_back(t.amb);
    }
    auto gs = gram_schmidt_indefinite(f.sig, amb_in);
    for (int i = 0; i < f.n; ++i) {
        TangentField z = combine(screen_in, gs.coeffs, i);
        z.amb = gs.vectors[i];
        f.Z.push_back(std::move(z));
    }
    f.eps_i = gs.signs;
    f.raw_screen = imm.screen_override.empty() ? f.Z : screen_in;

    // Screen transversal: normal to TM and Euclidean-orthogonal to E.
    Mat<Jet> rows(chart + 1, dim);
    for (int k = 0; k < chart; ++k) {
        const Vec<Jet> l = lower(f.sig, f.dx[k]);
        for (int i = 0; i < dim; ++i) {
            rows(k, i) = l[i];
        }
    }
    for (int i = 0; i < dim; ++i) {
        rows(chart, i) = f.E.amb[i];
    }
    auto ns = null_space(rows);
    if (ns.size() != 1) {
        throw GeometryError("screen transversal bundle has rank " + std::to_string(ns.size()) + " at " +
                            point_string(u));
    }
    Vec<Jet> w = ns[0];
    const Jet ww = inner(f.sig, w, w);
    double wscale = 0.0;
    for (const auto &c : w) {
        wscale += c.value() * c.value();
    }
    if (std::abs(ww.value()) <= 1e-10 * wscale) {
        throw GeometryError("screen transversal is null at " + point_string(u));
    }
    f.eps = ww.value() > 0 ? 1 : -1;
    w = scaled(w, 1.0 / sqrt(f.eps > 0 ? ww : -ww));

    std::vector<Vec<Jet>> zamb;
    for (const auto &z : f.Z) {
        zamb.push_back(z.amb);
    }
    f.N = solve_transversal(f.sig, f.E.amb, zamb, w);

    Mat<double> orient(dim, dim);
    for (int k = 0; k < chart; ++k) {
        for (int i = 0; i < dim; ++i) {
            orient(i, k) = f.dx[k][i].value();
        }
    }
    for (int i = 0; i < dim; ++i) {
        orient(i, chart) = w[i].value();
        orient(i, chart + 1) = f.N[i].value();
    }
    if (determinant(orient) * imm.orientation < 0) {
        for (auto &c : w) {
            c = -c;
        }
    }
    f.W = std::move(w);
    return f;
}

BasisExpansion::BasisExpansion(const Signature &sig, std::vector<Vec<Jet>> basis) : sig_(sig), basis_(std::move(basis))
{
    const int k = static_cast<int>(basis_.size());
    Mat<Jet> g(k, k);
    for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
            g(a, b) = inner(sig_, basis_[a], basis_[b]);
            g(b, a) = g(a, b);
        }
    }
    gram_inv_ = inverse(g);
}

Vec<Jet> BasisExpansion::operator()(const Vec<Jet> &v) const
{
    Vec<Jet> rhs;
    for (const auto &b : basis_) {
        rhs.push_back(inner(sig_, b, v));
    }
    return gram_inv_ * rhs;
}

FormsData fundamental_forms(const FrameData &frame)
{
    const int n = frame.n;
    const int t = n + 1;
    const int iN = n + 1, iW = n + 2;
    BasisExpansion expand(frame.sig, frame.basis());

    FormsData fd;
    fd.n = n;
    fd.B = Mat<Jet>(t, t);
    fd.D = Mat<Jet>(t, t);
    fd.C = Mat<Jet>(n, t);
    fd.A_N = Mat<Jet>(t, t);
    fd.A_W = Mat<Jet>(t, t);
    fd.A_E = Mat<Jet>(t, t);
    fd.tau = fd.rho = fd.phi = fd.tau_star = fd.w_self = zeros(t);
    fd.nabla.assign(t, Mat<Jet>(t, t));

    for (int a = 0; a < t; ++a) {
        const Vec<Jet> &dir = frame.X(a).chart;
        for (int b = 0; b < t; ++b) {
            const Vec<Jet> c = expand(derive_along(dir, frame.X(b).amb));
            for (int d = 0; d < t; ++d) {
                fd.nabla[a](d, b) = c[d];
            }
            fd.B(a, b) = c[iN];
            fd.D(a, b) = c[iW];
            if (b > 0) {
                fd.C(b - 1, a) = c[0];
            }
        }
        const Vec<Jet> cn = expand(derive_along(dir, frame.N));
        const Vec<Jet> cw = expand(derive_along(dir, frame.W));
        fd.tau[a] = cn[iN];
        fd.rho[a] = cn[iW];
        fd.phi[a] = cw[iN];
        fd.w_self[a] = cw[iW];
        for (int d = 0; d < t; ++d) {
            fd.A_N(d, a) = -cn[d];
            fd.A_W(d, a) = -cw[d];
        }
        // D_X E = -A*_E X - tau(X) E + B(X,E) N + D(X,E) W, with tau taken
        // from D_X N so that the E-row of A*_E measures the mismatch.
        const Jet &ce0 = fd.nabla[a](0, 0);
        fd.tau_star[a] = -ce0;
        fd.A_E(0, a) = -ce0 - fd.tau[a];
        for (int d = 1; d < t; ++d) {
            fd.A_E(d, a) = -fd.nabla[a](d, 0);
        }
    }
    return fd;
}

Mat<Jet> induced_metric(const FrameData &frame)
{
    const int t = frame.n + 1;
    Mat<Jet> g(t, t);
    for (int a = 0; a < t; ++a) {
        for (int b = 0; b < t; ++b) {
            g(a, b) = inner(frame.sig, frame.X(a).amb, frame.X(b).amb);
        }
    }
    return g;
}

Mat<double> tangent_chart_matrix(const FrameData &frame)
{
    const int t = frame.n + 1;
    Mat<double> q(t, t);
    for (int a = 0; a < t; ++a) {
        for (int k = 0; k < t; ++k) {
            q(k, a) = frame.X(a).chart[k].value();
        }
    }
    return q;
}

void verify_structure(const FormsData &fd, const FrameData &frame, double tol, Report &out)
{
    const int n = frame.n;
    const int t = n + 1;
    const Mat<double> g = values(induced_metric(frame));
    Vec<double> lambda(t);
    for (int a = 0; a < t; ++a) {
        lambda[a] = inner(frame.sig, frame.X(a).amb, frame.N).value();
    }
    const Mat<double> B = values(fd.B), D = values(fd.D), C = values(fd.C);
    const Mat<double> AN = values(fd.A_N), AW = values(fd.A_W), AE = values(fd.A_E);
    const Vec<double> tau = values(fd.tau), rho = values(fd.rho), phi = values(fd.phi);
    const Vec<double> tau_star = values(fd.tau_star);
    const double eps = frame.eps;

    // g(A X_a, X_b) and gbar(A X_a, N) for an operator matrix.
    auto g_op = [&](const Mat<double> &A, int a, int b) {
        double s = 0.0;
        for (int d = 0; d < t; ++d) {
            s += A(d, a) * g(d, b);
        }
        return s;
    };
    auto n_op = [&](const Mat<double> &A, int a) {
        double s = 0.0;
        for (int d = 0; d < t; ++d) {
            s += A(d, a) * lambda[d];
        }
        return s;
    };

    double r_nabla_g = 0.0;
    for (int a = 0; a < t; ++a) {
        const Mat<double> gam = values(fd.nabla[a]);
        for (int b = 0; b < t; ++b) {
            for (int c = 0; c < t; ++c) {
                const Jet gbc = inner(frame.sig, frame.X(b).amb, frame.X(c).amb);
                double xg = 0.0;
                for (int k = 0; k < static_cast<int>(frame.X(a).chart.size()); ++k) {
                    xg += frame.X(a).chart[k].value() * gbc.d(k);
                }
                double lhs = xg;
                for (int d = 0; d < t; ++d) {
                    lhs -= gam(d, b) * g(d, c) + gam(d, c) * g(b, d);
                }
                const double rhs = B(a, b) * lambda[c] + B(a, c) * lambda[b];
                r_nabla_g = std::max(r_nabla_g, std::abs(lhs - rhs));
            }
        }
    }

    double r_b_rad = 0.0, r_d_phi = 0.0, r_ae = 0.0, r_ae_n = 0.0, r_aw = 0.0, r_an = 0.0, r_an_n = 0.0;
    double r_aw_rho = 0.0, r_tau = 0.0, r_ae_kill = 0.0, r_ae_sym = 0.0;
    for (int a = 0; a < t; ++a) {
        r_b_rad = std::max(r_b_rad, std::abs(B(a, 0)));
        r_d_phi = std::max(r_d_phi, std::abs(D(a, 0) + phi[a]));
        r_ae_n = std::max(r_ae_n, std::abs(n_op(AE, a)));
        r_an_n = std::max(r_an_n, std::abs(n_op(AN, a)));
        r_aw_rho = std::max(r_aw_rho, std::abs(n_op(AW, a) - eps * rho[a]));
        r_tau = std::max(r_tau, std::abs(tau[a] - tau_star[a]));
        r_ae_kill = std::max(r_ae_kill, std::abs(AE(a, 0)));
        for (int b = 0; b < t; ++b) {
            r_ae = std::max(r_ae, std::abs(g_op(AE, a, b) - B(a, b)));
            r_aw = std::max(r_aw, std::abs(g_op(AW, a, b) - eps * D(a, b) - phi[a] * lambda[b]));
            if (b > 0) {
                r_an = std::max(r_an, std::abs(g_op(AN, a, b) - C(b - 1, a)));
            }
            if (a > 0 && b > 0) {
                r_ae_sym = std::max(r_ae_sym, std::abs(g_op(AE, a, b) - g_op(AE, b, a)));
            }
        }
    }

    const auto basis = frame.basis();
    const int k = static_cast<int>(basis.size());
    double r_ortho = 0.0;
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            double expect = 0.0;
            if ((a == 0 && b == n + 1) || (a == n + 1 && b == 0)) {
                expect = 1.0;
            } else if (a == b && a >= 1 && a <= n) {
                expect = frame.eps_i[a - 1];
            } else if (a == b && a == n + 2) {
                expect = eps;
            }
            r_ortho = std::max(r_ortho, std::abs(inner(frame.sig, basis[a], basis[b]).value() - expect));
        }
    }
    const double r_w_unit = std::abs(inner(frame.sig, frame.W, frame.W).value() - eps);

    const auto &p = frame.u;
    out.add("structure/nabla_g", "(nabla_X g)(Y,Z) = B(X,Y) lambda(Z) + B(X,Z) lambda(Y)", p, r_nabla_g, tol);
    out.add("structure/B_radical", "B(X,E) = 0", p, r_b_rad, tol);
    out.add("structure/D_radical_phi", "D(X,E) = -phi(X)", p, r_d_phi, tol);
    out.add("structure/A_E_duality", "g(A*_E X, Y) = B(X,Y)", p, r_ae, tol);
    out.add("structure/A_E_transversal", "gbar(A*_E X, N) = 0", p, r_ae_n, tol);
    out.add("structure/A_W_duality", "g(A_W X, Y) = eps D(X,Y) + phi(X) lambda(Y)", p, r_aw, tol);
    out.add("structure/A_N_duality", "g(A_N X, PY) = C(X,PY)", p, r_an, tol);
    out.add("structure/A_N_transversal", "gbar(A_N X, N) = 0", p, r_an_n, tol);
    out.add("structure/A_W_rho", "gbar(A_W X, N) = eps rho(X)", p, r_aw_rho, tol);
    out.add("structure/tau_consistency", "tau from D_X N equals tau from D_X E", p, r_tau, tol);
    out.add("structure/W_unit", "gbar(W,W) = eps", p, r_w_unit, tol);
    out.add("structure/frame_orthonormality", "quasi-orthonormal frame {E, Z_i, N, W}", p, r_ortho, tol);
    out.add("structure/A_E_self_adjoint", "g(A*_E Z_i, Z_j) = g(Z_i, A*_E Z_j)", p, r_ae_sym, tol);
    out.add("structure/A_E_kills_E", "A*_E E = 0", p, r_ae_kill, tol);
}

Vec<Jet> bracket(const TangentField &a, const TangentField &b)
{
    Vec<Jet> ab = derive_along(a.chart, b.amb);
    const Vec<Jet> ba = derive_along(b.chart, a.amb);
    for (std::size_t i = 0; i < ab.size(); ++i) {
        ab[i] -= ba[i];
    }
    return ab;
}

Vec<double> raw_bracket_coefficients(const FrameData &frame, int i, int j)
{
    std::vector<Vec<Jet>> basis;
    basis.push_back(frame.E.amb);
    for (const auto &r : frame.raw_screen) {
        basis.push_back(r.amb);
    }
    basis.push_back(frame.N);
    basis.push_back(frame.W);
    BasisExpansion expand(frame.sig, basis);
    return values(expand(bracket(frame.raw_screen[i], frame.raw_screen[j])));
}

void screen_integrability(const FrameData &frame, const FormsData &fd, double tol, Report &out)
{
    const int n = frame.n;
    const Mat<double> C = values(fd.C);
    double r_bracket = 0.0, r_c = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vec<Jet> br = bracket(frame.Z[i], frame.Z[j]);
            r_bracket = std::max(r_bracket, std::abs(inner(frame.sig, br, frame.N).value()));
            // C(Z_i, Z_j) vs C(Z_j, Z_i)
            r_c = std::max(r_c, std::abs(C(j, i + 1) - C(i, j + 1)));
        }
    }
    out.add("integrability/bracket_N", "gbar([Z_i, Z_j], N) = 0", frame.u, r_bracket, tol);
    out.add("integrability/C_symmetry", "C(Z_i, Z_j) = C(Z_j, Z_i)", frame.u, r_c, tol);
}

} // namespace nullgeom
