#include "nullgeom/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include "json.hpp"
#include "nullgeom/foliation.hpp"
#include "nullgeom/newton.hpp"
#include "nullgeom/umbilic.hpp"

namespace nullgeom {

namespace {

using nlohmann::json;

std::string point_text(const std::vector<double> &u)
{
    std::string s = "(";
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += (i ? ", " : "") + format_double(u[i]);
    }
    return s + ")";
}

double scale_for(const Config &cfg, const std::string &suite, double tol_scale)
{
    const auto it = cfg.tolerance_scale.find(suite);
    return tol_scale * (it == cfg.tolerance_scale.end() ? 1.0 : it->second);
}

FoliationTolerances scaled(FoliationTolerances t, double s)
{
    for (double *v : {&t.unit, &t.shape, &t.lemma1, &t.lemma2, &t.lemma3, &t.theorems, &t.fd}) {
        *v *= s;
    }
    return t;
}

bool needs_foliation(const Config &cfg)
{
    return cfg.has("newton") || cfg.has("foliation") || cfg.has("lemma3") || cfg.has("theorems12");
}

// Runs f(i) for i in [0, count) on the pool; the exception of the smallest
// failing index is rethrown.
void parallel_for(int count, int workers, const std::function<void(int)> &f)
{
    std::vector<std::exception_ptr> errors(count);
    std::atomic<int> next{0};
    auto loop = [&] {
        for (int i = next++; i < count; i = next++) {
            try {
                f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < std::min(workers, count); ++w) {
        pool.emplace_back(loop);
    }
    loop();
    for (auto &t : pool) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

json mat_json(const Mat<Jet> &m)
{
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j).value());
        }
        a.push_back(row);
    }
    return a;
}

json vec_json(const Vec<Jet> &v)
{
    json a = json::array();
    for (const auto &x : v) {
        a.push_back(x.value());
    }
    return a;
}

json analyze_point(const Config &cfg, const std::vector<double> &u)
{
    const FrameData frame = build_frame(cfg.immersion, u, 1);
    const FormsData forms = fundamental_forms(frame);
    json p;
    p["point"] = u;
    p["E"] = vec_json(frame.E.amb);
    json z = json::array();
    for (const auto &zi : frame.Z) {
        z.push_back(vec_json(zi.amb));
    }
    p["Z"] = z;
    p["N"] = vec_json(frame.N);
    p["W"] = vec_json(frame.W);
    p["eps"] = frame.eps;
    p["eps_i"] = frame.eps_i;
    p["B"] = mat_json(forms.B);
    p["D"] = mat_json(forms.D);
    p["C"] = mat_json(forms.C);
    p["tau"] = vec_json(forms.tau);
    p["rho"] = vec_json(forms.rho);
    p["phi"] = vec_json(forms.phi);
    p["A_N"] = mat_json(forms.A_N);
    p["A_W"] = mat_json(forms.A_W);
    p["A_E"] = mat_json(forms.A_E);
    const UmbilicFit fit = umbilicity_fit(forms, frame.eps_i);
    p["umbilicity"] = {{"H1", fit.H1}, {"H2", fit.H2}, {"K", fit.K},
                       {"residual_B", fit.res_B}, {"residual_D", fit.res_D}, {"residual_C", fit.res_C}};
    const FoliationPoint fp = build_foliation_point(frame, cfg.L);
    p["What"] = vec_json(fp.What);
    p["A_What"] = mat_json(fp.A);
    p["S_What"] = vec_json(fp.chain.S);
    return p;
}

} // namespace

PointError::PointError(std::vector<double> point, const std::string &what)
    : std::runtime_error("at chart point " + point_text(point) + ": " + what), point_(std::move(point))
{
}

int worker_count(int requested)
{
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("NULLGEOM_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    return 1;
}

Report verify_point(const Config &cfg, const std::vector<double> &u, double tol_scale)
{
    Report rep;
    try {
        const FrameData frame = build_frame(cfg.immersion, u, needs_foliation(cfg) ? 1 : 0);
        const FormsData forms = fundamental_forms(frame);
        if (cfg.has("structure")) {
            verify_structure(forms, frame, 1e-8 * scale_for(cfg, "structure", tol_scale), rep);
        }
        if (cfg.has("integrability")) {
            screen_integrability(frame, forms, 1e-9 * scale_for(cfg, "integrability", tol_scale), rep);
        }
        if (needs_foliation(cfg)) {
            const FoliationPoint fp = build_foliation_point(frame, cfg.L);
            if (cfg.has("newton")) {
                const double s = scale_for(cfg, "newton", tol_scale);
                NewtonTolerances nt;
                nt.relative *= s;
                nt.cayley_hamilton *= s;
                const Mat<double> an = values(forms.A_N), aw = values(fp.A);
                verify_trace_identities(newton_chain(an), an, nt, "newton/A_N/", u, rep);
                verify_trace_identities(newton_chain(aw), aw, nt, "newton/A_What/", u, rep);
            }
            if (cfg.has("foliation")) {
                const FoliationTolerances t = scaled({}, scale_for(cfg, "foliation", tol_scale));
                check_foliation_point(fp, frame, forms, cfg.L, t, rep);
                check_lemma1(fp, t, rep);
                check_lemma2(fp, t, rep);
            }
            if (cfg.has("lemma3")) {
                check_lemma3(fp, scaled({}, scale_for(cfg, "lemma3", tol_scale)), rep);
            }
            if (cfg.has("theorems12")) {
                const FoliationTolerances t = scaled({}, scale_for(cfg, "theorems12", tol_scale));
                check_theorems(fp, 2, t, rep);
                check_normal_derivative(cfg.immersion, cfg.L, fp, 2, 1e-4, t, rep);
            }
        }
        if (cfg.has("umbilic")) {
            const double s = scale_for(cfg, "umbilic", tol_scale);
            UmbilicTolerances t;
            t.consequences *= s;
            t.ode *= s;
            t.proposition *= s;
            const UmbilicFit fit = umbilicity_fit(forms, frame.eps_i);
            rep.info("umbilic/fit_residual_B", u, fit.res_B);
            rep.info("umbilic/fit_residual_D", u, fit.res_D);
            rep.info("umbilic/fit_residual_C", u, fit.res_C);
            if (fit.umbilical(t.fit)) {
                check_umbilic_consequences(forms, frame.eps, fit, t, u, rep);
                if (fit.screen_umbilical(t.fit)) {
                    check_ode(frame, forms, fit, static_cast<double>(cfg.c_curvature), t, rep);
                    if (cfg.c_curvature == 0) {
                        check_proposition_ingredients(frame, forms, 0.0, t, rep);
                    }
                }
            }
        }
    } catch (const GeometryError &e) {
        throw PointError(u, e.what());
    } catch (const DomainError &e) {
        throw PointError(u, e.what());
    }
    return rep;
}

Report verify_global(const Config &cfg)
{
    Report rep;
    if (cfg.has("spaceform")) {
        std::vector<Rational> cs = {-2, -1, 0, 1, 2, 3};
        if (std::find(cs.begin(), cs.end(), cfg.c_curvature) == cs.end()) {
            cs.push_back(cfg.c_curvature);
        }
        for (int n = 2; n <= 24; n += 2) {
            for (const Rational &c : cs) {
                for (int V : {1, 7}) {
                    closed_form_check(recurrence_table(n, c, V), "spaceform", rep);
                    volume_consistency(n, c, V, rep);
                    einstein_checks(n, c * n, V, rep);
                }
            }
        }
    }
    if (cfg.has("umbilic")) {
        check_substitution(cfg.immersion.screen_dim(), rep);
    }
    return rep;
}

Report verify(const Config &cfg, const RunOptions &opt)
{
    const auto pts = sample_points(cfg);
    std::vector<Report> parts(pts.size());
    parallel_for(static_cast<int>(pts.size()), worker_count(opt.workers),
                 [&](int i) { parts[i] = verify_point(cfg, pts[i], opt.tol_scale); });
    parts.push_back(verify_global(cfg));
    return Report::merge(parts);
}

std::string analyze(const Config &cfg, const RunOptions &opt)
{
    const auto pts = sample_points(cfg);
    std::vector<json> out(pts.size());
    parallel_for(static_cast<int>(pts.size()), worker_count(opt.workers), [&](int i) {
        try {
            out[i] = analyze_point(cfg, pts[i]);
        } catch (const GeometryError &e) {
            throw PointError(pts[i], e.what());
        } catch (const DomainError &e) {
            throw PointError(pts[i], e.what());
        }
    });
    json doc = {{"params", cfg.immersion.params}, {"points", out}};
    return doc.dump(2) + "\n";
}

void write_file_atomic(const std::string &path, const std::string &content)
{
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        }
        f << content;
        f.flush();
        if (!f) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::filesystem::rename(tmp, target);
}

} // namespace nullgeom
