#ifndef NULLGEOM_UMBILIC_HPP
#define NULLGEOM_UMBILIC_HPP

#include <stdexcept>
#include <vector>

#include "nullgeom/halflightlike.hpp"
#include "nullgeom/spaceform.hpp"

namespace nullgeom {

/// B = H1 g, D = H2 g and C(X, PY) = K g(X, PY), fitted on the screen
/// block; residuals are the largest deviations over the whole tangent basis.
struct UmbilicFit {
    double H1 = 0.0, H2 = 0.0, K = 0.0;
    double res_B = 0.0, res_D = 0.0, res_C = 0.0;

    bool umbilical(double tol) const { return res_B <= tol && res_D <= tol; }
    bool screen_umbilical(double tol) const { return res_C <= tol; }
};

UmbilicFit umbilicity_fit(const FormsData &forms, const std::vector<int> &eps_i);

class NotUmbilical : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct UmbilicTolerances {
    double fit = 1e-8;
    double consequences = 1e-8;
    double ode = 1e-9;
    double proposition = 1e-6;
};

/// A*_E = H1 P, P A_W = eps H2 P, D(X, E) = 0, rho(E) = 0 and, when the
/// screen fits too, A_N = K P and C(E, PX) = 0. Throws NotUmbilical when
/// the fit residuals exceed the tolerance.
void check_umbilic_consequences(const FormsData &forms, int eps, const UmbilicFit &fit, const UmbilicTolerances &tol,
                                const std::vector<double> &point, Report &out);

/// Left minus right of
///     E(S_{r+1}) - tau(E)(r+1) S_{r+1} - c (-1)^r (n+1-r) S_r = H1 (r+1) S_{r+1}
/// and of its two specializations: H1 = 0 (metric connection) and c = 0.
struct OdeResidual {
    double theorem = 0.0;
    double metric_case = 0.0;
    double flat_case = 0.0;
};

OdeResidual ode_residual(double dE_S, double S_r1, double S_r, double tauE, double H1, double c, int n, int r);

/// Coefficients of E(S_{r+1}), tau(E) S_{r+1}, c S_r and H1 S_{r+1} in
/// left minus right.
struct OdeForm {
    Rational dES, tauS, cS, H1S;
    bool operator==(const OdeForm &) const = default;
};

/// The equation as stated.
OdeForm stated_ode_form(int n, int r);

/// E(S_{r+1}) - (-1)^r tau(E) tr(A T_r) - c (-1)^r tr(T_r) = (-1)^r H1 tr(A T_r)
/// with the traces replaced by multiples of S_r, S_{r+1}; the multiples are
/// read off exact Newton transformations of dimension n+1.
OdeForm substituted_ode_form(int n, int r);

/// One row per r = 0..n comparing the two forms exactly.
void check_substitution(int n, Report &out);

/// The differential equation with S_r of A_N, E(S_{r+1}) from jets and
/// tau(E), H1 from the frame. Specialized rows appear when their hypotheses
/// (H1 = 0, respectively c = 0) hold.
void check_ode(const FrameData &frame, const FormsData &forms, const UmbilicFit &fit, double c,
               const UmbilicTolerances &tol, Report &out);

/// The divergence recursion for T_r of A_N and the B-term identity, with
/// div(T) = (nabla_E T) E + sum_i eps_i (nabla_{Z_i} T) Z_i. The two
/// readings of the N-component Codazzi identity and of its specialization
/// are reported as info.
void check_proposition_ingredients(const FrameData &frame, const FormsData &forms, double c,
                                   const UmbilicTolerances &tol, Report &out);

} // namespace nullgeom

#endif
