#ifndef NULLGEOM_FOLIATION_HPP
#define NULLGEOM_FOLIATION_HPP

#include <string>
#include <vector>

#include "nullgeom/halflightlike.hpp"
#include "nullgeom/newton.hpp"

namespace nullgeom {

/// L = aE + bN + cW with coefficient functions on the chart.
struct LCoeffs {
    Expr a = Expr::constant(1.0);
    Expr b = Expr::constant(0.5);
    Expr c = Expr::constant(0.0);

    static LCoeffs from_strings(const std::string &a, const std::string &b, const std::string &c,
                                const std::vector<std::string> &params);
    /// Multiplies every coefficient by k.
    LCoeffs scaled(double k) const;
};

/// Leaf geometry at one point of the region swept by the leaves moved along
/// straight lines in the direction of the unit normal:
///     Phi(u, t) = x(u) + t What(u).
/// Jets run over the chart variables followed by t, so What is the
/// coordinate field d/dt and D_What What vanishes identically.
struct FoliationPoint {
    int n = 0;
    int vars = 0;
    int t_var = 0;
    double t0 = 0.0;
    Signature sig;
    std::vector<double> point; // chart point followed by t0

    Vec<Jet> What;        // unit normal, constant along t
    double norm_LL = 0.0; // <L, L> before normalization
    Vec<Jet> accel;       // D_What What

    /// Orthonormal leaf frame: ambient vectors and chart vectors over vars.
    std::vector<Vec<Jet>> e;
    std::vector<Vec<Jet>> ec;
    std::vector<int> eps;
    Vec<Jet> What_chart; // unit vector in t

    /// A e_i = sum_j A(j, i) e_j with g(A X, Y) = -<D_X What, Y>.
    Mat<Jet> A;
    NewtonChain<Jet> chain;
    /// gamma[k](j, i) = eps_j <D_k e_i, e_j>, values at the point.
    std::vector<Mat<double>> gamma;
};

/// The frame must carry exactly one extra jet variable (used for t).
FoliationPoint build_foliation_point(const FrameData &frame, const LCoeffs &L, double t0 = 0.0);

/// Leaf components of nabla'_X Y = tangential part of D_X Y, for an
/// ambient field Y and chart direction X.
Vec<Jet> leaf_derivative(const FoliationPoint &fp, const Vec<Jet> &chart_dir, const Vec<Jet> &field);

/// Leaf components of an ambient vector.
Vec<Jet> leaf_components(const FoliationPoint &fp, const Vec<Jet> &v);

/// Ambient vector with the given leaf components.
Vec<Jet> leaf_vector(const FoliationPoint &fp, const Vec<Jet> &comps);

/// (nabla'_X T) in leaf components; values only.
Mat<double> operator_derivative(const FoliationPoint &fp, const Vec<Jet> &chart_dir, const Mat<Jet> &T);

/// div'(T) = sum_b eps_b (nabla'_{e_b} T) e_b, leaf components.
Vec<double> divergence_T(const FoliationPoint &fp, const Mat<Jet> &T);

/// div of an ambient field over the leaf frame, with the normal appended
/// when `with_normal` is set.
double divergence(const FoliationPoint &fp, const Vec<Jet> &field, bool with_normal);

struct FoliationTolerances {
    double unit = 1e-10;
    double shape = 1e-9;
    double lemma1 = 1e-8;
    double lemma2 = 1e-7;
    double lemma3 = 1e-6;
    double theorems = 1e-6;
    double fd = 1e-5;
};

/// Unit length, normality, tangency of D_What What, self-adjointness of A
/// and the expression of A through the shape operators of M.
void check_foliation_point(const FoliationPoint &fp, const FrameData &frame, const FormsData &forms,
                           const LCoeffs &L, const FoliationTolerances &tol, Report &out);

void check_lemma1(const FoliationPoint &fp, const FoliationTolerances &tol, Report &out);
void check_lemma2(const FoliationPoint &fp, const FoliationTolerances &tol, Report &out);

/// Largest residual of the second-derivative identity over all (i, j).
/// Without the correction the frame is the Gram-Schmidt one, whose
/// connection does not vanish at the point.
double lemma3_residual(const FoliationPoint &fp, bool parallel_correction);
void check_lemma3(const FoliationPoint &fp, const FoliationTolerances &tol, Report &out);

/// Divergence identities for r = 0..r_max.
void check_theorems(const FoliationPoint &fp, int r_max, const FoliationTolerances &tol, Report &out);

/// What(S_{r+1}) by central differences along the normal line, step h.
double normal_derivative_fd(const Immersion &imm, const std::vector<double> &u, const LCoeffs &L, int k, double h);
void check_normal_derivative(const Immersion &imm, const LCoeffs &L, const FoliationPoint &fp, int r_max, double h,
                             const FoliationTolerances &tol, Report &out);

} // namespace nullgeom

#endif
