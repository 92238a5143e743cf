#ifndef NULLGEOM_HALFLIGHTLIKE_HPP
#define NULLGEOM_HALFLIGHTLIKE_HPP

#include <span>
#include <string>
#include <vector>

#include "nullgeom/expr.hpp"
#include "nullgeom/report.hpp"
#include "nullgeom/semimetric.hpp"

namespace nullgeom {

/// Parametric codimension-two immersion u -> x(u) into flat R^dim.
struct Immersion {
    Signature sig;
    std::vector<std::string> params;
    std::vector<Expr> x;
    /// Optional screen vectors given in ambient components (n vectors).
    std::vector<std::vector<Expr>> screen_override;
    /// Sign fixing W: det[d_1 x, ..., d_{n+1} x, W, N] has this sign.
    int orientation = 1;

    int chart_dim() const noexcept { return static_cast<int>(params.size()); }
    int screen_dim() const noexcept { return chart_dim() - 1; }

    static Immersion from_strings(Signature sig, std::vector<std::string> params,
                                  const std::vector<std::string> &components);
};

/// Tangent vector field known both in ambient components and as a chart
/// vector (amb = sum_k chart_k d_k x).
struct TangentField {
    Vec<Jet> amb;
    Vec<Jet> chart;
};

struct FrameData {
    Signature sig;
    std::vector<double> u;
    int n = 0;        // screen dimension
    int vars = 0;     // jet variables (chart dimension plus extras)
    Vec<Jet> x;
    std::vector<Vec<Jet>> dx;          // d_k x, k < n+1
    TangentField E;
    std::vector<TangentField> Z;       // orthonormal screen frame
    std::vector<int> eps_i;
    std::vector<TangentField> raw_screen; // override vectors, or Z when none
    Vec<Jet> N, W;
    int eps = 1;

    /// Tangent basis X_0 = E, X_i = Z_i.
    const TangentField &X(int a) const { return a == 0 ? E : Z[a - 1]; }
    /// Quasi-orthonormal frame E, Z_1..Z_n, N, W.
    std::vector<Vec<Jet>> basis() const;
};

/// Builds the quasi-orthonormal frame at chart point u. `extra_vars` adds
/// jet variables beyond the chart (unused by the immersion itself).
FrameData build_frame(const Immersion &imm, std::span<const double> u, int extra_vars = 0);

/// D_X V for a field V given as jets and X given by its chart vector.
Vec<Jet> derive_along(const Vec<Jet> &chart_dir, const Vec<Jet> &field);

/// Coefficients of ambient vectors in a nondegenerate basis, via one
/// inverted Gram matrix.
class BasisExpansion {
public:
    BasisExpansion(const Signature &sig, std::vector<Vec<Jet>> basis);
    Vec<Jet> operator()(const Vec<Jet> &v) const;
    const std::vector<Vec<Jet>> &basis() const noexcept { return basis_; }

private:
    Signature sig_;
    std::vector<Vec<Jet>> basis_;
    Mat<Jet> gram_inv_;
};

/// Gauss-Weingarten data in the tangent basis {E, Z_1..Z_n}. Operators act
/// on columns: A X_a = sum_b A(b, a) X_b.
struct FormsData {
    int n = 0;
    Mat<Jet> B, D;                 // B(a, b) = B(X_a, X_b)
    Mat<Jet> C;                    // C(j, a) = C(X_a, Z_j)
    Vec<Jet> tau, rho, phi;        // from D_X N and D_X W
    Vec<Jet> tau_star;             // minus the E-component of D_X E
    Vec<Jet> w_self;               // W-component of D_X W
    Mat<Jet> A_N, A_W, A_E;        // shape operators
    std::vector<Mat<Jet>> nabla;   // nabla[a](c, b): X_c component of nabla_{X_a} X_b
};

FormsData fundamental_forms(const FrameData &frame);

/// Residuals of the structure relations at the frame's point.
void verify_structure(const FormsData &forms, const FrameData &frame, double tol, Report &out);

/// Lie bracket [R_i, R_j] of two tangent fields (ambient components).
Vec<Jet> bracket(const TangentField &a, const TangentField &b);

/// Bracket of raw screen vectors i, j expanded in E, R_1..R_n, N, W.
Vec<double> raw_bracket_coefficients(const FrameData &frame, int i, int j);

void screen_integrability(const FrameData &frame, const FormsData &forms, double tol, Report &out);

/// Induced metric g(X_a, X_b) = diag(0, eps_1, ..., eps_n) as computed.
Mat<Jet> induced_metric(const FrameData &frame);

/// Chart components of the tangent basis: column a is the chart vector of X_a.
Mat<double> tangent_chart_matrix(const FrameData &frame);

} // namespace nullgeom

#endif
