#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "maxlab/geometry.hpp"
#include "maxlab/linalg.hpp"

namespace maxlab::fields {

// ---------------------------------------------------------------------------
// Field types. Closed-form evaluators with analytic derivative oracles where
// available; central finite differences of step fd_step otherwise.
// Jacobian convention throughout: jac(i, j) = d_j u_i.

struct VectorField {
    std::function<CVec3(Vec3)> evaluate;
    std::function<CMat3(Vec3)> jac;  // optional oracle
    double fd_step = 1e-5;
    std::string name = "custom";

    CVec3 operator()(Vec3 x) const { return evaluate(x); }
    CMat3 jacobian(Vec3 x) const;
    bool has_jacobian_oracle() const { return static_cast<bool>(jac); }
};

CMat3 fd_jacobian(const VectorField& u, Vec3 x, double h);

struct ScalarField {
    std::function<Complex(Vec3)> evaluate;
    std::function<CVec3(Vec3)> grad;  // optional oracle
    double fd_step = 1e-5;
    std::string name = "custom";

    Complex operator()(Vec3 x) const { return evaluate(x); }
    CVec3 gradient(Vec3 x) const;
};

// Real symmetric matrix coefficient with spectral bounds (the epsilon / mu of
// the problem class).
struct CoefficientField {
    std::function<Mat3(Vec3)> evaluate;
    std::function<std::array<Mat3, 3>(Vec3)> deriv;  // optional: d_i s
    double beta0 = 1.0;
    double beta1 = 1.0;
    double fd_step = 1e-5;
    std::string name = "identity";

    Mat3 operator()(Vec3 x) const { return evaluate(x); }
    std::array<Mat3, 3> derivative(Vec3 x) const;
    bool constant = false;  // derivative identically zero
};

// Checks beta0 I <= s(x) <= beta1 I at every volume node by eigenvalue
// computation; returns the worst violation (negative = bound violated).
double coefficient_bounds_margin(const CoefficientField& s, const geometry::DomainPatch& patch);

// Radial cutoff: 1 on |x - center| <= inner, 0 outside outer, quintic
// smoothstep transition in between.
struct CutoffField {
    Vec3 center;
    double inner = 0.5;
    double outer = 1.0;

    double value(Vec3 x) const;
    Vec3 gradient(Vec3 x) const;
};

// ---------------------------------------------------------------------------
// Pointwise differential operators

CVec3 rot(const VectorField& u, Vec3 x);
CVec3 rot_from_jacobian(const CMat3& j);
Complex divergence(const VectorField& u, Vec3 x);
Complex div_weighted(const CoefficientField& s, const VectorField& u, Vec3 x);
CVec3 grad(const ScalarField& f, Vec3 x);

// ---------------------------------------------------------------------------
// Field constructors

// (s u)(x) with jacobian d_j (s_ik u_k) = (d_j s_ik) u_k + s_ik d_j u_k.
VectorField apply_coefficient(const CoefficientField& s, const VectorField& u);

// chi * u with analytic product-rule jacobian.
VectorField localized(const VectorField& u, const CutoffField& chi);
ScalarField localized(const ScalarField& f, const CutoffField& chi);

// With N(x) = (d1 phi(x'), d2 phi(x'), -1) extended constant in x3:
//  - tangential-zero output: <g,N> N / |N|^2, parallel to the normal, so the
//    tangential trace vanishes on the graph;
//  - normal-zero output: g - (<s g, N> / |N|^2) s^{-1} N, which satisfies
//    <s w, N> = 0 identically.
VectorField tangential_zero_field(const VectorField& g, const geometry::GraphFunction& phi);
VectorField normal_zero_field(const VectorField& g, const CoefficientField& s,
                              const geometry::GraphFunction& phi);

// Largest boundary-condition residual over surface nodes (normalized by the
// field scale): max |u_tan| for the tangential condition, max |<s u, nu>| for
// the weighted normal condition.
double tangential_trace_residual(const VectorField& u, const geometry::DomainPatch& patch);
double normal_trace_residual(const VectorField& u, const CoefficientField& s,
                             const geometry::DomainPatch& patch);

// ---------------------------------------------------------------------------
// Quadrature functionals

double volume_integral(const geometry::DomainPatch& patch,
                       const std::function<double(Vec3)>& f);
Complex volume_integral_c(const geometry::DomainPatch& patch,
                          const std::function<Complex(Vec3)>& f);
// Surface integral over the graph part of the boundary, dS measure.
double surface_integral(const geometry::DomainPatch& patch,
                        const std::function<double(const geometry::SurfaceNode&)>& f);
Complex surface_integral_c(const geometry::DomainPatch& patch,
                           const std::function<Complex(const geometry::SurfaceNode&)>& f);

// F-norm: sqrt( |rot u|^2 + |div(su)|^2 + <su,u> integrated ).
double f_norm(const VectorField& u, const CoefficientField& s,
              const geometry::DomainPatch& patch);

// Sobolev norm: sqrt( int |grad u|^2 + |u|^2 ).
double sobolev_norm(const VectorField& u, const geometry::DomainPatch& patch);
double sobolev_norm(const ScalarField& f, const geometry::DomainPatch& patch);

double l2_norm(const VectorField& u, const geometry::DomainPatch& patch);
double grad_l2_norm(const VectorField& u, const geometry::DomainPatch& patch);
double l6_norm(const ScalarField& f, const geometry::DomainPatch& patch);

// ---------------------------------------------------------------------------
// Weak boundary-condition residuals

// int <w, rot h> - int <rot w, h>; zero for all test fields h certifies a
// vanishing tangential trace. Equals -int_dS <nu x w, h> for smooth fields.
Complex weak_tangential_residual(const VectorField& w, const VectorField& h,
                                 const geometry::DomainPatch& patch);

// int <s w, grad f> + int div(s w) conj(f); zero for all test functions f
// certifies a vanishing weighted normal trace. Equals int_dS <s w, nu> conj(f).
Complex weak_normal_residual(const VectorField& w, const CoefficientField& s,
                             const ScalarField& f, const geometry::DomainPatch& patch);

// Surface-side evaluations of the same pairings (oracle for the two above).
Complex tangential_surface_pairing(const VectorField& w, const VectorField& h,
                                   const geometry::DomainPatch& patch);
Complex normal_surface_pairing(const VectorField& w, const CoefficientField& s,
                               const ScalarField& f, const geometry::DomainPatch& patch);

// ---------------------------------------------------------------------------
// Integration-by-parts identities

struct IdentityReport {
    double lhs = 0.0;          // int (|rot|^2 + |div|^2)
    double rhs_volume = 0.0;   // int |grad|^2
    double rhs_surface = 0.0;  // curvature / K boundary term
    double surface_imag = 0.0;

    double residual() const { return lhs - rhs_volume - rhs_surface; }
    double relative() const;
};

// Gaffney identity: int(|rot w|^2 + |div w|^2) = int |grad w|^2 +
// int_dS <A w, w> with A the Weingarten matrix. Requires a vanishing normal
// trace; violations above bc_tol raise.
IdentityReport gaffney_identity(const VectorField& w, const geometry::DomainPatch& patch,
                                double bc_tol = 1e-10);
double gaffney_residual(const VectorField& w, const geometry::DomainPatch& patch,
                        double bc_tol = 1e-10);

// Boundary density K(x, u(x)) = s_jm s_kn (nu_k d_j u_m - nu_j d_k u_m)
// conj(u_n); real part is the curvature contribution, the imaginary part
// vanishes for real fields.
struct BoundaryK {
    double value = 0.0;
    double imag = 0.0;
};
BoundaryK boundary_K(const Mat3& s_at_x, const Vec3& nu, const CMat3& grad_u, const CVec3& u);

// Closed form at a critical point (grad psi = 0, nu = (0,0,-1)) with
// tangential-zero data: sum over j,m of (s_jm s_33 - s_3m s_j3) Hess_jm |u3|^2.
double boundary_K_closed_form(const Mat3& s, const Mat2& hess, Complex u3);

// Electric identity: int(|rot(su)|^2 + |div(su)|^2) = int |grad(su)|^2 +
// int_dS K + I3. For constant s, I3 = 0 and residual() -> 0 under refinement;
// for variable s the defect() measures I3.
struct ElectricReport {
    IdentityReport identity;
    double grad_norm2 = 0.0;  // |grad u|^2 integral (for the I3 bound)
    double l2_norm2 = 0.0;

    double defect() const { return identity.residual(); }
    bool i3_bound_ok(double delta, double c_budget) const {
        return std::abs(defect()) <= delta * grad_norm2 + c_budget * l2_norm2 + 1e-12;
    }
};
ElectricReport electric_identity(const VectorField& u, const CoefficientField& s,
                                 const geometry::DomainPatch& patch);

// Minor-term integrals: lhs33 = int sum_{i,j,k} |d_i s_jk|^2 |v|^2 and
// lhs34 = int |s|_F |grad s|_F |v| |grad v|_F, with the two right-hand-side
// norms for fitting C(delta).
struct MinorTerms {
    double lhs33 = 0.0;
    double lhs34 = 0.0;
    double grad_norm = 0.0;  // ||grad v||_L2
    double l2_norm = 0.0;    // ||v||_L2
};
MinorTerms minor_term_probe(const CoefficientField& s, const VectorField& v,
                            const geometry::DomainPatch& patch);

// int(|grad(sv)|^2 - |rot(sv)|^2 + beta1^2 |rot v|^2)
//   - (beta0^2/2) int |grad v|^2 + C_budget int |v|^2; nonnegative per the
// coefficient trace inequality (up to the budgeted minor terms).
double lemma33_check(const CoefficientField& s, const VectorField& v,
                     const geometry::DomainPatch& patch, double c_budget);

// Pointwise trace identities (gradient matrix U with U(k,j) = d_j v_k):
// |grad v|^2 = tr(U U*) and |grad v|^2 - |rot v|^2 = tr(U conj U).
double pointwise_grad2(const CMat3& u);
double pointwise_grad2_minus_rot2(const CMat3& u);

}  // namespace maxlab::fields
