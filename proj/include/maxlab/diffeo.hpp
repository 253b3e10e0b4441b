#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "maxlab/fields.hpp"
#include "maxlab/geometry.hpp"

namespace maxlab::diffeo {

// ---------------------------------------------------------------------------
// Diffeomorphism psi with inverse and Jacobian oracle.
//
// INDEX CONVENTION (easy to get backwards): J(j, k) = d_j psi_k, i.e. row =
// differentiation index, column = component. This is the transpose of the
// usual Jacobi matrix; the pullback below is u(x) = J(x) * v(psi(x)) and the
// curl law reads rot_x u = |det J| (J^{-1})^t rot_y v.

struct Diffeomorphism {
    std::function<Vec3(Vec3)> forward;
    std::function<Vec3(Vec3)> inverse;
    std::function<Mat3(Vec3)> jac;  // optional oracle, J(j,k) = d_j psi_k
    // optional second derivatives: second(x)[k](i,j) = d_i d_j psi_k
    std::function<std::array<Mat3, 3>(Vec3)> second;
    double fd_step = 1e-5;
    std::string name = "custom";

    Mat3 jacobian(Vec3 x) const;
    std::array<Mat3, 3> second_derivative(Vec3 x) const;
    bool has_second_oracle() const { return static_cast<bool>(second); }
};

Mat3 fd_jacobian(const Diffeomorphism& psi, Vec3 x, double h);

// psi1 after psi2, with chained Jacobian oracle (second derivatives fall back
// to finite differences).
Diffeomorphism compose(const Diffeomorphism& psi1, const Diffeomorphism& psi2);

// ---------------------------------------------------------------------------
// Pullback u_j(x) = d_j psi_k (x) v_k(psi(x)). The jacobian oracle uses the
// chain rule when second derivatives are available, finite differences of the
// pulled-back values otherwise.
fields::VectorField pullback_field(const Diffeomorphism& psi, const fields::VectorField& v);

// | rot_x u (x) - |det J| (J^{-1})^t (rot_y v)(psi(x)) |
double rot_transform_residual(const Diffeomorphism& psi, const fields::VectorField& v, Vec3 x);

// | div_x(s u)(x) - |det J| div_y( J^t s J v / |det J| )(psi(x)) |
double div_transform_residual(const Diffeomorphism& psi, const fields::CoefficientField& s,
                              const fields::VectorField& v, Vec3 x);

// Transported coefficient s~(y) = J^t(x) s(x) J(x) / |det J(x)|, x =
// psi^{-1}(y); derivative oracle by finite differences. Bounds are sampled
// eigenvalue extremes over the destination patch; a nonpositive sample
// raises.
fields::CoefficientField coefficient_transform(const Diffeomorphism& psi,
                                               const fields::CoefficientField& s,
                                               const geometry::DomainPatch& patch_dst);

// Pointwise transported coefficient (no bounds sampling).
Mat3 coefficient_transform_at(const Diffeomorphism& psi, const fields::CoefficientField& s,
                              Vec3 y);

struct NormEquivalence {
    double ratio_f = 0.0;    // ||v||_F(dst, s~) / ||u||_F(src, s)
    double ratio_sob = 0.0;  // same with Sobolev norms
    double bound = 0.0;      // (1 + max|J|)(1 + max|J^{-1}|) over samples
};

// Requires patch_dst to be the image geometry of patch_src under psi;
// validated by comparing vol(dst) with int_src |det J|.
NormEquivalence norm_equivalence_probe(const Diffeomorphism& psi,
                                       const fields::CoefficientField& s,
                                       const fields::VectorField& v,
                                       const geometry::DomainPatch& patch_src,
                                       const geometry::DomainPatch& patch_dst,
                                       double vol_tol = 1e-2);

// ---------------------------------------------------------------------------
// W^2_3 and W^1_inf membership probe: sup |J| over samples and the graded
// integral of |D^2 psi|^3 on dyadic radial shells r in [rho 2^{-l-1},
// rho 2^{-l}]. A convergent level sum certifies the membership numerically;
// the probe reports per-level contributions so divergence is visible too.
struct W23Probe {
    double sup_j = 0.0;
    std::vector<double> level_integrals;
    std::vector<double> cumulative;
    double total = 0.0;
};

W23Probe w23_membership_probe(const Diffeomorphism& psi, const geometry::DomainPatch& patch,
                              int levels);

}  // namespace maxlab::diffeo
