#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "maxlab/geometry.hpp"

namespace maxlab::mollify {

// ---------------------------------------------------------------------------
// MollifierKernel: a nonnegative even bump supported on a disk, discretized
// once on a polar tensor grid (Gauss-Legendre radially, uniform midpoints in
// angle). The combined node weights are normalized to sum exactly to one, so
// the discrete mollifier is a true weighted average: convexity preservation,
// the Lipschitz bound and the shift inequalities then hold at machine
// precision rather than up to quadrature error. The polar grid is also
// radially exact for the |z'| moment, which a Cartesian box grid is not.

struct MollifierKernel {
    std::function<double(Vec2)> evaluate;  // normalized continuum kernel
    double support_radius = 1.0;
    double mass = 1.0;              // discrete mass after normalization (== 1)
    double first_abs_moment = 0.0;  // discrete integral of omega(z)|z|
    std::string name = "bump";

    // Discrete representation: z-offsets and combined weights (quadrature
    // weight times kernel value), summing to 1.
    std::vector<Vec2> nodes;
    std::vector<double> weights;
};

// Smooth radial bump exp(-1/(1-|z/r|^2)) normalized on B_r.
MollifierKernel bump_kernel(double support_radius, const QuadratureSpec& quad);
// Polynomial kernel (1-|z/r|^2)^4 normalized on B_r.
MollifierKernel quartic_kernel(double support_radius, const QuadratureSpec& quad);
MollifierKernel kernel_by_name(const std::string& name, double support_radius,
                               const QuadratureSpec& quad);

// Continuum first absolute moment by 1D radial reduction (independent check
// of the discrete moment).
double radial_first_abs_moment(const MollifierKernel& kernel, int n1d = 400);

// ---------------------------------------------------------------------------
// Shift constant M > K * first_abs_moment keeping the mollified graphs above
// the original one.

struct ShiftConstant {
    double value = 0.0;
    bool degenerate = false;  // K == 0: any positive M works, returned value is 0
};

ShiftConstant shift_constant(double lipschitz_K, const MollifierKernel& kernel, double margin);

// ---------------------------------------------------------------------------
// SmoothingFamily: phi_alpha(x') = M*alpha + sum_i w_i phi(x' - alpha z_i).

struct SmoothingFamily {
    geometry::GraphFunction base;
    MollifierKernel kernel;
    double shift_M = 0.0;
    std::vector<double> alphas;  // ascending, in (0,1)

    double margin() const { return shift_M - base.lipschitz_K * kernel.first_abs_moment; }
    void validate() const;
};

double mollify_phi(const SmoothingFamily& family, double alpha, Vec2 xprime);
Vec2 mollify_grad(const SmoothingFamily& family, double alpha, Vec2 xprime);
Mat2 mollify_hess(const SmoothingFamily& family, double alpha, Vec2 xprime);

// GraphFunction view of phi_alpha with memoized evaluation (patch quadrature
// revisits the same x' many times). Lipschitz constant carries over from the
// base per the mollification estimate.
geometry::GraphFunction mollified_graph(const SmoothingFamily& family, double alpha);

// ---------------------------------------------------------------------------
// Family verification

struct CheckRow {
    std::string name;
    double worst = 0.0;
    bool pass = false;
    Vec2 witness;
    double witness_alpha = 0.0;
};

struct FamilyReport {
    std::vector<CheckRow> rows;
    bool all_pass() const;
    const CheckRow& row(const std::string& name) const;
};

// Runs the four family checks on sampled points of B_rho:
//  (a) monotone: phi_alpha strictly increasing in alpha, discrete slope
//      >= M - K * first_abs_moment - 1e-8;
//  (b) lipschitz: |phi_a(x) - phi_a(y)| <= (K + 1e-8) |x - y|;
//  (c) convex: second differences of phi_alpha >= -1e-10 |z|^2 on B_rho
//      (meaningful when the base is convex on B_{2 rho});
//  (d) nesting: phi_alpha > phi pointwise and phi_alpha > phi_beta for
//      alpha > beta.
FamilyReport family_checks(const SmoothingFamily& family, double rho, int samples,
                           std::uint64_t seed);

// max over sampled x' of phi_alpha - phi, per alpha; the union property makes
// this O(alpha) with slope at most M + K * first_abs_moment.
std::vector<std::pair<double, double>> approach_gaps(const SmoothingFamily& family, double rho,
                                                     int samples);

}  // namespace maxlab::mollify
