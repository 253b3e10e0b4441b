#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "maxlab/fields.hpp"
#include "maxlab/mollify.hpp"

namespace maxlab::maxwell {

// Weighted L2 structure: epsilon on the electric block, mu on the magnetic
// block, identity weights on the two scalar potentials.
struct WeightedL2Spec {
    fields::CoefficientField epsilon;
    fields::CoefficientField mu;
};

// X = (E, phi, H, eta).
struct ExtendedField {
    fields::VectorField E;
    fields::ScalarField phi;
    fields::VectorField H;
    fields::ScalarField eta;
};

struct Extended8 {
    CVec3 e;
    Complex phi{0.0, 0.0};
    CVec3 h;
    Complex eta{0.0, 0.0};
};

// (i eps^{-1} rot H, -i mu^{-1} rot E) at a point.
std::pair<CVec3, CVec3> apply_maxwell(const fields::VectorField& e, const fields::VectorField& h,
                                      const WeightedL2Spec& spec, Vec3 x);

// (i eps^{-1} rot H + i grad eta, -i div(mu H), -i mu^{-1} rot E - i grad phi,
//  i div(eps E)).
Extended8 apply_extended(const ExtendedField& x_field, const WeightedL2Spec& spec, Vec3 x);

// L2 norms of div(eps E) and div(mu H) over the patch.
std::pair<double, double> divergence_free_residual(const fields::VectorField& e,
                                                   const fields::VectorField& h,
                                                   const WeightedL2Spec& spec,
                                                   const geometry::DomainPatch& patch);

// Weighted L2 norm of X (squared): int <eps E,E> + |phi|^2 + <mu H,H> + |eta|^2.
double weighted_l2_norm2(const ExtendedField& x_field, const WeightedL2Spec& spec,
                         const geometry::DomainPatch& patch);

// Graph norm: sqrt(||L X||_w^2 + ||X||_w^2).
double graph_norm(const ExtendedField& x_field, const WeightedL2Spec& spec,
                  const geometry::DomainPatch& patch);

// W^1_2 norm of all eight components.
double extended_sobolev_norm(const ExtendedField& x_field, const geometry::DomainPatch& patch);

// (L X, Y)_w - (X, L Y)_w: tends to zero under refinement when X, Y satisfy
// the tangential-electric / normal-magnetic / zero-eta boundary conditions.
Complex symmetry_pairing(const ExtendedField& x_field, const ExtendedField& y_field,
                         const WeightedL2Spec& spec, const geometry::DomainPatch& patch);

// ---------------------------------------------------------------------------
// A priori estimate sweeps over the smoothing family

enum class SweepMode { Magnetic, Electric, Extended };
SweepMode sweep_mode_from_string(const std::string& s);
std::string sweep_mode_to_string(SweepMode m);

struct SweepParams {
    double rho = 1.0;
    double height = 1.0;
    QuadratureSpec quad;
    double cutoff_inner = 0.35;
    double cutoff_outer = 0.8;   // must stay below min(rho, height)
    double bc_tol = 1e-8;        // boundary-condition validity threshold
    double invalid_budget = 0.1; // fraction of invalid cells tolerated
    bool skip_construction = false;  // use basket fields as-is (tests the
                                     // invalid-cell accounting)
};

struct SweepCell {
    double alpha = 0.0;
    std::string field_id;
    double sobolev = 0.0;
    double f_or_graph = 0.0;
    double ratio = 0.0;
    bool valid = false;
};

struct SweepReport {
    std::vector<SweepCell> cells;
    std::map<double, double> max_ratio_per_alpha;
    double overall_max = 0.0;
    double min_max_ratio = 0.0;  // smallest per-alpha max (for the uniformity factor)
    int invalid_count = 0;
    int total = 0;
    bool budget_exceeded = false;

    double uniformity_factor() const {
        return min_max_ratio > 0.0 ? overall_max / min_max_ratio : 0.0;
    }
};

// Per (alpha, field): builds the boundary-condition-satisfying localized field
// against phi_alpha, validates the condition on the alpha-patch, and records
// sobolev / F (or sobolev / graph) ratios. Invalid cells are excluded and
// counted, never silently included.
SweepReport estimate_sweep(const mollify::SmoothingFamily& family, const WeightedL2Spec& spec,
                           const std::vector<fields::VectorField>& basket, SweepMode mode,
                           const SweepParams& params);

}  // namespace maxlab::maxwell
