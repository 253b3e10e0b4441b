#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxlab/linalg.hpp"
#include "maxlab/quadrature.hpp"

namespace maxlab::geometry {

// ---------------------------------------------------------------------------
// GraphFunction: a scalar function phi on R^2 whose epigraph
// { (x', x3) : x3 > phi(x') } is the domain under study. Gradient and Hessian
// come from oracles when available, otherwise from central differences of
// step `fd_step` (O(h^2) accurate on smooth instances).

struct GraphFunction {
    std::function<double(Vec2)> value;
    std::function<Vec2(Vec2)> grad;   // optional oracle
    std::function<Mat2(Vec2)> hess;   // optional oracle
    double lipschitz_K = 0.0;
    double fd_step = 1e-5;
    std::string name = "custom";

    double operator()(Vec2 p) const { return value(p); }
    Vec2 gradient(Vec2 p) const;
    Mat2 hessian(Vec2 p) const;
    bool has_hessian_oracle() const { return static_cast<bool>(hess); }
};

// Finite-difference versions regardless of oracles (used by cross-check
// tests and as fallbacks).
Vec2 fd_gradient(const GraphFunction& phi, Vec2 p, double h);
Mat2 fd_hessian(const GraphFunction& phi, Vec2 p, double h);

// ---------------------------------------------------------------------------
// DomainPatch: the graph domain truncated to |x'| < rho, phi(x') < x3 <
// phi(x') + height, discretized with a polar tensor grid in x' and a line
// rule in the vertical coordinate. The vertical map (x', t) -> (x', phi(x') +
// t*height) is exactly boundary-conforming, so all volume nodes satisfy
// x3 > phi(x') and all surface nodes lie exactly on the graph.

struct VolumeNode {
    Vec3 pos;
    double weight = 0.0;  // includes r and height Jacobian factors
};

struct SurfaceNode {
    Vec2 xprime;
    Vec3 pos;              // (x', phi(x'))
    double weight_flat = 0.0;  // dx' measure; multiply by area_element for dS
};

class DomainPatch {
public:
    DomainPatch(GraphFunction graph, double rho, double height, QuadratureSpec quad);

    const GraphFunction& graph() const { return graph_; }
    double rho() const { return rho_; }
    double height() const { return height_; }
    const QuadratureSpec& quad() const { return quad_; }

    const std::vector<VolumeNode>& volume_nodes() const { return volume_; }
    const std::vector<SurfaceNode>& surface_nodes() const { return surface_; }

    double volume() const;  // quadrature measure of the patch

    // Same geometry at a different resolution (for refinement studies).
    DomainPatch refined(int resolution) const;

private:
    GraphFunction graph_;
    double rho_;
    double height_;
    QuadratureSpec quad_;
    std::vector<VolumeNode> volume_;
    std::vector<SurfaceNode> surface_;
};

// ---------------------------------------------------------------------------
// External ball condition

struct EbcResult {
    Vec2 point;                        // boundary point x' (on the graph)
    double radius = 0.0;               // in [0, R_max]
    bool capped = false;               // radius hit R_max
    std::optional<Vec3> witness_center;
};

std::string ebc_result_to_json(const EbcResult& r);

struct EbcSearchParams {
    double r_max = 10.0;
    double tol = 1e-3;
    int cone_rings = 2;        // rings of tilted directions around the normal
    int cone_samples = 8;      // directions per ring
    double cone_aperture = 0.35;  // max tilt (radians-ish tangent scale)
    int max_bisection = 60;
};

// Largest admissible external-ball radius at a boundary point, searched over
// ball centers lying on rays through the outward normal and a cone of
// perturbations around it, by bisection on the radius. A ball is admissible
// when no patch node (volume or surface) lies strictly inside it.
EbcResult ebc_radius(const DomainPatch& patch, Vec2 boundary_point,
                     const EbcSearchParams& params);

// Infimum of ebc_radius over a deterministic family of sampled boundary
// points (concentric rings covering |x'| <= 0.9 rho, axis-aligned rays
// included so that ridge lines of wedge-type domains are hit exactly).
struct EbcInfimum {
    double radius = 0.0;
    bool capped = false;
    Vec2 argmin_point;
    std::vector<EbcResult> per_point;
};

EbcInfimum ebc_infimum(const DomainPatch& patch, int samples, const EbcSearchParams& params);

// ---------------------------------------------------------------------------
// Pointwise geometric quantities of the graph surface

// phi(y+z) + phi(y-z) - 2 phi(y); z = 0 gives the limit value 0.
double second_difference(const GraphFunction& phi, Vec2 y, Vec2 z);

struct ConvexityReport {
    double min_ratio = 0.0;  // min of second_difference / |z|^2
    Vec2 argmin_y, argmin_z;
    int samples = 0;
};

// Monte Carlo probe of convexity on B_rho: draws (y, z) with y +- z in B_rho
// and reports the worst second-difference ratio. Nonnegative min certifies
// convexity on the sample.
ConvexityReport convexity_probe(const GraphFunction& phi, double rho, int samples,
                                std::uint64_t seed);

// Deterministic dense-grid variant (oracle for the probe).
ConvexityReport convexity_grid(const GraphFunction& phi, double rho, int grid);

// Unit outward normal (points away from the epigraph): (d1 phi, d2 phi, -1)
// normalized.
Vec3 unit_normal(const GraphFunction& phi, Vec2 xprime);

// Weingarten curvature matrix of the graph surface, third row/column zero.
Mat3 weingarten(const GraphFunction& phi, Vec2 xprime);

// Boundary frame M with rows (1,0,d1 phi), (0,1,d2 phi), (-d1 phi,-d2 phi,1);
// det M = 1 + |grad phi|^2. Maps tangential/normal conditions to component
// conditions: <u,nu> = 0 iff (Mu)_3 = 0.
Mat3 boundary_frame(const GraphFunction& phi, Vec2 xprime);

// Surface measure factor sqrt(1 + |grad phi|^2) >= 1.
double area_element(const GraphFunction& phi, Vec2 xprime);

}  // namespace maxlab::geometry
