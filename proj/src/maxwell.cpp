#include "maxlab/maxwell.hpp"

#include <cmath>
#include <stdexcept>

namespace maxlab::maxwell {

using fields::CoefficientField;
using fields::ScalarField;
using fields::VectorField;
using geometry::DomainPatch;

namespace {
const Complex kI{0.0, 1.0};
}

std::pair<CVec3, CVec3> apply_maxwell(const VectorField& e, const VectorField& h,
                                      const WeightedL2Spec& spec, Vec3 x) {
    const Mat3 eps_inv = spec.epsilon.evaluate(x).inverse();
    const Mat3 mu_inv = spec.mu.evaluate(x).inverse();
    const CVec3 rot_h = fields::rot(h, x);
    const CVec3 rot_e = fields::rot(e, x);
    return {kI * (eps_inv * rot_h), -kI * (mu_inv * rot_e)};
}

Extended8 apply_extended(const ExtendedField& xf, const WeightedL2Spec& spec, Vec3 x) {
    Extended8 out;
    const Mat3 eps_inv = spec.epsilon.evaluate(x).inverse();
    const Mat3 mu_inv = spec.mu.evaluate(x).inverse();
    out.e = kI * (eps_inv * fields::rot(xf.H, x)) + kI * xf.eta.gradient(x);
    out.phi = -kI * fields::div_weighted(spec.mu, xf.H, x);
    out.h = -kI * (mu_inv * fields::rot(xf.E, x)) - kI * xf.phi.gradient(x);
    out.eta = kI * fields::div_weighted(spec.epsilon, xf.E, x);
    return out;
}

std::pair<double, double> divergence_free_residual(const VectorField& e, const VectorField& h,
                                                   const WeightedL2Spec& spec,
                                                   const DomainPatch& patch) {
    const double de = fields::volume_integral(
        patch, [&](Vec3 x) { return std::norm(fields::div_weighted(spec.epsilon, e, x)); });
    const double dh = fields::volume_integral(
        patch, [&](Vec3 x) { return std::norm(fields::div_weighted(spec.mu, h, x)); });
    return {std::sqrt(std::max(0.0, de)), std::sqrt(std::max(0.0, dh))};
}

namespace {

double weighted_density(const ExtendedField& xf, const WeightedL2Spec& spec, Vec3 x) {
    const CVec3 ev = xf.E.evaluate(x);
    const CVec3 hv = xf.H.evaluate(x);
    const CVec3 se = spec.epsilon.evaluate(x) * ev;
    const CVec3 sh = spec.mu.evaluate(x) * hv;
    return se.inner(ev).real() + std::norm(xf.phi.evaluate(x)) + sh.inner(hv).real() +
           std::norm(xf.eta.evaluate(x));
}

double weighted_density_l(const ExtendedField& xf, const WeightedL2Spec& spec, Vec3 x) {
    const Extended8 lx = apply_extended(xf, spec, x);
    const CVec3 se = spec.epsilon.evaluate(x) * lx.e;
    const CVec3 sh = spec.mu.evaluate(x) * lx.h;
    return se.inner(lx.e).real() + std::norm(lx.phi) + sh.inner(lx.h).real() + std::norm(lx.eta);
}

}  // namespace

double weighted_l2_norm2(const ExtendedField& xf, const WeightedL2Spec& spec,
                         const DomainPatch& patch) {
    return fields::volume_integral(patch, [&](Vec3 x) { return weighted_density(xf, spec, x); });
}

double graph_norm(const ExtendedField& xf, const WeightedL2Spec& spec, const DomainPatch& patch) {
    const double v = fields::volume_integral(patch, [&](Vec3 x) {
        return weighted_density(xf, spec, x) + weighted_density_l(xf, spec, x);
    });
    return std::sqrt(std::max(0.0, v));
}

double extended_sobolev_norm(const ExtendedField& xf, const DomainPatch& patch) {
    const double v = fields::volume_integral(patch, [&](Vec3 x) {
        return xf.E.jacobian(x).frobenius2() + xf.E.evaluate(x).norm2() +
               xf.phi.gradient(x).norm2() + std::norm(xf.phi.evaluate(x)) +
               xf.H.jacobian(x).frobenius2() + xf.H.evaluate(x).norm2() +
               xf.eta.gradient(x).norm2() + std::norm(xf.eta.evaluate(x));
    });
    return std::sqrt(std::max(0.0, v));
}

Complex symmetry_pairing(const ExtendedField& xf, const ExtendedField& yf,
                         const WeightedL2Spec& spec, const DomainPatch& patch) {
    return fields::volume_integral_c(patch, [&](Vec3 x) {
        const Extended8 lx = apply_extended(xf, spec, x);
        const Extended8 ly = apply_extended(yf, spec, x);
        const Mat3 eps = spec.epsilon.evaluate(x);
        const Mat3 mu = spec.mu.evaluate(x);

        const CVec3 ex = xf.E.evaluate(x), ey = yf.E.evaluate(x);
        const CVec3 hx = xf.H.evaluate(x), hy = yf.H.evaluate(x);
        const Complex px = xf.phi.evaluate(x), py = yf.phi.evaluate(x);
        const Complex nx = xf.eta.evaluate(x), ny = yf.eta.evaluate(x);

        const Complex lxy = (eps * lx.e).inner(ey) + lx.phi * std::conj(py) +
                            (mu * lx.h).inner(hy) + lx.eta * std::conj(ny);
        const Complex xly = (eps * ex).inner(ly.e) + px * std::conj(ly.phi) +
                            (mu * hx).inner(ly.h) + nx * std::conj(ly.eta);
        return lxy - xly;
    });
}

// ---------------------------------------------------------------------------
// Estimate sweep

SweepMode sweep_mode_from_string(const std::string& s) {
    if (s == "magnetic") return SweepMode::Magnetic;
    if (s == "electric") return SweepMode::Electric;
    if (s == "extended") return SweepMode::Extended;
    throw std::invalid_argument("unknown sweep mode '" + s +
                                "' (valid: magnetic, electric, extended)");
}

std::string sweep_mode_to_string(SweepMode m) {
    switch (m) {
        case SweepMode::Magnetic: return "magnetic";
        case SweepMode::Electric: return "electric";
        case SweepMode::Extended: return "extended";
    }
    return "?";
}

SweepReport estimate_sweep(const mollify::SmoothingFamily& family, const WeightedL2Spec& spec,
                           const std::vector<fields::VectorField>& basket, SweepMode mode,
                           const SweepParams& params) {
    family.validate();
    if (basket.empty()) throw std::invalid_argument("estimate_sweep: empty basket");
    if (params.cutoff_outer > std::min(params.rho, params.height))
        throw std::invalid_argument("estimate_sweep: cutoff must vanish inside the patch");

    SweepReport rep;
    const ScalarField zero_scalar{[](Vec3) { return Complex{0.0, 0.0}; },
                                  [](Vec3) { return CVec3{}; },
                                  1e-5,
                                  "zero"};

    for (double alpha : family.alphas) {
        const geometry::GraphFunction ga = mollify::mollified_graph(family, alpha);
        const DomainPatch patch(ga, params.rho, params.height, params.quad);
        const fields::CutoffField chi{{0.0, 0.0, ga.value({0.0, 0.0})},
                                      params.cutoff_inner,
                                      params.cutoff_outer};

        double alpha_max = 0.0;
        for (const auto& g : basket) {
            SweepCell cell;
            cell.alpha = alpha;
            cell.field_id = g.name;
            ++rep.total;

            VectorField u;
            bool bc_ok = true;
            switch (mode) {
                case SweepMode::Electric: {
                    u = params.skip_construction
                            ? fields::localized(g, chi)
                            : fields::localized(fields::tangential_zero_field(g, ga), chi);
                    bc_ok = fields::tangential_trace_residual(u, patch) <= params.bc_tol;
                    if (bc_ok) {
                        cell.sobolev = fields::sobolev_norm(u, patch);
                        cell.f_or_graph = fields::f_norm(u, spec.epsilon, patch);
                    }
                    break;
                }
                case SweepMode::Magnetic: {
                    u = params.skip_construction
                            ? fields::localized(g, chi)
                            : fields::localized(fields::normal_zero_field(g, spec.mu, ga), chi);
                    bc_ok = fields::normal_trace_residual(u, spec.mu, patch) <= params.bc_tol;
                    if (bc_ok) {
                        cell.sobolev = fields::sobolev_norm(u, patch);
                        cell.f_or_graph = fields::f_norm(u, spec.mu, patch);
                    }
                    break;
                }
                case SweepMode::Extended: {
                    VectorField e, h;
                    if (params.skip_construction) {
                        e = fields::localized(g, chi);
                        h = fields::localized(g, chi);
                    } else {
                        e = fields::localized(fields::tangential_zero_field(g, ga), chi);
                        h = fields::localized(fields::normal_zero_field(g, spec.mu, ga), chi);
                    }
                    bc_ok = fields::tangential_trace_residual(e, patch) <= params.bc_tol &&
                            fields::normal_trace_residual(h, spec.mu, patch) <= params.bc_tol;
                    if (bc_ok) {
                        const ExtendedField xf{e, zero_scalar, h, zero_scalar};
                        cell.sobolev = extended_sobolev_norm(xf, patch);
                        cell.f_or_graph = graph_norm(xf, spec, patch);
                    }
                    break;
                }
            }

            cell.valid = bc_ok && cell.f_or_graph > 0.0;
            if (cell.valid) {
                cell.ratio = cell.sobolev / cell.f_or_graph;
                alpha_max = std::max(alpha_max, cell.ratio);
            } else {
                ++rep.invalid_count;
            }
            rep.cells.push_back(cell);
        }
        rep.max_ratio_per_alpha[alpha] = alpha_max;
    }

    rep.overall_max = 0.0;
    rep.min_max_ratio = std::numeric_limits<double>::infinity();
    for (const auto& [a, m] : rep.max_ratio_per_alpha) {
        rep.overall_max = std::max(rep.overall_max, m);
        rep.min_max_ratio = std::min(rep.min_max_ratio, m);
    }
    rep.budget_exceeded =
        rep.invalid_count > params.invalid_budget * static_cast<double>(rep.total);
    return rep;
}

}  // namespace maxlab::maxwell
