#include "maxlab/diffeo.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "maxlab/quadrature.hpp"

namespace maxlab::diffeo {

using fields::CoefficientField;
using fields::VectorField;
using geometry::DomainPatch;

Mat3 fd_jacobian(const Diffeomorphism& psi, Vec3 x, double h) {
    Mat3 j;
    for (int row = 0; row < 3; ++row) {  // row = differentiation index
        Vec3 xp = x, xm = x;
        xp[row] += h;
        xm[row] -= h;
        const Vec3 fp = psi.forward(xp), fm = psi.forward(xm);
        for (int k = 0; k < 3; ++k) j(row, k) = (fp[k] - fm[k]) / (2.0 * h);
    }
    return j;
}

Mat3 Diffeomorphism::jacobian(Vec3 x) const {
    if (jac) return jac(x);
    return fd_jacobian(*this, x, fd_step);
}

std::array<Mat3, 3> Diffeomorphism::second_derivative(Vec3 x) const {
    if (second) return second(x);
    // D2[k](i,j) = d_i d_j psi_k via central differences of the Jacobian
    std::array<Mat3, 3> d2{Mat3::zero(), Mat3::zero(), Mat3::zero()};
    for (int i = 0; i < 3; ++i) {
        Vec3 xp = x, xm = x;
        xp[i] += fd_step;
        xm[i] -= fd_step;
        const Mat3 jp = jacobian(xp), jm = jacobian(xm);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) d2[k](i, j) = (jp(j, k) - jm(j, k)) / (2.0 * fd_step);
    }
    return d2;
}

Diffeomorphism compose(const Diffeomorphism& psi1, const Diffeomorphism& psi2) {
    auto p1 = std::make_shared<Diffeomorphism>(psi1);
    auto p2 = std::make_shared<Diffeomorphism>(psi2);
    Diffeomorphism c;
    c.name = psi1.name + "." + psi2.name;
    c.fd_step = std::min(psi1.fd_step, psi2.fd_step);
    c.forward = [p1, p2](Vec3 x) { return p1->forward(p2->forward(x)); };
    c.inverse = [p1, p2](Vec3 y) { return p2->inverse(p1->inverse(y)); };
    // d_j (psi1 . psi2)_k = d_j psi2_m (x) * (d_m psi1_k)(psi2(x))
    c.jac = [p1, p2](Vec3 x) { return p2->jacobian(x) * p1->jacobian(p2->forward(x)); };
    return c;
}

VectorField pullback_field(const Diffeomorphism& psi, const VectorField& v) {
    auto pp = std::make_shared<Diffeomorphism>(psi);
    auto vp = std::make_shared<VectorField>(v);
    VectorField u;
    u.name = v.name + "@" + psi.name;
    u.fd_step = std::min(psi.fd_step, v.fd_step);
    u.evaluate = [pp, vp](Vec3 x) { return pp->jacobian(x) * vp->evaluate(pp->forward(x)); };
    if (psi.has_second_oracle()) {
        u.jac = [pp, vp](Vec3 x) {
            const Vec3 y = pp->forward(x);
            const Mat3 j = pp->jacobian(x);
            const auto d2 = pp->second_derivative(x);
            const CVec3 vv = vp->evaluate(y);
            const CMat3 vj = vp->jacobian(y);
            // d_i u_j = d_i d_j psi_k v_k + d_j psi_k (d_l v_k)(y) d_i psi_l
            CMat3 out;
            for (int j_ = 0; j_ < 3; ++j_)       // component of u
                for (int i = 0; i < 3; ++i) {    // derivative index
                    Complex acc{0.0, 0.0};
                    for (int k = 0; k < 3; ++k) {
                        acc += d2[k](i, j_) * vv[k];
                        for (int l = 0; l < 3; ++l) acc += j(j_, k) * vj(k, l) * j(i, l);
                    }
                    out(j_, i) = acc;
                }
            return out;
        };
    }
    return u;
}

double rot_transform_residual(const Diffeomorphism& psi, const VectorField& v, Vec3 x) {
    const Mat3 j = psi.jacobian(x);
    const double dj = j.det();
    if (std::abs(dj) < 1e-12)
        throw std::domain_error("rot_transform_residual: |det J| below 1e-12");
    const VectorField u = pullback_field(psi, v);
    const CVec3 lhs = fields::rot(u, x);
    const CVec3 roty = fields::rot(v, psi.forward(x));
    const CVec3 rhs = std::abs(dj) * (j.inverse().transposed() * roty);
    return (lhs - rhs).norm();
}

Mat3 coefficient_transform_at(const Diffeomorphism& psi, const CoefficientField& s, Vec3 y) {
    const Vec3 x = psi.inverse(y);
    const Mat3 j = psi.jacobian(x);
    const double dj = j.det();
    if (std::abs(dj) < 1e-12)
        throw std::domain_error("coefficient_transform: |det J| below 1e-12");
    return (j.transposed() * s.evaluate(x) * j) * (1.0 / std::abs(dj));
}

double div_transform_residual(const Diffeomorphism& psi, const CoefficientField& s,
                              const VectorField& v, Vec3 x) {
    const Mat3 j = psi.jacobian(x);
    const double dj = j.det();
    if (std::abs(dj) < 1e-12)
        throw std::domain_error("div_transform_residual: |det J| below 1e-12");

    const VectorField u = pullback_field(psi, v);
    const Complex lhs = fields::div_weighted(s, u, x);

    // rhs: |det J| div_y ( s~(y) v(y) ) with s~ = J^t s J / |det J|
    auto pp = std::make_shared<Diffeomorphism>(psi);
    auto sp = std::make_shared<CoefficientField>(s);
    auto vp = std::make_shared<VectorField>(v);
    VectorField transported;
    transported.fd_step = std::min({psi.fd_step, v.fd_step, s.fd_step});
    transported.evaluate = [pp, sp, vp](Vec3 y) {
        return coefficient_transform_at(*pp, *sp, y) * vp->evaluate(y);
    };
    const Complex divy = fields::divergence(transported, psi.forward(x));
    const Complex rhs = std::abs(dj) * divy;
    return std::abs(lhs - rhs);
}

CoefficientField coefficient_transform(const Diffeomorphism& psi, const CoefficientField& s,
                                       const DomainPatch& patch_dst) {
    auto pp = std::make_shared<Diffeomorphism>(psi);
    auto sp = std::make_shared<CoefficientField>(s);
    CoefficientField out;
    out.name = s.name + "@" + psi.name;
    out.fd_step = std::min(psi.fd_step, s.fd_step);
    out.evaluate = [pp, sp](Vec3 y) { return coefficient_transform_at(*pp, *sp, y); };

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& n : patch_dst.volume_nodes()) {
        const Eigen3 e = sym_eigenvalues(out.evaluate(n.pos));
        if (e.min() <= 0.0)
            throw std::runtime_error(
                "coefficient_transform: nonpositive sampled eigenvalue (oracle inconsistency)");
        lo = std::min(lo, e.min());
        hi = std::max(hi, e.max());
    }
    out.beta0 = lo;
    out.beta1 = hi;
    return out;
}

NormEquivalence norm_equivalence_probe(const Diffeomorphism& psi, const CoefficientField& s,
                                       const VectorField& v, const DomainPatch& patch_src,
                                       const DomainPatch& patch_dst, double vol_tol) {
    const double vol_dst = patch_dst.volume();
    const double mapped = fields::volume_integral(
        patch_src, [&](Vec3 x) { return std::abs(psi.jacobian(x).det()); });
    if (std::abs(vol_dst - mapped) > vol_tol * std::max(1.0, vol_dst))
        throw std::invalid_argument(
            "norm_equivalence_probe: destination patch does not match the image volume");

    const CoefficientField st = coefficient_transform(psi, s, patch_dst);
    const VectorField u = pullback_field(psi, v);

    NormEquivalence out;
    const double fu = fields::f_norm(u, s, patch_src);
    const double fv = fields::f_norm(v, st, patch_dst);
    const double su = fields::sobolev_norm(u, patch_src);
    const double sv = fields::sobolev_norm(v, patch_dst);
    if (fu == 0.0 || su == 0.0)
        throw std::invalid_argument("norm_equivalence_probe: zero source norm");
    out.ratio_f = fv / fu;
    out.ratio_sob = sv / su;

    double jmax = 0.0, jimax = 0.0;
    for (const auto& n : patch_src.volume_nodes()) {
        const Mat3 j = psi.jacobian(n.pos);
        jmax = std::max(jmax, j.frobenius());
        jimax = std::max(jimax, j.inverse().frobenius());
    }
    out.bound = (1.0 + jmax) * (1.0 + jimax);
    return out;
}

W23Probe w23_membership_probe(const Diffeomorphism& psi, const DomainPatch& patch, int levels) {
    if (levels < 1) throw std::invalid_argument("w23_membership_probe: levels >= 1");
    W23Probe out;

    const auto& g = patch.graph();
    const double rho = patch.rho();
    const int nr = std::max(4, patch.quad().resolution / 2);
    const int nth = 16;
    const int nt = std::max(4, patch.quad().resolution / 2);
    const Rule1d th = periodic_rule(nth);
    const Rule1d tr = line_rule(0.0, 1.0, nt, Rule::Gauss, 3);

    double total = 0.0;
    for (int l = 0; l < levels; ++l) {
        const double r_hi = rho * std::pow(0.5, l);
        const double r_lo = 0.5 * r_hi;
        const Rule1d rr = line_rule(r_lo, r_hi, nr, Rule::Gauss, 4);
        KahanSum level;
        for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
            const double r = rr.nodes[i];
            for (std::size_t j = 0; j < th.nodes.size(); ++j) {
                const Vec2 xp{r * std::cos(th.nodes[j]), r * std::sin(th.nodes[j])};
                const double base = g.value(xp);
                const double w2 = rr.weights[i] * r * th.weights[j];
                for (std::size_t k = 0; k < tr.nodes.size(); ++k) {
                    const Vec3 pos{xp.x, xp.y, base + tr.nodes[k] * patch.height()};
                    const auto d2 = psi.second_derivative(pos);
                    double f2 = 0.0;
                    for (int c = 0; c < 3; ++c)
                        for (double e : d2[c].a) f2 += e * e;
                    level.add(w2 * tr.weights[k] * patch.height() * std::pow(f2, 1.5));
                    out.sup_j = std::max(out.sup_j, psi.jacobian(pos).frobenius());
                }
            }
        }
        total += level.value();
        out.level_integrals.push_back(level.value());
        out.cumulative.push_back(total);
    }
    out.total = total;
    return out;
}

}  // namespace maxlab::diffeo
