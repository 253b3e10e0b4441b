#include "maxlab/fields.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "maxlab/quadrature.hpp"

namespace maxlab::fields {

using geometry::DomainPatch;
using geometry::GraphFunction;
using geometry::SurfaceNode;

// ---------------------------------------------------------------------------
// Derivative fallbacks

CMat3 fd_jacobian(const VectorField& u, Vec3 x, double h) {
    CMat3 j;
    for (int col = 0; col < 3; ++col) {
        Vec3 xp = x, xm = x;
        xp[col] += h;
        xm[col] -= h;
        const CVec3 up = u.evaluate(xp), um = u.evaluate(xm);
        for (int row = 0; row < 3; ++row) j(row, col) = (up[row] - um[row]) / (2.0 * h);
    }
    return j;
}

CMat3 VectorField::jacobian(Vec3 x) const {
    if (jac) return jac(x);
    return fd_jacobian(*this, x, fd_step);
}

CVec3 ScalarField::gradient(Vec3 x) const {
    if (grad) return grad(x);
    CVec3 g;
    for (int i = 0; i < 3; ++i) {
        Vec3 xp = x, xm = x;
        xp[i] += fd_step;
        xm[i] -= fd_step;
        g[i] = (evaluate(xp) - evaluate(xm)) / (2.0 * fd_step);
    }
    return g;
}

std::array<Mat3, 3> CoefficientField::derivative(Vec3 x) const {
    if (constant) return {Mat3::zero(), Mat3::zero(), Mat3::zero()};
    if (deriv) return deriv(x);
    std::array<Mat3, 3> d;
    for (int i = 0; i < 3; ++i) {
        Vec3 xp = x, xm = x;
        xp[i] += fd_step;
        xm[i] -= fd_step;
        d[i] = (evaluate(xp) - evaluate(xm)) * (1.0 / (2.0 * fd_step));
    }
    return d;
}

double coefficient_bounds_margin(const CoefficientField& s, const DomainPatch& patch) {
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& n : patch.volume_nodes()) {
        const Eigen3 e = sym_eigenvalues(s.evaluate(n.pos));
        margin = std::min(margin, e.min() - s.beta0);
        margin = std::min(margin, s.beta1 - e.max());
    }
    return margin;
}

// ---------------------------------------------------------------------------
// Cutoff

namespace {
// quintic smoothstep: s(0)=0, s(1)=1, s'=s''=0 at both ends
double smoothstep5(double t) { return t * t * t * (10.0 + t * (-15.0 + 6.0 * t)); }
double smoothstep5_d(double t) { return t * t * (30.0 + t * (-60.0 + 30.0 * t)); }
}  // namespace

double CutoffField::value(Vec3 x) const {
    const double d = (x - center).norm();
    if (d <= inner) return 1.0;
    if (d >= outer) return 0.0;
    return smoothstep5((outer - d) / (outer - inner));
}

Vec3 CutoffField::gradient(Vec3 x) const {
    const Vec3 r = x - center;
    const double d = r.norm();
    if (d <= inner || d >= outer || d == 0.0) return {0, 0, 0};
    const double t = (outer - d) / (outer - inner);
    const double dv = -smoothstep5_d(t) / (outer - inner);
    return r * (dv / d);
}

// ---------------------------------------------------------------------------
// Differential operators

CVec3 rot_from_jacobian(const CMat3& j) {
    return {j(2, 1) - j(1, 2), j(0, 2) - j(2, 0), j(1, 0) - j(0, 1)};
}

CVec3 rot(const VectorField& u, Vec3 x) { return rot_from_jacobian(u.jacobian(x)); }

Complex divergence(const VectorField& u, Vec3 x) { return u.jacobian(x).trace(); }

Complex div_weighted(const CoefficientField& s, const VectorField& u, Vec3 x) {
    // div(su) = (d_i s_ik) u_k + s_ik d_i u_k
    const Mat3 sv = s.evaluate(x);
    const auto ds = s.derivative(x);
    const CVec3 uv = u.evaluate(x);
    const CMat3 j = u.jacobian(x);
    Complex out{0.0, 0.0};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) out += ds[i](i, k) * uv[k] + sv(i, k) * j(k, i);
    return out;
}

CVec3 grad(const ScalarField& f, Vec3 x) { return f.gradient(x); }

// ---------------------------------------------------------------------------
// Constructors

VectorField apply_coefficient(const CoefficientField& s, const VectorField& u) {
    auto sp = std::make_shared<CoefficientField>(s);
    auto up = std::make_shared<VectorField>(u);
    VectorField w;
    w.name = s.name + "*" + u.name;
    w.fd_step = u.fd_step;
    w.evaluate = [sp, up](Vec3 x) { return sp->evaluate(x) * up->evaluate(x); };
    w.jac = [sp, up](Vec3 x) {
        const Mat3 sv = sp->evaluate(x);
        const auto ds = sp->derivative(x);
        const CVec3 uv = up->evaluate(x);
        const CMat3 j = up->jacobian(x);
        CMat3 out;
        for (int i = 0; i < 3; ++i)
            for (int col = 0; col < 3; ++col) {
                Complex v{0.0, 0.0};
                for (int k = 0; k < 3; ++k) v += ds[col](i, k) * uv[k] + sv(i, k) * j(k, col);
                out(i, col) = v;
            }
        return out;
    };
    return w;
}

VectorField localized(const VectorField& u, const CutoffField& chi) {
    auto up = std::make_shared<VectorField>(u);
    VectorField w;
    w.name = u.name + "*cutoff";
    w.fd_step = u.fd_step;
    w.evaluate = [up, chi](Vec3 x) { return up->evaluate(x) * chi.value(x); };
    w.jac = [up, chi](Vec3 x) {
        const double c = chi.value(x);
        const Vec3 g = chi.gradient(x);
        const CVec3 uv = up->evaluate(x);
        const CMat3 j = up->jacobian(x);
        CMat3 out;
        for (int i = 0; i < 3; ++i)
            for (int col = 0; col < 3; ++col) out(i, col) = c * j(i, col) + g[col] * uv[i];
        return out;
    };
    return w;
}

ScalarField localized(const ScalarField& f, const CutoffField& chi) {
    auto fp = std::make_shared<ScalarField>(f);
    ScalarField w;
    w.name = f.name + "*cutoff";
    w.fd_step = f.fd_step;
    w.evaluate = [fp, chi](Vec3 x) { return fp->evaluate(x) * chi.value(x); };
    w.grad = [fp, chi](Vec3 x) {
        const double c = chi.value(x);
        const Vec3 g = chi.gradient(x);
        const Complex fv = fp->evaluate(x);
        const CVec3 fg = fp->gradient(x);
        CVec3 out;
        for (int i = 0; i < 3; ++i) out[i] = c * fg[i] + g[i] * fv;
        return out;
    };
    return w;
}

namespace {

// N(x) = (d1 phi, d2 phi, -1), constant in x3; dN/dx_j from the Hessian.
struct NormalFrame {
    Vec3 n;
    std::array<Vec3, 3> dn;  // dn[j] = d_j N
};

NormalFrame normal_frame(const GraphFunction& phi, Vec3 x) {
    const Vec2 xp{x.x, x.y};
    const Vec2 g = phi.gradient(xp);
    const Mat2 h = phi.hessian(xp);
    NormalFrame f;
    f.n = {g.x, g.y, -1.0};
    f.dn[0] = {h(0, 0), h(1, 0), 0.0};
    f.dn[1] = {h(0, 1), h(1, 1), 0.0};
    f.dn[2] = {0.0, 0.0, 0.0};
    return f;
}

Complex pair_cv(const CVec3& a, const Vec3& b) { return a.pair(b); }

}  // namespace

VectorField tangential_zero_field(const VectorField& g, const GraphFunction& phi) {
    auto gp = std::make_shared<VectorField>(g);
    auto php = std::make_shared<GraphFunction>(phi);
    VectorField w;
    w.name = g.name + "_tan0";
    w.fd_step = g.fd_step;
    w.evaluate = [gp, php](Vec3 x) {
        const NormalFrame f = normal_frame(*php, x);
        const Complex c = pair_cv(gp->evaluate(x), f.n) / f.n.norm2();
        return CVec3(f.n) * c;
    };
    w.jac = [gp, php](Vec3 x) {
        const NormalFrame f = normal_frame(*php, x);
        const double n2 = f.n.norm2();
        const CVec3 gv = gp->evaluate(x);
        const CMat3 gj = gp->jacobian(x);
        const Complex gn = pair_cv(gv, f.n);
        const Complex c = gn / n2;
        CMat3 out;
        for (int j = 0; j < 3; ++j) {
            // d_j <g, N> = <d_j g, N> + <g, d_j N>
            Complex dgn{0.0, 0.0};
            for (int k = 0; k < 3; ++k) dgn += gj(k, j) * f.n[k] + gv[k] * f.dn[j][k];
            const double dn2 = 2.0 * f.n.dot(f.dn[j]);
            const Complex dc = (dgn * n2 - gn * dn2) / (n2 * n2);
            for (int i = 0; i < 3; ++i) out(i, j) = dc * f.n[i] + c * f.dn[j][i];
        }
        return out;
    };
    return w;
}

VectorField normal_zero_field(const VectorField& g, const CoefficientField& s,
                              const GraphFunction& phi) {
    auto gp = std::make_shared<VectorField>(g);
    auto sp = std::make_shared<CoefficientField>(s);
    auto php = std::make_shared<GraphFunction>(phi);
    VectorField w;
    w.name = g.name + "_nu0";
    w.fd_step = g.fd_step;
    w.evaluate = [gp, sp, php](Vec3 x) {
        const NormalFrame f = normal_frame(*php, x);
        const Mat3 sv = sp->evaluate(x);
        const Vec3 q = sv.inverse() * f.n;
        const Complex c = pair_cv(sv * gp->evaluate(x), f.n) / f.n.norm2();
        return gp->evaluate(x) - CVec3(q) * c;
    };
    w.jac = [gp, sp, php](Vec3 x) {
        const NormalFrame f = normal_frame(*php, x);
        const double n2 = f.n.norm2();
        const Mat3 sv = sp->evaluate(x);
        const Mat3 si = sv.inverse();
        const auto ds = sp->derivative(x);
        const Vec3 q = si * f.n;
        const CVec3 gv = gp->evaluate(x);
        const CMat3 gj = gp->jacobian(x);
        const CVec3 sg = sv * gv;
        const Complex sgn = pair_cv(sg, f.n);
        const Complex c = sgn / n2;
        CMat3 out;
        for (int j = 0; j < 3; ++j) {
            // d_j q = -s^{-1} (d_j s) q + s^{-1} d_j N
            const Vec3 dq = si * (f.dn[j] - ds[j] * q);
            // d_j <s g, N> = <(d_j s) g + s d_j g, N> + <s g, d_j N>
            CVec3 dsg = ds[j] * gv;
            for (int i = 0; i < 3; ++i) {
                Complex v = dsg[i];
                for (int k = 0; k < 3; ++k) v += sv(i, k) * gj(k, j);
                dsg[i] = v;
            }
            const Complex dsgn = pair_cv(dsg, f.n) + pair_cv(sg, f.dn[j]);
            const double dn2 = 2.0 * f.n.dot(f.dn[j]);
            const Complex dc = (dsgn * n2 - sgn * dn2) / (n2 * n2);
            for (int i = 0; i < 3; ++i) out(i, j) = gj(i, j) - dc * q[i] - c * dq[i];
        }
        return out;
    };
    return w;
}

double tangential_trace_residual(const VectorField& u, const DomainPatch& patch) {
    double worst = 0.0, scale = 1e-300;
    for (const auto& n : patch.surface_nodes()) {
        const CVec3 uv = u.evaluate(n.pos);
        const Vec3 nu = geometry::unit_normal(patch.graph(), n.xprime);
        const CVec3 tang = uv - CVec3(nu) * uv.pair(nu);
        worst = std::max(worst, tang.norm());
        scale = std::max(scale, uv.norm());
    }
    return worst / std::max(scale, 1e-12);
}

double normal_trace_residual(const VectorField& u, const CoefficientField& s,
                             const DomainPatch& patch) {
    double worst = 0.0, scale = 1e-300;
    for (const auto& n : patch.surface_nodes()) {
        const CVec3 su = s.evaluate(n.pos) * u.evaluate(n.pos);
        const Vec3 nu = geometry::unit_normal(patch.graph(), n.xprime);
        worst = std::max(worst, std::abs(su.pair(nu)));
        scale = std::max(scale, su.norm());
    }
    return worst / std::max(scale, 1e-12);
}

// ---------------------------------------------------------------------------
// Quadrature functionals

double volume_integral(const DomainPatch& patch, const std::function<double(Vec3)>& f) {
    KahanSum s;
    for (const auto& n : patch.volume_nodes()) s.add(n.weight * f(n.pos));
    return s.value();
}

Complex volume_integral_c(const DomainPatch& patch, const std::function<Complex(Vec3)>& f) {
    KahanSumC s;
    for (const auto& n : patch.volume_nodes()) s.add(f(n.pos) * n.weight);
    return s.value();
}

double surface_integral(const DomainPatch& patch,
                        const std::function<double(const SurfaceNode&)>& f) {
    KahanSum s;
    for (const auto& n : patch.surface_nodes())
        s.add(n.weight_flat * geometry::area_element(patch.graph(), n.xprime) * f(n));
    return s.value();
}

Complex surface_integral_c(const DomainPatch& patch,
                           const std::function<Complex(const SurfaceNode&)>& f) {
    KahanSumC s;
    for (const auto& n : patch.surface_nodes())
        s.add(f(n) * (n.weight_flat * geometry::area_element(patch.graph(), n.xprime)));
    return s.value();
}

double f_norm(const VectorField& u, const CoefficientField& s, const DomainPatch& patch) {
    const double v = volume_integral(patch, [&](Vec3 x) {
        const CMat3 j = u.jacobian(x);
        const CVec3 uv = u.evaluate(x);
        const CVec3 r = rot_from_jacobian(j);
        const Complex dv = div_weighted(s, u, x);
        const CVec3 su = s.evaluate(x) * uv;
        return r.norm2() + std::norm(dv) + su.inner(uv).real();
    });
    return std::sqrt(std::max(0.0, v));
}

double sobolev_norm(const VectorField& u, const DomainPatch& patch) {
    const double v = volume_integral(patch, [&](Vec3 x) {
        return u.jacobian(x).frobenius2() + u.evaluate(x).norm2();
    });
    return std::sqrt(std::max(0.0, v));
}

double sobolev_norm(const ScalarField& f, const DomainPatch& patch) {
    const double v = volume_integral(patch, [&](Vec3 x) {
        return f.gradient(x).norm2() + std::norm(f.evaluate(x));
    });
    return std::sqrt(std::max(0.0, v));
}

double l2_norm(const VectorField& u, const DomainPatch& patch) {
    return std::sqrt(
        std::max(0.0, volume_integral(patch, [&](Vec3 x) { return u.evaluate(x).norm2(); })));
}

double grad_l2_norm(const VectorField& u, const DomainPatch& patch) {
    return std::sqrt(
        std::max(0.0, volume_integral(patch, [&](Vec3 x) { return u.jacobian(x).frobenius2(); })));
}

double l6_norm(const ScalarField& f, const DomainPatch& patch) {
    const double v = volume_integral(patch, [&](Vec3 x) {
        const double a2 = std::norm(f.evaluate(x));
        return a2 * a2 * a2;
    });
    return std::pow(std::max(0.0, v), 1.0 / 6.0);
}

// ---------------------------------------------------------------------------
// Weak residuals

Complex weak_tangential_residual(const VectorField& w, const VectorField& h,
                                 const DomainPatch& patch) {
    return volume_integral_c(patch, [&](Vec3 x) {
        const CVec3 rw = rot(w, x);
        const CVec3 rh = rot(h, x);
        return w.evaluate(x).inner(rh) - rw.inner(h.evaluate(x));
    });
}

Complex weak_normal_residual(const VectorField& w, const CoefficientField& s,
                             const ScalarField& f, const DomainPatch& patch) {
    return volume_integral_c(patch, [&](Vec3 x) {
        const CVec3 sw = s.evaluate(x) * w.evaluate(x);
        const Complex dsw = div_weighted(s, w, x);
        return sw.inner(f.gradient(x)) + dsw * std::conj(f.evaluate(x));
    });
}

Complex tangential_surface_pairing(const VectorField& w, const VectorField& h,
                                   const DomainPatch& patch) {
    // -int_dS <nu x w, h>
    return surface_integral_c(patch, [&](const SurfaceNode& n) {
        const Vec3 nu = geometry::unit_normal(patch.graph(), n.xprime);
        const CVec3 wv = w.evaluate(n.pos);
        const CVec3 nxw{nu.y * wv.z - nu.z * wv.y, nu.z * wv.x - nu.x * wv.z,
                        nu.x * wv.y - nu.y * wv.x};
        return -nxw.inner(h.evaluate(n.pos));
    });
}

Complex normal_surface_pairing(const VectorField& w, const CoefficientField& s,
                               const ScalarField& f, const DomainPatch& patch) {
    return surface_integral_c(patch, [&](const SurfaceNode& n) {
        const Vec3 nu = geometry::unit_normal(patch.graph(), n.xprime);
        const CVec3 sw = s.evaluate(n.pos) * w.evaluate(n.pos);
        return sw.pair(nu) * std::conj(f.evaluate(n.pos));
    });
}

// ---------------------------------------------------------------------------
// Identities

double IdentityReport::relative() const {
    const double scale = std::max({std::abs(lhs), std::abs(rhs_volume), 1e-300});
    return std::abs(residual()) / scale;
}

IdentityReport gaffney_identity(const VectorField& w, const DomainPatch& patch, double bc_tol) {
    CoefficientField id;
    id.evaluate = [](Vec3) { return Mat3::identity(); };
    id.constant = true;
    const double bc = normal_trace_residual(w, id, patch);
    if (bc > bc_tol)
        throw std::invalid_argument("gaffney_identity: normal trace residual " +
                                    std::to_string(bc) + " exceeds tolerance");

    IdentityReport rep;
    rep.lhs = volume_integral(patch, [&](Vec3 x) {
        const CMat3 j = w.jacobian(x);
        return rot_from_jacobian(j).norm2() + std::norm(j.trace());
    });
    rep.rhs_volume =
        volume_integral(patch, [&](Vec3 x) { return w.jacobian(x).frobenius2(); });
    KahanSum imag;
    rep.rhs_surface = surface_integral(patch, [&](const SurfaceNode& n) {
        const Mat3 a = geometry::weingarten(patch.graph(), n.xprime);
        const CVec3 wv = w.evaluate(n.pos);
        const Complex q = (a * wv).inner(wv);
        imag.add(q.imag());
        return q.real();
    });
    rep.surface_imag = imag.value();
    return rep;
}

double gaffney_residual(const VectorField& w, const DomainPatch& patch, double bc_tol) {
    return gaffney_identity(w, patch, bc_tol).residual();
}

BoundaryK boundary_K(const Mat3& s, const Vec3& nu, const CMat3& grad_u, const CVec3& u) {
    Complex k{0.0, 0.0};
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m) {
            if (s(j, m) == 0.0) continue;
            for (int kk = 0; kk < 3; ++kk)
                for (int n = 0; n < 3; ++n) {
                    if (s(kk, n) == 0.0) continue;
                    // grad_u(m, j) = d_j u_m
                    k += s(j, m) * s(kk, n) * (nu[kk] * grad_u(m, j) - nu[j] * grad_u(m, kk)) *
                         std::conj(u[n]);
                }
        }
    return {k.real(), k.imag()};
}

double boundary_K_closed_form(const Mat3& s, const Mat2& hess, Complex u3) {
    double acc = 0.0;
    for (int j = 0; j < 2; ++j)
        for (int m = 0; m < 2; ++m)
            acc += (s(j, m) * s(2, 2) - s(2, m) * s(j, 2)) * hess(j, m);
    return acc * std::norm(u3);
}

ElectricReport electric_identity(const VectorField& u, const CoefficientField& s,
                                 const DomainPatch& patch) {
    const VectorField su = apply_coefficient(s, u);

    ElectricReport rep;
    rep.identity.lhs = volume_integral(patch, [&](Vec3 x) {
        const CMat3 j = su.jacobian(x);
        return rot_from_jacobian(j).norm2() + std::norm(j.trace());
    });
    rep.identity.rhs_volume =
        volume_integral(patch, [&](Vec3 x) { return su.jacobian(x).frobenius2(); });
    KahanSum imag;
    rep.identity.rhs_surface = surface_integral(patch, [&](const SurfaceNode& n) {
        const Vec3 nu = geometry::unit_normal(patch.graph(), n.xprime);
        const BoundaryK k =
            boundary_K(s.evaluate(n.pos), nu, u.jacobian(n.pos), u.evaluate(n.pos));
        imag.add(k.imag);
        return k.value;
    });
    rep.identity.surface_imag = imag.value();
    rep.grad_norm2 = volume_integral(patch, [&](Vec3 x) { return u.jacobian(x).frobenius2(); });
    rep.l2_norm2 = volume_integral(patch, [&](Vec3 x) { return u.evaluate(x).norm2(); });
    return rep;
}

MinorTerms minor_term_probe(const CoefficientField& s, const VectorField& v,
                            const DomainPatch& patch) {
    MinorTerms out;
    out.lhs33 = volume_integral(patch, [&](Vec3 x) {
        const auto ds = s.derivative(x);
        double d2 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (double e : ds[i].a) d2 += e * e;
        return d2 * v.evaluate(x).norm2();
    });
    out.lhs34 = volume_integral(patch, [&](Vec3 x) {
        const auto ds = s.derivative(x);
        double d2 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (double e : ds[i].a) d2 += e * e;
        return s.evaluate(x).frobenius() * std::sqrt(d2) * v.evaluate(x).norm() *
               v.jacobian(x).frobenius();
    });
    out.grad_norm = grad_l2_norm(v, patch);
    out.l2_norm = l2_norm(v, patch);
    return out;
}

double lemma33_check(const CoefficientField& s, const VectorField& v, const DomainPatch& patch,
                     double c_budget) {
    const VectorField sv = apply_coefficient(s, v);
    const double lhs = volume_integral(patch, [&](Vec3 x) {
        const CMat3 js = sv.jacobian(x);
        const CMat3 jv = v.jacobian(x);
        return js.frobenius2() - rot_from_jacobian(js).norm2() +
               s.beta1 * s.beta1 * rot_from_jacobian(jv).norm2();
    });
    const double gn2 = volume_integral(patch, [&](Vec3 x) { return v.jacobian(x).frobenius2(); });
    const double l22 = volume_integral(patch, [&](Vec3 x) { return v.evaluate(x).norm2(); });
    return lhs - 0.5 * s.beta0 * s.beta0 * gn2 + c_budget * l22;
}

double pointwise_grad2(const CMat3& u) { return u.frobenius2(); }

double pointwise_grad2_minus_rot2(const CMat3& u) {
    return u.frobenius2() - rot_from_jacobian(u).norm2();
}

}  // namespace maxlab::fields
