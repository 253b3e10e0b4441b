#include "maxlab/matalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "maxlab/quadrature.hpp"
#include "maxlab/rng.hpp"

namespace maxlab::matalg {

SymMatrix3 SymMatrix3::from(const Mat3& a) {
    if (!a.is_symmetric(1e-12 * (1.0 + a.max_abs())))
        throw std::invalid_argument("SymMatrix3: matrix is not symmetric");
    SymMatrix3 s;
    s.m = a;
    // exact symmetry by construction
    s.m(1, 0) = s.m(0, 1);
    s.m(2, 0) = s.m(0, 2);
    s.m(2, 1) = s.m(1, 2);
    s.eig = sym_eigenvalues(s.m);
    s.beta0 = s.eig.min();
    s.beta1 = s.eig.max();
    return s;
}

SymMatrix3 SymMatrix3::from(const Mat3& a, double beta0, double beta1) {
    SymMatrix3 s = from(a);
    if (beta0 > s.eig.min() + 1e-12 || beta1 < s.eig.max() - 1e-12)
        throw std::invalid_argument("SymMatrix3: supplied bounds do not enclose the spectrum");
    s.beta0 = beta0;
    s.beta1 = beta1;
    return s;
}

TraceForms trace_forms(const SymMatrix3& b, const CMat3& u) {
    const CMat3 bu = mul(b.m, u);
    TraceForms t;
    t.t1 = (bu * bu.conjugated()).trace().real();
    t.t2 = u.frobenius2();
    t.t3 = (u * u.conjugated()).trace().real();
    return t;
}

double lemma_residual(const SymMatrix3& b, const CMat3& u) {
    if (!b.positive_definite())
        throw std::invalid_argument("lemma_residual: B must be positive definite");
    const TraceForms t = trace_forms(b, u);
    return t.t1 + b.beta1 * b.beta1 * (t.t2 - t.t3) - b.beta0 * b.beta0 * t.t2;
}

double offdiag_inequality(double lam_i, double lam_j, double beta0, double beta1, Complex wij,
                          Complex wji) {
    if (!(beta0 > 0.0) || lam_i < beta0 - 1e-15 || lam_j < beta0 - 1e-15 ||
        lam_i > beta1 + 1e-15 || lam_j > beta1 + 1e-15)
        throw std::invalid_argument("offdiag_inequality: need beta1 >= lam_i, lam_j >= beta0 > 0");
    const double cross = 2.0 * (wij * std::conj(wji)).real();
    const double sq = std::norm(wij) + std::norm(wji);
    return lam_i * lam_j * cross + beta1 * beta1 * (sq - cross) - beta0 * beta0 * sq;
}

SweepResult residual_sweep(const SweepConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("residual_sweep: trials >= 1");
    SweepResult out;
    out.trials = cfg.trials;
    out.min_residual = std::numeric_limits<double>::infinity();
    out.min_scaled_residual = std::numeric_limits<double>::infinity();
    KahanSum mean;

    for (std::int64_t t = 0; t < cfg.trials; ++t) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        const Mat3 b = rng.spd(cfg.eig_lo, cfg.eig_hi);
        CMat3 u;
        for (int i = 0; i < 9; ++i) u.a[i] = rng.cnormal();
        const double un = u.frobenius();
        if (un > cfg.u_norm_cap) {
            const double sc = cfg.u_norm_cap / un;
            for (auto& v : u.a) v *= sc;
        }
        const SymMatrix3 sb = SymMatrix3::from(b);
        const double r = lemma_residual(sb, u);
        mean.add(r);
        const double scale = sb.m.frobenius() * sb.m.frobenius() * u.frobenius2();
        const double rs = scale > 0.0 ? r / scale : 0.0;
        if (r < out.min_residual) out.min_residual = r;
        if (rs < out.min_scaled_residual) {
            out.min_scaled_residual = rs;
            out.argmin_b = sb.m;
            out.argmin_u = u;
        }
    }
    out.mean_residual = mean.value() / static_cast<double>(cfg.trials);
    return out;
}

double orthogonal_invariance_sweep(std::int64_t trials, std::uint64_t seed) {
    double worst = 0.0;
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        const Mat3 b = rng.spd(0.2, 5.0);
        CMat3 u;
        for (int i = 0; i < 9; ++i) u.a[i] = rng.cnormal();
        const Mat3 o = rng.orthogonal();

        const Mat3 b2 = o * b * o.transposed();
        const CMat3 co = CMat3::from_real(o);
        const CMat3 u2 = co * u * co.transposed();

        const double r1 = lemma_residual(SymMatrix3::from(b), u);
        const double r2 = lemma_residual(SymMatrix3::from(b2), u2);
        const double scale = 1.0 + std::abs(r1);
        worst = std::max(worst, std::abs(r1 - r2) / scale);
    }
    return worst;
}

std::string SweepResult::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"trials\":" << trials << ",\"min_residual\":" << min_residual
       << ",\"min_scaled_residual\":" << min_scaled_residual
       << ",\"mean_residual\":" << mean_residual << ",\"argmin_b\":[";
    for (int i = 0; i < 9; ++i) os << (i ? "," : "") << argmin_b.a[i];
    os << "],\"argmin_u_re\":[";
    for (int i = 0; i < 9; ++i) os << (i ? "," : "") << argmin_u.a[i].real();
    os << "],\"argmin_u_im\":[";
    for (int i = 0; i < 9; ++i) os << (i ? "," : "") << argmin_u.a[i].imag();
    os << "]}";
    return os.str();
}

}  // namespace maxlab::matalg
