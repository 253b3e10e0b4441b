#include "maxlab/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "maxlab/rng.hpp"

namespace maxlab::mollify {

namespace {

MollifierKernel build_kernel(std::function<double(double)> radial, double support,
                             const QuadratureSpec& quad, const std::string& name) {
    if (support <= 0.0) throw std::invalid_argument("kernel support must be positive");
    quad.validate();

    MollifierKernel k;
    k.support_radius = support;
    k.name = name;

    const int n = std::max(quad.resolution, 16);
    const Rule1d rr = line_rule(0.0, support, n, Rule::Gauss, std::max(quad.gauss_order, 4));
    const int nth = 2 * ((n + 1) / 2) * 2;  // even count keeps the node set symmetric
    const Rule1d th = periodic_rule(nth);

    double raw_mass = 0.0;
    for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
        const double r = rr.nodes[i];
        const double w = radial(r / support);
        if (w <= 0.0) continue;
        for (std::size_t j = 0; j < th.nodes.size(); ++j) {
            k.nodes.push_back({r * std::cos(th.nodes[j]), r * std::sin(th.nodes[j])});
            k.weights.push_back(rr.weights[i] * r * th.weights[j] * w);
            raw_mass += k.weights.back();
        }
    }
    if (raw_mass <= 0.0) throw std::runtime_error("kernel quadrature self-test failed: mass <= 0");

    KahanSum mass, moment;
    for (std::size_t i = 0; i < k.weights.size(); ++i) {
        k.weights[i] /= raw_mass;
        mass.add(k.weights[i]);
        moment.add(k.weights[i] * k.nodes[i].norm());
    }
    k.mass = mass.value();
    k.first_abs_moment = moment.value();
    const double z = raw_mass;
    k.evaluate = [radial, support, z](Vec2 p) {
        const double r = p.norm();
        if (r >= support) return 0.0;
        return radial(r / support) / z;
    };

    if (std::abs(k.mass - 1.0) > 1e-6)
        throw std::runtime_error("kernel quadrature self-test failed: |mass - 1| > 1e-6");
    return k;
}

}  // namespace

MollifierKernel bump_kernel(double support_radius, const QuadratureSpec& quad) {
    auto radial = [](double s) {
        if (s >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - s * s));
    };
    return build_kernel(radial, support_radius, quad, "bump");
}

MollifierKernel quartic_kernel(double support_radius, const QuadratureSpec& quad) {
    auto radial = [](double s) {
        if (s >= 1.0) return 0.0;
        const double t = 1.0 - s * s;
        return t * t * t * t;
    };
    return build_kernel(radial, support_radius, quad, "quartic");
}

MollifierKernel kernel_by_name(const std::string& name, double support_radius,
                               const QuadratureSpec& quad) {
    if (name == "bump") return bump_kernel(support_radius, quad);
    if (name == "quartic") return quartic_kernel(support_radius, quad);
    throw std::invalid_argument("unknown kernel '" + name + "' (valid: bump, quartic)");
}

double radial_first_abs_moment(const MollifierKernel& kernel, int n1d) {
    // int omega(|z|)|z| dz = 2 pi int_0^R omega(r) r^2 dr with the normalized kernel
    const Rule1d rr = line_rule(0.0, kernel.support_radius, n1d, Rule::Gauss, 6);
    KahanSum s;
    for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
        const double r = rr.nodes[i];
        s.add(rr.weights[i] * kernel.evaluate({r, 0.0}) * r * r);
    }
    return 2.0 * kPi * s.value();
}

ShiftConstant shift_constant(double lipschitz_K, const MollifierKernel& kernel, double margin) {
    if (margin <= 0.0) throw std::invalid_argument("shift_constant: margin must be positive");
    if (lipschitz_K < 0.0) throw std::invalid_argument("shift_constant: K must be nonnegative");
    ShiftConstant s;
    s.value = lipschitz_K * kernel.first_abs_moment * (1.0 + margin);
    s.degenerate = (lipschitz_K == 0.0);
    return s;
}

void SmoothingFamily::validate() const {
    if (!(shift_M > base.lipschitz_K * kernel.first_abs_moment))
        throw std::invalid_argument("SmoothingFamily: shift_M must exceed K * first_abs_moment");
    if (alphas.empty()) throw std::invalid_argument("SmoothingFamily: empty alpha list");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0 && alphas[i] < 1.0))
            throw std::invalid_argument("SmoothingFamily: alphas must lie in (0,1)");
        if (i > 0 && alphas[i] <= alphas[i - 1])
            throw std::invalid_argument("SmoothingFamily: alphas must be ascending");
    }
}

double mollify_phi(const SmoothingFamily& family, double alpha, Vec2 xprime) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("mollify_phi: alpha must lie in (0,1)");
    KahanSum s;
    const auto& k = family.kernel;
    for (std::size_t i = 0; i < k.nodes.size(); ++i) {
        s.add(k.weights[i] * family.base.value(xprime - alpha * k.nodes[i]));
    }
    return family.shift_M * alpha + s.value();
}

Vec2 mollify_grad(const SmoothingFamily& family, double alpha, Vec2 xprime) {
    KahanSum sx, sy;
    const auto& k = family.kernel;
    for (std::size_t i = 0; i < k.nodes.size(); ++i) {
        const Vec2 g = family.base.gradient(xprime - alpha * k.nodes[i]);
        sx.add(k.weights[i] * g.x);
        sy.add(k.weights[i] * g.y);
    }
    return {sx.value(), sy.value()};
}

Mat2 mollify_hess(const SmoothingFamily& family, double alpha, Vec2 xprime) {
    KahanSum s00, s01, s11;
    const auto& k = family.kernel;
    for (std::size_t i = 0; i < k.nodes.size(); ++i) {
        const Mat2 h = family.base.hessian(xprime - alpha * k.nodes[i]);
        s00.add(k.weights[i] * h(0, 0));
        s01.add(k.weights[i] * 0.5 * (h(0, 1) + h(1, 0)));
        s11.add(k.weights[i] * h(1, 1));
    }
    Mat2 h;
    h(0, 0) = s00.value();
    h(0, 1) = h(1, 0) = s01.value();
    h(1, 1) = s11.value();
    return h;
}

namespace {

struct Vec2Key {
    double x, y;
    bool operator==(const Vec2Key& o) const { return x == o.x && y == o.y; }
};

struct Vec2KeyHash {
    std::size_t operator()(const Vec2Key& k) const {
        std::uint64_t a, b;
        static_assert(sizeof(double) == 8);
        std::memcpy(&a, &k.x, 8);
        std::memcpy(&b, &k.y, 8);
        return static_cast<std::size_t>(splitmix64(a ^ splitmix64(b)));
    }
};

// Per-graph memo; patches evaluate phi_alpha at the same x' for every
// vertical level and every field, so caching cuts the kernel sums by ~100x.
template <typename V>
class PointCache {
public:
    template <typename F>
    V get(Vec2 p, F&& compute) {
        const Vec2Key key{p.x, p.y};
        {
            std::lock_guard lock(mtx_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        V v = compute();
        std::lock_guard lock(mtx_);
        map_.emplace(key, v);
        return v;
    }

private:
    std::mutex mtx_;
    std::unordered_map<Vec2Key, V, Vec2KeyHash> map_;
};

}  // namespace

geometry::GraphFunction mollified_graph(const SmoothingFamily& family, double alpha) {
    family.validate();
    auto fam = std::make_shared<SmoothingFamily>(family);
    auto vcache = std::make_shared<PointCache<double>>();
    auto gcache = std::make_shared<PointCache<Vec2>>();
    auto hcache = std::make_shared<PointCache<Mat2>>();

    geometry::GraphFunction g;
    g.name = family.base.name + "_alpha";
    g.lipschitz_K = family.base.lipschitz_K;
    g.fd_step = family.base.fd_step;
    g.value = [fam, alpha, vcache](Vec2 p) {
        return vcache->get(p, [&] { return mollify_phi(*fam, alpha, p); });
    };
    g.grad = [fam, alpha, gcache](Vec2 p) {
        return gcache->get(p, [&] { return mollify_grad(*fam, alpha, p); });
    };
    g.hess = [fam, alpha, hcache](Vec2 p) {
        return hcache->get(p, [&] { return mollify_hess(*fam, alpha, p); });
    };
    return g;
}

namespace {

// Sample points of B_rho: the origin (where convex kinks usually sit),
// deterministic rings, and seeded random fill.
std::vector<Vec2> sample_points(double rho, int samples, std::uint64_t seed) {
    std::vector<Vec2> pts{{0.0, 0.0}};
    const int rings = 3;
    for (int i = 1; i <= rings; ++i) {
        const double r = 0.85 * rho * i / rings;
        for (int j = 0; j < 6; ++j) {
            const double a = 2.0 * kPi * j / 6 + 0.2 * i;
            pts.push_back({r * std::cos(a), r * std::sin(a)});
        }
    }
    Rng rng(seed);
    while (static_cast<int>(pts.size()) < samples) pts.push_back(rng.in_disk(0.95 * rho));
    if (static_cast<int>(pts.size()) > samples) pts.resize(std::max(samples, 1));
    return pts;
}

}  // namespace

FamilyReport family_checks(const SmoothingFamily& family, double rho, int samples,
                           std::uint64_t seed) {
    family.validate();
    if (samples < 1) throw std::invalid_argument("family_checks: samples >= 1");

    const auto pts = sample_points(rho, samples, seed);
    const double K = family.base.lipschitz_K;
    const double slope_floor = family.shift_M - K * family.kernel.first_abs_moment;

    CheckRow mono{"monotone", std::numeric_limits<double>::infinity(), true, {}, 0.0};
    CheckRow lip{"lipschitz", 0.0, true, {}, 0.0};
    CheckRow conv{"convex", std::numeric_limits<double>::infinity(), true, {}, 0.0};
    CheckRow nest{"nesting", std::numeric_limits<double>::infinity(), true, {}, 0.0};

    std::vector<std::vector<double>> vals(family.alphas.size());
    for (std::size_t ia = 0; ia < family.alphas.size(); ++ia) {
        vals[ia].reserve(pts.size());
        for (const Vec2& p : pts) vals[ia].push_back(mollify_phi(family, family.alphas[ia], p));
    }

    // (a) slopes between consecutive alphas
    for (std::size_t ia = 0; ia + 1 < family.alphas.size(); ++ia) {
        const double da = family.alphas[ia + 1] - family.alphas[ia];
        for (std::size_t ip = 0; ip < pts.size(); ++ip) {
            const double slope = (vals[ia + 1][ip] - vals[ia][ip]) / da;
            const double excess = slope - slope_floor;
            if (excess < mono.worst) {
                mono.worst = excess;
                mono.witness = pts[ip];
                mono.witness_alpha = family.alphas[ia];
            }
        }
    }
    if (family.alphas.size() < 2) mono.worst = family.shift_M;  // single alpha: nothing to compare
    mono.pass = mono.worst >= -1e-8;

    // (b) Lipschitz over sampled pairs
    for (std::size_t ia = 0; ia < family.alphas.size(); ++ia) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                const double d = (pts[i] - pts[j]).norm();
                if (d < 1e-12) continue;
                const double q = std::abs(vals[ia][i] - vals[ia][j]) / d;
                if (q > lip.worst) {
                    lip.worst = q;
                    lip.witness = pts[i];
                    lip.witness_alpha = family.alphas[ia];
                }
            }
        }
    }
    lip.pass = lip.worst <= K + 1e-8;

    // (c) second differences of phi_alpha inside B_rho
    Rng rng(derive_seed(seed, 1));
    for (std::size_t ia = 0; ia < family.alphas.size(); ++ia) {
        const double alpha = family.alphas[ia];
        for (int t = 0; t < samples; ++t) {
            const Vec2 y = rng.in_disk(rho);
            const Vec2 z = rng.in_disk(rho - y.norm());
            if (z.norm() < 1e-9) continue;
            const double sd = mollify_phi(family, alpha, y + z) +
                              mollify_phi(family, alpha, y - z) -
                              2.0 * mollify_phi(family, alpha, y);
            const double ratio = sd / z.norm2();
            if (ratio < conv.worst) {
                conv.worst = ratio;
                conv.witness = y;
                conv.witness_alpha = alpha;
            }
        }
    }
    conv.pass = conv.worst >= -1e-10;

    // (d) nesting: phi_alpha above phi and above smaller alphas
    for (std::size_t ia = 0; ia < family.alphas.size(); ++ia) {
        for (std::size_t ip = 0; ip < pts.size(); ++ip) {
            const double gap = vals[ia][ip] - family.base.value(pts[ip]);
            if (gap < nest.worst) {
                nest.worst = gap;
                nest.witness = pts[ip];
                nest.witness_alpha = family.alphas[ia];
            }
            if (ia > 0) {
                const double dg = vals[ia][ip] - vals[ia - 1][ip];
                if (dg < nest.worst) {
                    nest.worst = dg;
                    nest.witness = pts[ip];
                    nest.witness_alpha = family.alphas[ia];
                }
            }
        }
    }
    nest.pass = nest.worst > 0.0;

    FamilyReport rep;
    rep.rows = {mono, lip, conv, nest};
    return rep;
}

std::vector<std::pair<double, double>> approach_gaps(const SmoothingFamily& family, double rho,
                                                     int samples) {
    family.validate();
    const auto pts = sample_points(rho, samples, 12345);
    std::vector<std::pair<double, double>> out;
    for (double alpha : family.alphas) {
        double worst = 0.0;
        for (const Vec2& p : pts) {
            worst = std::max(worst, mollify_phi(family, alpha, p) - family.base.value(p));
        }
        out.emplace_back(alpha, worst);
    }
    return out;
}

bool FamilyReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

const CheckRow& FamilyReport::row(const std::string& name) const {
    for (const auto& r : rows)
        if (r.name == name) return r;
    throw std::out_of_range("no such check row: " + name);
}

}  // namespace maxlab::mollify
