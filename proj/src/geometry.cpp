#include "maxlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "maxlab/rng.hpp"

namespace maxlab::geometry {

Vec2 GraphFunction::gradient(Vec2 p) const {
    if (grad) return grad(p);
    return fd_gradient(*this, p, fd_step);
}

Mat2 GraphFunction::hessian(Vec2 p) const {
    if (hess) return hess(p);
    return fd_hessian(*this, p, fd_step);
}

Vec2 fd_gradient(const GraphFunction& phi, Vec2 p, double h) {
    const double fx1 = phi.value({p.x + h, p.y}), fx0 = phi.value({p.x - h, p.y});
    const double fy1 = phi.value({p.x, p.y + h}), fy0 = phi.value({p.x, p.y - h});
    return {(fx1 - fx0) / (2.0 * h), (fy1 - fy0) / (2.0 * h)};
}

Mat2 fd_hessian(const GraphFunction& phi, Vec2 p, double h) {
    const double f = phi.value(p);
    const double fpx = phi.value({p.x + h, p.y}), fmx = phi.value({p.x - h, p.y});
    const double fpy = phi.value({p.x, p.y + h}), fmy = phi.value({p.x, p.y - h});
    const double fpp = phi.value({p.x + h, p.y + h}), fpm = phi.value({p.x + h, p.y - h});
    const double fmp = phi.value({p.x - h, p.y + h}), fmm = phi.value({p.x - h, p.y - h});
    Mat2 m;
    m(0, 0) = (fpx - 2.0 * f + fmx) / (h * h);
    m(1, 1) = (fpy - 2.0 * f + fmy) / (h * h);
    m(0, 1) = m(1, 0) = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
    return m;
}

// ---------------------------------------------------------------------------
// DomainPatch

DomainPatch::DomainPatch(GraphFunction graph, double rho, double height, QuadratureSpec quad)
    : graph_(std::move(graph)), rho_(rho), height_(height), quad_(quad) {
    if (rho <= 0.0 || height <= 0.0)
        throw std::invalid_argument("DomainPatch: rho and height must be positive");
    quad_.validate();

    const int n = quad_.resolution;
    Rule1d rr = line_rule(0.0, rho_, n, quad_.rule, quad_.gauss_order);
    Rule1d tr = line_rule(0.0, 1.0, n, quad_.rule, quad_.gauss_order);
    // Trapezoid endpoints would land on |x'| = rho and x3 = phi exactly;
    // nudge them inward so every node is admissible.
    if (quad_.rule == Rule::Trapezoid) {
        const double hr = rho_ / n, ht = 1.0 / n;
        for (double& x : rr.nodes)
            if (x >= rho_) x = rho_ - 0.25 * hr;
        for (double& t : tr.nodes)
            if (t <= 0.0) t = 0.25 * ht;
    }
    const Rule1d th = periodic_rule(std::max(4, 2 * ((n + 1) / 2) * 2));

    volume_.reserve(rr.nodes.size() * th.nodes.size() * tr.nodes.size());
    surface_.reserve(rr.nodes.size() * th.nodes.size());
    for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
        const double r = rr.nodes[i];
        for (std::size_t j = 0; j < th.nodes.size(); ++j) {
            const Vec2 xp{r * std::cos(th.nodes[j]), r * std::sin(th.nodes[j])};
            const double w2 = rr.weights[i] * r * th.weights[j];
            const double phv = graph_.value(xp);
            surface_.push_back({xp, {xp.x, xp.y, phv}, w2});
            for (std::size_t k = 0; k < tr.nodes.size(); ++k) {
                volume_.push_back(
                    {{xp.x, xp.y, phv + tr.nodes[k] * height_}, w2 * tr.weights[k] * height_});
            }
        }
    }
}

double DomainPatch::volume() const {
    KahanSum s;
    for (const auto& n : volume_) s.add(n.weight);
    return s.value();
}

DomainPatch DomainPatch::refined(int resolution) const {
    QuadratureSpec q = quad_;
    q.resolution = resolution;
    return DomainPatch(graph_, rho_, height_, q);
}

// ---------------------------------------------------------------------------
// Pointwise surface quantities

double second_difference(const GraphFunction& phi, Vec2 y, Vec2 z) {
    if (z.norm2() == 0.0) return 0.0;
    return phi.value(y + z) + phi.value(y - z) - 2.0 * phi.value(y);
}

ConvexityReport convexity_probe(const GraphFunction& phi, double rho, int samples,
                                std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("convexity_probe: samples >= 1");
    Rng rng(seed);
    ConvexityReport rep;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    int accepted = 0;
    while (accepted < samples) {
        const Vec2 y = rng.in_disk(rho);
        const double zr = rho - y.norm();
        const Vec2 z = rng.in_disk(zr);
        if (z.norm() < 1e-9 * rho) continue;
        const double ratio = second_difference(phi, y, z) / z.norm2();
        if (ratio < rep.min_ratio) {
            rep.min_ratio = ratio;
            rep.argmin_y = y;
            rep.argmin_z = z;
        }
        ++accepted;
    }
    rep.samples = samples;
    return rep;
}

ConvexityReport convexity_grid(const GraphFunction& phi, double rho, int grid) {
    ConvexityReport rep;
    rep.min_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double yr = rho * i / grid;
        const int nth = std::max(1, 4 * (i + 1));
        for (int j = 0; j < nth; ++j) {
            const double a = 2.0 * kPi * j / nth;
            const Vec2 y{yr * std::cos(a), yr * std::sin(a)};
            const double zmax = rho - yr;
            if (zmax <= 0.0) continue;
            for (int k = 1; k <= grid; ++k) {
                const double zr = zmax * k / (grid + 1);
                for (int l = 0; l < 8; ++l) {
                    const double b = 2.0 * kPi * (l + 0.31) / 8;
                    const Vec2 z{zr * std::cos(b), zr * std::sin(b)};
                    const double ratio = second_difference(phi, y, z) / z.norm2();
                    if (ratio < rep.min_ratio) {
                        rep.min_ratio = ratio;
                        rep.argmin_y = y;
                        rep.argmin_z = z;
                    }
                    ++rep.samples;
                }
            }
        }
    }
    return rep;
}

Vec3 unit_normal(const GraphFunction& phi, Vec2 xprime) {
    const Vec2 g = phi.gradient(xprime);
    const double s = std::sqrt(1.0 + g.norm2());
    return {g.x / s, g.y / s, -1.0 / s};
}

Mat3 weingarten(const GraphFunction& phi, Vec2 xprime) {
    const Vec2 g = phi.gradient(xprime);
    const Mat2 h = phi.hessian(xprime);
    const double s = 1.0 / std::sqrt(1.0 + g.norm2());
    Mat3 a;
    a(0, 0) = s * h(0, 0);
    a(0, 1) = a(1, 0) = s * 0.5 * (h(0, 1) + h(1, 0));
    a(1, 1) = s * h(1, 1);
    return a;
}

Mat3 boundary_frame(const GraphFunction& phi, Vec2 xprime) {
    const Vec2 g = phi.gradient(xprime);
    Mat3 m = Mat3::identity();
    m(0, 2) = g.x;
    m(1, 2) = g.y;
    m(2, 0) = -g.x;
    m(2, 1) = -g.y;
    return m;
}

double area_element(const GraphFunction& phi, Vec2 xprime) {
    return std::sqrt(1.0 + phi.gradient(xprime).norm2());
}

// ---------------------------------------------------------------------------
// External ball condition

namespace {

// Candidate center directions: the outward normal plus rings tilted toward
// the tangent plane. The normal ray is exact for C^2 boundaries; the cone
// covers Lipschitz kinks where the touching ball sits off-normal.
std::vector<Vec3> center_directions(const GraphFunction& phi, Vec2 p,
                                    const EbcSearchParams& params) {
    const Vec3 nu = unit_normal(phi, p);
    // tangent basis
    Vec3 t1 = std::abs(nu.z) < 0.9 ? nu.cross({0, 0, 1}) : nu.cross({1, 0, 0});
    t1 = t1 * (1.0 / t1.norm());
    const Vec3 t2 = nu.cross(t1);

    std::vector<Vec3> dirs{nu};
    for (int ring = 1; ring <= params.cone_rings; ++ring) {
        const double tilt = params.cone_aperture * ring / params.cone_rings;
        for (int k = 0; k < params.cone_samples; ++k) {
            const double a = 2.0 * kPi * k / params.cone_samples;
            Vec3 d = nu + tilt * (std::cos(a) * t1 + std::sin(a) * t2);
            dirs.push_back(d * (1.0 / d.norm()));
        }
    }
    return dirs;
}

// True when the open ball B_R(c) contains no patch node. The touching point
// itself sits on the sphere; a relative slack keeps it from registering.
bool ball_admissible(const DomainPatch& patch, const Vec3& c, double R) {
    const double r2 = R * R * (1.0 - 1e-12);
    for (const auto& n : patch.volume_nodes()) {
        if ((n.pos - c).norm2() < r2) return false;
    }
    for (const auto& n : patch.surface_nodes()) {
        if ((n.pos - c).norm2() < r2) return false;
    }
    return true;
}

}  // namespace

EbcResult ebc_radius(const DomainPatch& patch, Vec2 boundary_point,
                     const EbcSearchParams& params) {
    if (boundary_point.norm() >= patch.rho())
        throw std::invalid_argument("ebc_radius: boundary point must satisfy |x'| < rho");
    if (params.r_max <= 0.0 || params.tol <= 0.0)
        throw std::invalid_argument("ebc_radius: R_max and tol must be positive");
    if (patch.volume_nodes().empty())
        throw std::invalid_argument("ebc_radius: degenerate patch (no nodes)");

    const GraphFunction& phi = patch.graph();
    const Vec3 p{boundary_point.x, boundary_point.y, phi.value(boundary_point)};
    const auto dirs = center_directions(phi, boundary_point, params);

    auto admissible = [&](double R, Vec3* center) {
        for (const auto& d : dirs) {
            const Vec3 c = p + R * d;
            if (ball_admissible(patch, c, R)) {
                if (center) *center = c;
                return true;
            }
        }
        return false;
    };

    EbcResult res;
    res.point = boundary_point;

    Vec3 witness;
    if (admissible(params.r_max, &witness)) {
        res.radius = params.r_max;
        res.capped = true;
        res.witness_center = witness;
        return res;
    }

    // For each direction the admissible radii form an interval [0, R_d]
    // (smaller tangent balls are contained in larger ones), so the union over
    // directions is an interval and bisection applies.
    double lo = 0.0, hi = params.r_max;
    bool have_witness = false;
    for (int it = 0; it < params.max_bisection && (hi - lo) > params.tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (admissible(mid, &witness)) {
            lo = mid;
            have_witness = true;
        } else {
            hi = mid;
        }
    }
    res.radius = lo;
    if (have_witness) res.witness_center = witness;
    return res;
}

EbcInfimum ebc_infimum(const DomainPatch& patch, int samples, const EbcSearchParams& params) {
    if (samples < 1) throw std::invalid_argument("ebc_infimum: samples >= 1");

    // Deterministic rings; every ring contains the four axis points so that
    // ridge lines (wedge domains) are sampled exactly. Plus the origin.
    std::vector<Vec2> points{{0.0, 0.0}};
    const int rings = std::max(1, static_cast<int>(std::floor(std::sqrt(samples))));
    const double rmax = 0.9 * patch.rho();
    for (int i = 1; i <= rings && static_cast<int>(points.size()) < samples; ++i) {
        const double r = rmax * i / rings;
        const int nth = std::max(4, 4 * i);
        for (int j = 0; j < nth && static_cast<int>(points.size()) < samples; ++j) {
            const double a = 2.0 * kPi * j / nth;
            points.push_back({r * std::cos(a), r * std::sin(a)});
        }
    }

    EbcInfimum inf;
    inf.radius = std::numeric_limits<double>::infinity();
    for (const Vec2& pt : points) {
        EbcResult r = ebc_radius(patch, pt, params);
        if (r.radius < inf.radius) {
            inf.radius = r.radius;
            inf.capped = r.capped;
            inf.argmin_point = pt;
        }
        inf.per_point.push_back(std::move(r));
    }
    return inf;
}

std::string ebc_result_to_json(const EbcResult& r) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"point\":[" << r.point.x << "," << r.point.y << "],\"radius\":" << r.radius
       << ",\"capped\":" << (r.capped ? "true" : "false") << ",\"witness_center\":";
    if (r.witness_center) {
        os << "[" << r.witness_center->x << "," << r.witness_center->y << ","
           << r.witness_center->z << "]";
    } else {
        os << "null";
    }
    os << "}";
    return os.str();
}

}  // namespace maxlab::geometry
