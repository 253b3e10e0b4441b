#include "maxlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace maxlab {

Rule rule_from_string(const std::string& name) {
    if (name == "midpoint") return Rule::Midpoint;
    if (name == "trapezoid") return Rule::Trapezoid;
    if (name == "gauss") return Rule::Gauss;
    throw std::invalid_argument("unknown quadrature rule '" + name +
                                "' (valid: midpoint, trapezoid, gauss)");
}

std::string rule_to_string(Rule r) {
    switch (r) {
        case Rule::Midpoint: return "midpoint";
        case Rule::Trapezoid: return "trapezoid";
        case Rule::Gauss: return "gauss";
    }
    return "?";
}

Rule1d gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");

    static std::mutex mtx;
    static std::map<int, Rule1d> cache;
    {
        std::lock_guard lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }

    Rule1d r;
    r.nodes.resize(n);
    r.weights.resize(n);
    // Newton iteration from the Chebyshev initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }

    std::lock_guard lock(mtx);
    cache[n] = r;
    return r;
}

Rule1d line_rule(double a, double b, int n, Rule rule, int gauss_order) {
    if (n < 1) throw std::invalid_argument("line_rule: n must be >= 1");
    if (b <= a) throw std::invalid_argument("line_rule: empty interval");
    Rule1d r;
    const double h = (b - a) / n;
    switch (rule) {
        case Rule::Midpoint:
            for (int i = 0; i < n; ++i) {
                r.nodes.push_back(a + (i + 0.5) * h);
                r.weights.push_back(h);
            }
            break;
        case Rule::Trapezoid:
            for (int i = 0; i <= n; ++i) {
                r.nodes.push_back(a + i * h);
                r.weights.push_back((i == 0 || i == n) ? h / 2.0 : h);
            }
            break;
        case Rule::Gauss: {
            if (gauss_order < 1) throw std::invalid_argument("line_rule: gauss order >= 1");
            const Rule1d base = gauss_legendre(gauss_order);
            for (int i = 0; i < n; ++i) {
                const double c0 = a + i * h;
                for (int q = 0; q < gauss_order; ++q) {
                    r.nodes.push_back(c0 + 0.5 * h * (base.nodes[q] + 1.0));
                    r.weights.push_back(0.5 * h * base.weights[q]);
                }
            }
            break;
        }
    }
    return r;
}

Rule1d periodic_rule(int n) {
    if (n < 1) throw std::invalid_argument("periodic_rule: n must be >= 1");
    Rule1d r;
    const double h = 2.0 * kPi / n;
    for (int i = 0; i < n; ++i) {
        r.nodes.push_back((i + 0.5) * h);
        r.weights.push_back(h);
    }
    return r;
}

void QuadratureSpec::validate() const {
    if (resolution < 2) throw std::invalid_argument("QuadratureSpec: resolution must be >= 2");
    if (fd_step <= 0.0) throw std::invalid_argument("QuadratureSpec: fd_step must be > 0");
    if (rule == Rule::Gauss && gauss_order < 1)
        throw std::invalid_argument("QuadratureSpec: gauss_order must be >= 1");
}

}  // namespace maxlab
