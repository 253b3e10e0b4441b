#pragma once

#include <string>
#include <vector>

#include "maxlab/linalg.hpp"

namespace maxlab {

// Compensated accumulator; keeps quadrature sums deterministic to ~1e-16
// relative regardless of magnitude spread.
class KahanSum {
public:
    void add(double v) {
        const double y = v - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0, c_ = 0.0;
};

class KahanSumC {
public:
    void add(Complex v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

enum class Rule { Midpoint, Trapezoid, Gauss };

Rule rule_from_string(const std::string& name);
std::string rule_to_string(Rule r);

struct Rule1d {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1, 1], n points.
Rule1d gauss_legendre(int n);

// Composite rule on [a, b] with n cells (Gauss uses `gauss_order` points per
// cell; Trapezoid has n+1 nodes).
Rule1d line_rule(double a, double b, int n, Rule rule, int gauss_order = 4);

// Uniform periodic rule on [0, 2*pi): n midpoints, weight 2*pi/n. For smooth
// periodic integrands this converges spectrally.
Rule1d periodic_rule(int n);

// Quadrature configuration shared by patches and kernels. `resolution` is the
// per-axis cell count, `fd_step` the default finite-difference step for
// derivative fallbacks.
struct QuadratureSpec {
    int resolution = 24;
    Rule rule = Rule::Midpoint;
    int gauss_order = 4;
    double fd_step = 1e-5;

    void validate() const;
};

}  // namespace maxlab
