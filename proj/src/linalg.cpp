#include "maxlab/linalg.hpp"

#include <algorithm>

namespace maxlab {

namespace {

// Characteristic polynomial p(x) = det(m - x I) and its derivative.
std::pair<double, double> char_poly(const Mat3& m, double x) {
    const double c2 = -m.trace();
    // sum of principal 2x2 minors
    const double c1 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) -
                      m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
    const double c0 = -m.det();
    const double p = ((x + c2) * x + c1) * x + c0;    // x^3 + c2 x^2 + c1 x + c0
    const double dp = (3.0 * x + 2.0 * c2) * x + c1;
    return {p, dp};
}

}  // namespace

Eigen3 sym_eigenvalues(const Mat3& m) {
    const double q = m.trace() / 3.0;
    Mat3 b = m;
    b(0, 0) -= q;
    b(1, 1) -= q;
    b(2, 2) -= q;
    double p2 = 0.0;
    for (double v : b.a) p2 += v * v;
    const double p = std::sqrt(p2 / 6.0);

    Eigen3 e;
    if (p < 1e-300 || p < 1e-15 * std::abs(q)) {
        e.lam1 = e.lam2 = e.lam3 = q;
        return e;
    }
    const Mat3 bn = b * (1.0 / p);
    double r = bn.det() / 2.0;
    r = std::clamp(r, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;

    double l1 = q + 2.0 * p * std::cos(phi);
    double l3 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
    double l2 = 3.0 * q - l1 - l3;

    // Newton polish; -p/dp is a correction of size O(eps * scale).
    auto polish = [&m](double x) {
        for (int it = 0; it < 2; ++it) {
            auto [f, df] = char_poly(m, x);
            if (std::abs(df) < 1e-300) break;
            const double step = f / df;
            if (!std::isfinite(step)) break;
            x -= step;
        }
        return x;
    };
    l1 = polish(l1);
    l2 = polish(l2);
    l3 = polish(l3);

    std::array<double, 3> ls{l1, l2, l3};
    std::sort(ls.begin(), ls.end(), std::greater<>{});
    e.lam1 = ls[0];
    e.lam2 = ls[1];
    e.lam3 = ls[2];
    return e;
}

}  // namespace maxlab
