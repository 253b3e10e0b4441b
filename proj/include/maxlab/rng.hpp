#pragma once

#include <cstdint>
#include <random>

#include "maxlab/linalg.hpp"

// Deterministic random sources. All Monte Carlo entry points take an explicit
// seed; per-trial substreams are derived with splitmix64 so that sweeps are
// reproducible regardless of iteration order. Uniform doubles are generated
// from raw 64-bit output (not std::uniform_real_distribution) so that the
// byte-identical determinism guarantee does not depend on library internals.

namespace maxlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed ^ (0x517cc1b727220a95ULL * (index + 1)));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * kPi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    Complex cnormal() { return {normal(), normal()}; }

    Vec2 in_disk(double radius) {
        // rejection-free polar sampling, uniform in area
        const double r = radius * std::sqrt(uniform());
        const double t = 2.0 * kPi * uniform();
        return {r * std::cos(t), r * std::sin(t)};
    }

    Vec3 in_ball(double radius) {
        const double r = radius * std::cbrt(uniform());
        const double z = uniform(-1.0, 1.0);
        const double t = 2.0 * kPi * uniform();
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * s * std::cos(t), r * s * std::sin(t), r * z};
    }

    // Uniform rotation from a random unit quaternion.
    Mat3 rotation() {
        double q0 = normal(), q1 = normal(), q2 = normal(), q3 = normal();
        const double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
        q0 /= n;
        q1 /= n;
        q2 /= n;
        q3 /= n;
        Mat3 m;
        m(0, 0) = 1 - 2 * (q2 * q2 + q3 * q3);
        m(0, 1) = 2 * (q1 * q2 - q0 * q3);
        m(0, 2) = 2 * (q1 * q3 + q0 * q2);
        m(1, 0) = 2 * (q1 * q2 + q0 * q3);
        m(1, 1) = 1 - 2 * (q1 * q1 + q3 * q3);
        m(1, 2) = 2 * (q2 * q3 - q0 * q1);
        m(2, 0) = 2 * (q1 * q3 - q0 * q2);
        m(2, 1) = 2 * (q2 * q3 + q0 * q1);
        m(2, 2) = 1 - 2 * (q1 * q1 + q2 * q2);
        return m;
    }

    // Random orthogonal matrix (rotation or rotation composed with a
    // reflection), covering both components of O(3).
    Mat3 orthogonal() {
        Mat3 m = rotation();
        if (uniform() < 0.5) {
            for (int i = 0; i < 3; ++i) m(i, 0) = -m(i, 0);
        }
        return m;
    }

    // SPD matrix with eigenvalues drawn uniformly in [lo, hi].
    Mat3 spd(double lo, double hi) {
        const Mat3 o = rotation();
        const Mat3 d = Mat3::diag(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi));
        return o * d * o.transposed();
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace maxlab
