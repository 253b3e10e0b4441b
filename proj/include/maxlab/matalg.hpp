#pragma once

#include <cstdint>
#include <string>

#include "maxlab/linalg.hpp"

namespace maxlab::matalg {

// Self-adjoint real 3x3 matrix with its spectral data. beta0/beta1 default to
// the extreme eigenvalues; callers may widen them (the trace inequality holds
// for any valid bounds).
struct SymMatrix3 {
    Mat3 m;
    Eigen3 eig;
    double beta0 = 0.0;  // lower spectral bound
    double beta1 = 0.0;  // upper spectral bound

    static SymMatrix3 from(const Mat3& a);
    static SymMatrix3 from(const Mat3& a, double beta0, double beta1);
    bool positive_definite() const { return eig.min() > 0.0; }
};

struct TraceForms {
    double t1 = 0.0;  // Re tr(BU conj(BU))
    double t2 = 0.0;  // tr(U U*)          (= squared Frobenius norm)
    double t3 = 0.0;  // Re tr(U conj(U))
};

TraceForms trace_forms(const SymMatrix3& b, const CMat3& u);

// t1 + beta1^2 (t2 - t3) - beta0^2 t2; nonnegative for positive definite B.
double lemma_residual(const SymMatrix3& b, const CMat3& u);

// Residual of the off-diagonal pair inequality:
//   lam_i lam_j (w_ij conj(w_ji) + w_ji conj(w_ij))
//     + beta1^2 (|w_ij|^2 + |w_ji|^2 - w_ij conj(w_ji) - w_ji conj(w_ij))
//     - beta0^2 (|w_ij|^2 + |w_ji|^2)
// Requires beta1 >= lam_i, lam_j >= beta0 > 0.
double offdiag_inequality(double lam_i, double lam_j, double beta0, double beta1, Complex wij,
                          Complex wji);

// ---------------------------------------------------------------------------
// Monte Carlo sweep over random SPD B and random complex U.

struct SweepConfig {
    std::int64_t trials = 1000000;
    std::uint64_t seed = 1;
    double eig_lo = 0.1;
    double eig_hi = 10.0;
    double u_norm_cap = 10.0;  // Frobenius norm bound for U
};

struct SweepResult {
    std::int64_t trials = 0;
    double min_residual = 0.0;          // most negative raw residual seen
    double min_scaled_residual = 0.0;   // min of residual / (|B|_F^2 |U|_F^2)
    double mean_residual = 0.0;
    Mat3 argmin_b;
    CMat3 argmin_u;
    std::string to_json() const;
};

SweepResult residual_sweep(const SweepConfig& cfg);

// Worst deviation |residual(O B O^T, O U O^T) - residual(B, U)| over random
// orthogonal O (the diagonalizing change of basis of the proof, exercised as
// an invariance).
double orthogonal_invariance_sweep(std::int64_t trials, std::uint64_t seed);

}  // namespace maxlab::matalg
