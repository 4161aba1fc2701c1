// engine.hpp — survival probability after N rotation + mirror stages, by
// four routes: exact closed form (eigenvalue-based), brute-force stage
// propagation with a branch ledger, first-order expansion, and the
// dominant approximation.

#pragma once

#include <vector>

#include "zeno/mirror.hpp"

namespace zeno {

// One experiment: total precession half-angle theta, N stages, mirror model.
struct ZenoRun {
    double theta;
    long n_stages;
    MirrorModel mirror;

    ZenoRun(double theta, long n_stages, MirrorModel mirror);

    // theta outside [0, pi/2]; such runs are accepted but flagged.
    bool beyond_standard_regime() const noexcept;
};

// Exhaustive probability accounting: the detected (transmitted) channel,
// one reflected exit per mirror, and the absorbed remainder.
// detected + sum(reflected) + absorbed = 1 for any physical mirror;
// absorbed stays 0 for conservative ones.
struct BranchLedger {
    double detected = 0.0;
    std::vector<double> reflected;
    double absorbed = 0.0;

    double total() const noexcept;
};

struct OracleResult {
    double probability = 0.0;
    BranchLedger ledger;
};

// A(n) = (xi+^(n+1) - xi-^(n+1)) / (xi+ - xi-), B(n) likewise with power n.
struct ABCoefficients {
    Complex a_n, b_n;
};

// Computes A(n), B(n) from an eigenvalue pair, switching to the confluent
// limit A = (n+1) xi^n, B = n xi^(n-1) when |xi+ - xi-| <= 1e-8 max|xi|.
ABCoefficients ab_coefficients(Complex xi_plus, Complex xi_minus, long n);

// Per-stage map: transmit operator composed with the rotation by theta_step.
Operator2 transfer_operator(const MirrorModel& m, double theta_step);

// Ideal-mirror survival (cos(theta/n))^(2n), clamped to [0, 1].
double survival_ideal(double theta, long n);

// Exact closed form for ideal or diagonal mirrors:
// |A - B t_down cos(theta/N)|^2 + |B t_down sin(theta/N)|^2.
double survival_exact_diagonal(const ZenoRun& run);

// Exact closed form for spin-flip mirrors:
// |A - B (T_dd cos - i T_du sin)|^2 + |B (T_dd sin + i T_du cos)|^2.
double survival_exact_spinflip(const ZenoRun& run);

// Dispatches to the closed form matching the run's mirror model.
double survival_exact(const ZenoRun& run);

// Brute-force stage propagation: apply rotation then mirror N times,
// recording the reflected exit probability at each mirror. Independent of
// the closed forms above; the oracle they are validated against.
OracleResult survival_oracle(const ZenoRun& run);

// First-order expansion in t_down/t_up, valid for N >= 2 (N = 1 throws
// std::domain_error; use the exact formula there):
// |t_up|^(2N) cos^(2N)(theta/N) [1 - 2 Re(t_down/t_up) (N-1) tan^2(theta/N)],
// clamped to [0, 1].
double survival_first_order(const ZenoRun& run);

// Dominant approximation t_up_mod2^N (cos(theta/N))^(2N).
double survival_dominant(double theta, double t_up_mod2, long n);

} // namespace zeno
