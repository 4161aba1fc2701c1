// optimizer.hpp — optimal measurement count: exhaustive integer argmax,
// the analytic peak estimates, the x_opt root equation, and the general
// lossy-measurement framework (instantaneous loss a, linear/quadratic
// loss rates b, c, split of the stage time between decomposition and
// free evolution).

#pragma once

#include <functional>

#include "zeno/engine.hpp"

namespace zeno {

// Result of the exhaustive scan over N = 1..search_ceiling; smallest argmax
// wins ties. ceiling_hit means the maximum sat on the ceiling and the true
// optimum may lie beyond it.
struct SearchResult {
    long n_opt = 1;
    double p_at_opt = 0.0;
    long search_ceiling = 1;
    bool ceiling_hit = false;
};

// Full optimum report: exact search plus the analytic estimates.
struct OptimumReport {
    long n_opt_exact = 1;
    double p_at_exact = 0.0;
    long n_opt_estimate = 1;
    double p_estimate = 0.0;
    long search_ceiling = 1;
    bool ceiling_hit = false;
};

SearchResult n_opt_search(const std::function<double(long)>& survival, long n_max);

// Runs the exhaustive search and attaches the analytic estimates for the
// given loss. Requires t_up_mod2 in (0, 1); propagates OutOfRegimeError when
// the probability estimate leaves [0, 1].
OptimumReport optimum_report(double theta, double t_up_mod2,
                             const std::function<double(long)>& survival, long search_ceiling);

// Closest integer to theta / sqrt(1 - t_up_mod2) (half away from zero),
// floored at 1. Throws NoFiniteOptimumError at t_up_mod2 = 1.
long n_opt_estimate(double theta, double t_up_mod2);

// 1 - 2 theta sqrt(1 - t_up_mod2); below zero the asymptotic formula does
// not apply and OutOfRegimeError is thrown.
double p_opt_estimate(double theta, double t_up_mod2);

// max(4 * n_opt_estimate, 4000); 4000 alone when no finite estimate exists.
long default_search_ceiling(double theta, double t_up_mod2);

// Maximizer of f(x) = a^x cos^x(2 theta / x): solves
// a cos(2 theta/x) = exp(-(2 theta/x) tan(2 theta/x)) by bisection on
// (4 theta/pi, 10 * 2 theta/sqrt(ln a^-2)) to absolute tolerance 1e-10.
// The bracket is validated by sign change (NumericalError otherwise).
double x_opt_root(double theta, double a);

// Parameters of the general lossy framework: one stage spends t1 = alpha1*t
// in the decomposition with loss factor L(t) = a + b t + c t^2 and
// t2 = alpha2*t evolving with short-time survival p(t) = 1 - (t/tau_z)^2.
struct LossModel {
    double a;
    double b;
    double c;
    double tau_z;
    double alpha1;
    double alpha2;
    double t_total;

    LossModel(double a, double b, double c, double tau_z, double alpha1, double alpha2,
              double t_total);

    double t1() const noexcept { return alpha1 * t_total; }
    double t2() const noexcept { return alpha2 * t_total; }
};

struct GeneralOptimum {
    double n_opt = 0.0;
    double stationarity_residual = 0.0;
};

// ln P^(N) = N ln L(t1/N) + N ln p(t2/N); -infinity where L or p is not
// positive.
double log_survival_general(const LossModel& model, double n);

// Residual of d/dN ln P^(N) = 0 at the given N. Throws OutOfRegimeError
// where L or p is not positive.
double stationarity_residual(const LossModel& model, double n);

// Analytic optimal stage count
// N_opt = t alpha2 / (tau_z sqrt(ln 1/a)) * sqrt(1 - tau_z^2 (alpha1/alpha2)^2 (c/a - b^2/2a^2)),
// with the stationarity residual at that N as a diagnostic. a = 1 throws
// NoFiniteOptimumError (infinite optimal frequency); a negative radicand
// throws OutOfRegimeError.
GeneralOptimum general_n_opt(const LossModel& model);

// Maximal survival probability a^(2 N_opt) exp(b t1 / a); for a = 1 the
// infinite-frequency limit exp(b t1) = exp(-|b| t1).
double general_p_opt(const LossModel& model);

struct ContinuousMax {
    double n = 0.0;
    double log_value = 0.0;
};

// Golden-section maximization of log_survival_general on
// [max(1, t2/tau_z), n_hi], relative tolerance 1e-8. The independent
// numeric route against which the analytic formula is checked.
ContinuousMax maximize_log_survival(const LossModel& model, double n_hi = 1e6);

} // namespace zeno
