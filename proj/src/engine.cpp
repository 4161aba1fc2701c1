#include "zeno/engine.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

constexpr double kConfluenceRel = 1e-8;
constexpr double kClampBand = 1e-12;

// Exact results may poke out of [0, 1] by rounding only. Anything beyond
// the band is a formula misuse, not noise, and must not be hidden.
double clamp_probability_checked(double raw, const char* who) {
    if (!std::isfinite(raw) || raw < -kClampBand || raw > 1.0 + kClampBand) {
        throw NumericalError(std::string(who) + ": probability " + std::to_string(raw) +
                             " outside tolerated band [0, 1]");
    }
    return std::min(std::max(raw, 0.0), 1.0);
}

double clamp01(double x) noexcept {
    return std::min(std::max(x, 0.0), 1.0);
}

struct DiagonalCoefficients {
    Complex t_up, t_down;
};

DiagonalCoefficients diagonal_coefficients(const ZenoRun& run, const char* who) {
    if (std::holds_alternative<IdealMirror>(run.mirror)) {
        return {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    }
    if (const auto* d = std::get_if<DiagonalMirror>(&run.mirror)) {
        return {d->t_up, d->t_down};
    }
    throw std::invalid_argument(std::string(who) + ": run requires an ideal or diagonal mirror");
}

} // namespace

ZenoRun::ZenoRun(double theta, long n_stages, MirrorModel mirror)
    : theta(theta), n_stages(n_stages), mirror(std::move(mirror)) {
    if (!std::isfinite(theta)) {
        throw std::domain_error("ZenoRun: non-finite theta");
    }
    if (n_stages < 1) {
        throw std::domain_error("ZenoRun: n_stages must be >= 1");
    }
}

bool ZenoRun::beyond_standard_regime() const noexcept {
    return theta < 0.0 || theta > std::numbers::pi / 2;
}

double BranchLedger::total() const noexcept {
    double sum = detected + absorbed;
    for (double r : reflected) sum += r;
    return sum;
}

ABCoefficients ab_coefficients(Complex xi_plus, Complex xi_minus, long n) {
    if (n < 1) {
        throw std::domain_error("ab_coefficients: n must be >= 1");
    }
    const double scale = std::max(std::abs(xi_plus), std::abs(xi_minus));
    if (std::abs(xi_plus - xi_minus) <= kConfluenceRel * scale) {
        const Complex xi = 0.5 * (xi_plus + xi_minus);
        return {static_cast<double>(n + 1) * pow_int(xi, n),
                static_cast<double>(n) * pow_int(xi, n - 1)};
    }
    const Complex diff = xi_plus - xi_minus;
    return {(pow_int(xi_plus, n + 1) - pow_int(xi_minus, n + 1)) / diff,
            (pow_int(xi_plus, n) - pow_int(xi_minus, n)) / diff};
}

Operator2 transfer_operator(const MirrorModel& m, double theta_step) {
    return transmit_operator(m) * rotation(theta_step);
}

double survival_ideal(double theta, long n) {
    if (!std::isfinite(theta)) {
        throw std::domain_error("survival_ideal: non-finite theta");
    }
    if (n < 1) {
        throw std::domain_error("survival_ideal: n must be >= 1");
    }
    const double c = std::cos(theta / static_cast<double>(n));
    if (c <= 0.0) return 0.0;
    return clamp01(std::exp(2.0 * static_cast<double>(n) * std::log(c)));
}

double survival_exact_diagonal(const ZenoRun& run) {
    const auto [t_up, t_down] = diagonal_coefficients(run, "survival_exact_diagonal");
    const long n = run.n_stages;
    const double step = run.theta / static_cast<double>(n);
    const double c = std::cos(step);
    const double s = std::sin(step);
    const auto xi = eigenvalues(transfer_operator(run.mirror, step));
    const auto [a, b] = ab_coefficients(xi.plus, xi.minus, n);
    const double raw = std::norm(a - b * t_down * c) + std::norm(b * t_down * s);
    return clamp_probability_checked(raw, "survival_exact_diagonal");
}

double survival_exact_spinflip(const ZenoRun& run) {
    const auto* sf = std::get_if<SpinFlipMirror>(&run.mirror);
    if (sf == nullptr) {
        throw std::invalid_argument("survival_exact_spinflip: run requires a spin-flip mirror");
    }
    const long n = run.n_stages;
    const double step = run.theta / static_cast<double>(n);
    const double c = std::cos(step);
    const double s = std::sin(step);
    const Complex i{0.0, 1.0};
    const Complex t_dd = sf->t_matrix(1, 1);
    const Complex t_du = sf->t_matrix(1, 0);
    const auto xi = eigenvalues(transfer_operator(run.mirror, step));
    const auto [a, b] = ab_coefficients(xi.plus, xi.minus, n);
    const double raw = std::norm(a - b * (t_dd * c - i * t_du * s)) +
                       std::norm(b * (t_dd * s + i * t_du * c));
    return clamp_probability_checked(raw, "survival_exact_spinflip");
}

double survival_exact(const ZenoRun& run) {
    if (std::holds_alternative<SpinFlipMirror>(run.mirror)) {
        return survival_exact_spinflip(run);
    }
    return survival_exact_diagonal(run);
}

OracleResult survival_oracle(const ZenoRun& run) {
    const double step = run.theta / static_cast<double>(run.n_stages);
    const Operator2 u = rotation(step);
    const Operator2 t = transmit_operator(run.mirror);
    const Operator2 r = reflect_operator(run.mirror);

    OracleResult out;
    out.ledger.reflected.reserve(static_cast<std::size_t>(run.n_stages));
    SpinState state = SpinState::spin_up();
    for (long stage = 0; stage < run.n_stages; ++stage) {
        state = u.apply(state);
        const double before = state.norm2();
        const double exited = r.apply(state).norm2();
        state = t.apply(state);
        out.ledger.reflected.push_back(exited);
        out.ledger.absorbed += before - exited - state.norm2();
    }
    out.ledger.detected = state.norm2();
    out.probability = out.ledger.detected;
    return out;
}

double survival_first_order(const ZenoRun& run) {
    const auto [t_up, t_down] = diagonal_coefficients(run, "survival_first_order");
    if (run.n_stages == 1) {
        throw std::domain_error(
            "survival_first_order: expansion is valid for N >= 2; "
            "use the exact N = 1 formula sin^2(theta)|t_down|^2 + cos^2(theta)|t_up|^2");
    }
    if (std::abs(t_down) >= std::abs(t_up)) {
        throw std::domain_error("survival_first_order: requires |t_down/t_up| < 1");
    }
    const long n = run.n_stages;
    const double step = run.theta / static_cast<double>(n);
    const double tan_step = std::tan(step);
    const double leading = survival_dominant(run.theta, std::norm(t_up), n);
    const double correction =
        1.0 - 2.0 * (t_down / t_up).real() * static_cast<double>(n - 1) * tan_step * tan_step;
    return clamp01(leading * correction);
}

double survival_dominant(double theta, double t_up_mod2, long n) {
    if (!std::isfinite(theta) || !std::isfinite(t_up_mod2)) {
        throw std::domain_error("survival_dominant: non-finite input");
    }
    if (t_up_mod2 <= 0.0 || t_up_mod2 > 1.0) {
        throw std::domain_error("survival_dominant: t_up_mod2 must lie in (0, 1]");
    }
    if (n < 1) {
        throw std::domain_error("survival_dominant: n must be >= 1");
    }
    const double c = std::cos(theta / static_cast<double>(n));
    if (c <= 0.0) return 0.0;
    const double log_p =
        static_cast<double>(n) * std::log(t_up_mod2) + 2.0 * static_cast<double>(n) * std::log(c);
    return clamp01(std::exp(log_p));
}

} // namespace zeno
