#include "zeno/optimizer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "zeno/errors.hpp"

namespace zeno {

namespace {

void require_mod2_open_unit(double theta, double t_up_mod2, const char* who) {
    if (!std::isfinite(theta) || !std::isfinite(t_up_mod2)) {
        throw std::domain_error(std::string(who) + ": non-finite input");
    }
    if (t_up_mod2 >= 1.0) {
        throw NoFiniteOptimumError(std::string(who) +
                                   ": no finite optimum at t_up_mod2 = 1 (ideal QZE)");
    }
    if (t_up_mod2 <= 0.0) {
        throw std::domain_error(std::string(who) + ": t_up_mod2 must lie in (0, 1)");
    }
}

double loss_at(const LossModel& m, double t) noexcept {
    return m.a + m.b * t + m.c * t * t;
}

} // namespace

SearchResult n_opt_search(const std::function<double(long)>& survival, long n_max) {
    if (n_max < 1) {
        throw std::domain_error("n_opt_search: n_max must be >= 1");
    }
    SearchResult out;
    out.search_ceiling = n_max;
    out.n_opt = 1;
    out.p_at_opt = survival(1);
    for (long n = 2; n <= n_max; ++n) {
        const double p = survival(n);
        if (p > out.p_at_opt) {
            out.n_opt = n;
            out.p_at_opt = p;
        }
    }
    out.ceiling_hit = (out.n_opt == n_max);
    return out;
}

OptimumReport optimum_report(double theta, double t_up_mod2,
                             const std::function<double(long)>& survival, long search_ceiling) {
    const SearchResult search = n_opt_search(survival, search_ceiling);
    OptimumReport report;
    report.n_opt_exact = search.n_opt;
    report.p_at_exact = search.p_at_opt;
    report.search_ceiling = search.search_ceiling;
    report.ceiling_hit = search.ceiling_hit;
    report.n_opt_estimate = n_opt_estimate(theta, t_up_mod2);
    report.p_estimate = p_opt_estimate(theta, t_up_mod2);
    return report;
}

long n_opt_estimate(double theta, double t_up_mod2) {
    require_mod2_open_unit(theta, t_up_mod2, "n_opt_estimate");
    const double x = theta / std::sqrt(1.0 - t_up_mod2);
    return std::max(1L, std::lround(x));
}

double p_opt_estimate(double theta, double t_up_mod2) {
    require_mod2_open_unit(theta, t_up_mod2, "p_opt_estimate");
    const double p = 1.0 - 2.0 * theta * std::sqrt(1.0 - t_up_mod2);
    if (p < 0.0 || p > 1.0) {
        std::ostringstream msg;
        msg << "p_opt_estimate: value " << p << " outside [0, 1]; the asymptotic formula "
            << "does not apply at theta = " << theta << ", t_up_mod2 = " << t_up_mod2;
        throw OutOfRegimeError(msg.str());
    }
    return p;
}

long default_search_ceiling(double theta, double t_up_mod2) {
    if (t_up_mod2 >= 1.0) return 4000;
    return std::max(4 * n_opt_estimate(theta, t_up_mod2), 4000L);
}

double x_opt_root(double theta, double a) {
    if (!std::isfinite(theta) || !std::isfinite(a) || theta <= 0.0 || a <= 0.0 || a >= 1.0) {
        throw std::domain_error("x_opt_root: requires theta > 0 and a in (0, 1)");
    }
    const auto g = [theta, a](double x) {
        const double u = 2.0 * theta / x;
        return a * std::cos(u) - std::exp(-u * std::tan(u));
    };
    double lo = (4.0 * theta / std::numbers::pi) * (1.0 + 1e-9);
    double hi = 10.0 * 2.0 * theta / std::sqrt(std::log(1.0 / (a * a)));
    const double g_lo = g(lo);
    const double g_hi = g(hi);
    if (!(hi > lo) || !(g_lo > 0.0) || !(g_hi < 0.0)) {
        std::ostringstream msg;
        msg << "x_opt_root: no sign change in bracket [" << lo << ", " << hi << "]: g(lo) = "
            << g_lo << ", g(hi) = " << g_hi;
        throw NumericalError(msg.str());
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

LossModel::LossModel(double a, double b, double c, double tau_z, double alpha1, double alpha2,
                     double t_total)
    : a(a), b(b), c(c), tau_z(tau_z), alpha1(alpha1), alpha2(alpha2), t_total(t_total) {
    for (double v : {a, b, c, tau_z, alpha1, alpha2, t_total}) {
        if (!std::isfinite(v)) throw std::domain_error("LossModel: non-finite parameter");
    }
    if (a < 0.0 || a > 1.0) {
        throw std::domain_error("LossModel: a must lie in [0, 1]");
    }
    if (a == 1.0 && b > 0.0) {
        throw std::domain_error("LossModel: a = 1 requires b <= 0 to keep L(t) <= 1");
    }
    if (alpha1 <= 0.0 || alpha1 >= 1.0 || alpha2 <= 0.0 || alpha2 >= 1.0) {
        throw std::domain_error("LossModel: alpha1 and alpha2 must lie in (0, 1)");
    }
    if (std::abs(alpha1 + alpha2 - 1.0) > 1e-12) {
        throw std::domain_error("LossModel: alpha1 + alpha2 must equal 1");
    }
    if (tau_z <= 0.0 || t_total <= 0.0) {
        throw std::domain_error("LossModel: tau_z and t_total must be positive");
    }
    for (int k = 0; k < 1000; ++k) {
        const double t = t_total * static_cast<double>(k) / 999.0;
        const double ell = loss_at(*this, t);
        if (ell < -1e-12 || ell > 1.0 + 1e-12) {
            std::ostringstream msg;
            msg << "LossModel: L(" << t << ") = " << ell << " leaves [0, 1]";
            throw std::domain_error(msg.str());
        }
    }
}

double log_survival_general(const LossModel& model, double n) {
    const double ell = loss_at(model, model.t1() / n);
    const double ratio = model.t2() / (n * model.tau_z);
    const double p = 1.0 - ratio * ratio;
    if (!(ell > 0.0) || !(p > 0.0)) {
        return -std::numeric_limits<double>::infinity();
    }
    return n * std::log(ell) + n * std::log(p);
}

double stationarity_residual(const LossModel& model, double n) {
    const double t1 = model.t1();
    const double t2 = model.t2();
    const double ell = loss_at(model, t1 / n);
    const double ratio = t2 / (n * model.tau_z);
    const double p = 1.0 - ratio * ratio;
    if (!(ell > 0.0) || !(p > 0.0)) {
        throw OutOfRegimeError("stationarity_residual: L or p not positive at requested N");
    }
    const double ell_prime = model.b + 2.0 * model.c * (t1 / n);
    const double p_prime = -2.0 * t2 / (n * model.tau_z * model.tau_z);
    return std::log(ell) + std::log(p) - t1 * ell_prime / (n * ell) - t2 * p_prime / (n * p);
}

GeneralOptimum general_n_opt(const LossModel& model) {
    if (model.a >= 1.0) {
        throw NoFiniteOptimumError(
            "general_n_opt: a = 1 gives an infinite optimal frequency (lossless decompositions)");
    }
    if (model.a <= 0.0) {
        throw OutOfRegimeError("general_n_opt: requires a > 0");
    }
    const double shape = model.c / model.a - model.b * model.b / (2.0 * model.a * model.a);
    const double skew = model.tau_z * model.alpha1 / model.alpha2;
    const double radicand = 1.0 - skew * skew * shape;
    if (radicand <= 0.0) {
        std::ostringstream msg;
        msg << "general_n_opt: radicand " << radicand << " not positive; outside the regime of "
            << "the large-N expansion";
        throw OutOfRegimeError(msg.str());
    }
    GeneralOptimum out;
    out.n_opt = model.t_total * model.alpha2 /
                (model.tau_z * std::sqrt(std::log(1.0 / model.a))) * std::sqrt(radicand);
    out.stationarity_residual = stationarity_residual(model, out.n_opt);
    return out;
}

double general_p_opt(const LossModel& model) {
    if (model.a >= 1.0) {
        // infinite-frequency limit: losses linear in t still cap the survival
        return std::exp(model.b * model.t1());
    }
    const double n_opt = general_n_opt(model).n_opt;
    return std::exp(2.0 * n_opt * std::log(model.a) + model.b * model.t1() / model.a);
}

ContinuousMax maximize_log_survival(const LossModel& model, double n_hi) {
    double lo = std::max(1.0, model.t2() / model.tau_z * (1.0 + 1e-9));
    double hi = n_hi;
    if (!(hi > lo)) {
        throw std::domain_error("maximize_log_survival: empty search interval");
    }
    constexpr double inv_phi = 0.6180339887498949;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = log_survival_general(model, c);
    double fd = log_survival_general(model, d);
    while (hi - lo > 1e-8 * 0.5 * (std::abs(lo) + std::abs(hi))) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = log_survival_general(model, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = log_survival_general(model, d);
        }
    }
    const double n = 0.5 * (lo + hi);
    return {n, log_survival_general(model, n)};
}

} // namespace zeno
