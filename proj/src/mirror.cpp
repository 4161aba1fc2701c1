#include "zeno/mirror.hpp"

#include <cmath>
#include <stdexcept>

namespace zeno {

namespace {

constexpr double kNormSlack = 1e-9;

double column_budget(const Operator2& t, const Operator2& r, int col) {
    return std::norm(t(0, col)) + std::norm(t(1, col)) +
           std::norm(r(0, col)) + std::norm(r(1, col));
}

} // namespace

DiagonalMirror::DiagonalMirror(Complex t_up, Complex t_down, Complex r_up, Complex r_down)
    : t_up(t_up), t_down(t_down), r_up(r_up), r_down(r_down) {
    for (Complex z : {t_up, t_down, r_up, r_down}) {
        if (!is_finite(z)) throw std::domain_error("DiagonalMirror: non-finite coefficient");
    }
    if (std::norm(t_up) + std::norm(r_up) > 1.0 + kNormSlack ||
        std::norm(t_down) + std::norm(r_down) > 1.0 + kNormSlack) {
        throw std::domain_error("DiagonalMirror: |t|^2 + |r|^2 exceeds 1");
    }
}

DiagonalMirror DiagonalMirror::conservative(Complex t_up, Complex t_down) {
    if (!is_finite(t_up) || !is_finite(t_down)) {
        throw std::domain_error("DiagonalMirror: non-finite coefficient");
    }
    const double ru2 = 1.0 - std::norm(t_up);
    const double rd2 = 1.0 - std::norm(t_down);
    if (ru2 < -kNormSlack || rd2 < -kNormSlack) {
        throw std::domain_error("DiagonalMirror: |t|^2 exceeds 1, no conservative completion");
    }
    return {t_up, t_down, std::sqrt(std::max(ru2, 0.0)), std::sqrt(std::max(rd2, 0.0))};
}

SpinFlipMirror::SpinFlipMirror(const Operator2& t_matrix, const Operator2& r_matrix)
    : t_matrix(t_matrix), r_matrix(r_matrix) {
    if (!t_matrix.finite() || !r_matrix.finite()) {
        throw std::domain_error("SpinFlipMirror: non-finite coefficient");
    }
    for (int col : {0, 1}) {
        if (column_budget(t_matrix, r_matrix, col) > 1.0 + kNormSlack) {
            throw std::domain_error("SpinFlipMirror: column norm budget exceeds 1");
        }
    }
}

Operator2 transmit_operator(const MirrorModel& m) {
    return std::visit(
        [](const auto& mirror) -> Operator2 {
            using T = std::decay_t<decltype(mirror)>;
            if constexpr (std::is_same_v<T, IdealMirror>) {
                return Operator2::diagonal(1.0, 0.0);
            } else if constexpr (std::is_same_v<T, DiagonalMirror>) {
                return Operator2::diagonal(mirror.t_up, mirror.t_down);
            } else {
                return mirror.t_matrix;
            }
        },
        m);
}

Operator2 reflect_operator(const MirrorModel& m) {
    return std::visit(
        [](const auto& mirror) -> Operator2 {
            using T = std::decay_t<decltype(mirror)>;
            if constexpr (std::is_same_v<T, IdealMirror>) {
                return Operator2::diagonal(0.0, 1.0);
            } else if constexpr (std::is_same_v<T, DiagonalMirror>) {
                return Operator2::diagonal(mirror.r_up, mirror.r_down);
            } else {
                return mirror.r_matrix;
            }
        },
        m);
}

bool is_conservative(const MirrorModel& m) {
    return std::visit(
        [](const auto& mirror) -> bool {
            using T = std::decay_t<decltype(mirror)>;
            if constexpr (std::is_same_v<T, IdealMirror>) {
                return true;
            } else if constexpr (std::is_same_v<T, DiagonalMirror>) {
                return std::abs(std::norm(mirror.t_up) + std::norm(mirror.r_up) - 1.0) <= kNormSlack &&
                       std::abs(std::norm(mirror.t_down) + std::norm(mirror.r_down) - 1.0) <= kNormSlack;
            } else {
                return std::abs(column_budget(mirror.t_matrix, mirror.r_matrix, 0) - 1.0) <= kNormSlack &&
                       std::abs(column_budget(mirror.t_matrix, mirror.r_matrix, 1) - 1.0) <= kNormSlack;
            }
        },
        m);
}

double transmit_up_mod2(const MirrorModel& m) {
    return std::norm(transmit_operator(m)(0, 0));
}

} // namespace zeno
