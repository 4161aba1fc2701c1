#include "zeno/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace zeno {

namespace {

constexpr double kConfluenceRel = 1e-8;

void require_finite(const Operator2& m, const char* who) {
    if (!m.finite()) {
        throw std::domain_error(std::string(who) + ": non-finite matrix entry");
    }
}

} // namespace

bool is_finite(Complex z) noexcept {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

SpinState SpinState::checked(Complex up, Complex down) {
    if (!is_finite(up) || !is_finite(down)) {
        throw std::domain_error("SpinState: non-finite amplitude");
    }
    SpinState s{up, down};
    if (s.norm2() > 1.0 + 1e-9) {
        throw std::domain_error("SpinState: norm2 exceeds 1 (super-normalized state)");
    }
    return s;
}

double SpinState::norm2() const noexcept {
    return std::norm(up) + std::norm(down);
}

Operator2 Operator2::identity() {
    return {1.0, 0.0, 0.0, 1.0};
}

Operator2 Operator2::diagonal(Complex a, Complex b) {
    return {a, 0.0, 0.0, b};
}

Operator2 Operator2::sigma_x() {
    return {0.0, 1.0, 1.0, 0.0};
}

Operator2 Operator2::sigma_y() {
    return {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0};
}

Operator2 Operator2::sigma_z() {
    return {1.0, 0.0, 0.0, -1.0};
}

Operator2 Operator2::from_pauli(const PauliCoefficients& c) {
    const Complex i{0.0, 1.0};
    return {c.s0 + c.sz, c.sx - i * c.sy, c.sx + i * c.sy, c.s0 - c.sz};
}

Operator2 Operator2::operator*(const Operator2& r) const {
    return {e_[0] * r.e_[0] + e_[1] * r.e_[2], e_[0] * r.e_[1] + e_[1] * r.e_[3],
            e_[2] * r.e_[0] + e_[3] * r.e_[2], e_[2] * r.e_[1] + e_[3] * r.e_[3]};
}

Operator2 Operator2::operator+(const Operator2& r) const {
    return {e_[0] + r.e_[0], e_[1] + r.e_[1], e_[2] + r.e_[2], e_[3] + r.e_[3]};
}

Operator2 Operator2::operator-(const Operator2& r) const {
    return {e_[0] - r.e_[0], e_[1] - r.e_[1], e_[2] - r.e_[2], e_[3] - r.e_[3]};
}

Operator2 operator*(Complex s, const Operator2& m) {
    return {s * m.e_[0], s * m.e_[1], s * m.e_[2], s * m.e_[3]};
}

SpinState Operator2::apply(const SpinState& s) const {
    return {e_[0] * s.up + e_[1] * s.down, e_[2] * s.up + e_[3] * s.down};
}

Operator2 Operator2::adjoint() const {
    return {std::conj(e_[0]), std::conj(e_[2]), std::conj(e_[1]), std::conj(e_[3])};
}

PauliCoefficients Operator2::pauli() const {
    const Complex i{0.0, 1.0};
    return {0.5 * (e_[0] + e_[3]), 0.5 * (e_[1] + e_[2]),
            0.5 * i * (e_[1] - e_[2]), 0.5 * (e_[0] - e_[3])};
}

bool Operator2::finite() const noexcept {
    for (const auto& z : e_) {
        if (!is_finite(z)) return false;
    }
    return true;
}

double Operator2::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : e_) m = std::max(m, std::abs(z));
    return m;
}

double Operator2::unitarity_defect() const {
    const Operator2 g = adjoint() * (*this);
    const Operator2 d = g - identity();
    return d.max_abs();
}

EigenPair eigenvalues(const Operator2& m) {
    require_finite(m, "eigenvalues");
    const Complex half_trace = 0.5 * m.trace();
    const Complex root = std::sqrt(half_trace * half_trace - m.determinant());
    return {half_trace + root, half_trace - root};
}

Operator2 rotation(double theta_step) {
    if (!std::isfinite(theta_step)) {
        throw std::domain_error("rotation: non-finite angle");
    }
    const double c = std::cos(theta_step);
    const double s = std::sin(theta_step);
    return {Complex{c, 0.0}, Complex{0.0, -s}, Complex{0.0, -s}, Complex{c, 0.0}};
}

Complex pow_int(Complex z, long n) {
    if (n < 0) {
        throw std::domain_error("pow_int: negative exponent");
    }
    if (n == 0) return {1.0, 0.0};
    if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
    return std::exp(static_cast<double>(n) * std::log(z));
}

Operator2 matrix_power(const Operator2& m, long n) {
    if (n < 1) {
        throw std::domain_error("matrix_power: exponent must be >= 1");
    }
    require_finite(m, "matrix_power");
    const auto [xp, xm] = eigenvalues(m);
    const double scale = std::max(std::abs(xp), std::abs(xm));
    if (std::abs(xp - xm) <= kConfluenceRel * scale) {
        // confluent limit: M^n = xi^n I + n xi^(n-1) (M - xi I)
        const Complex xi = 0.5 * (xp + xm);
        const Complex a = pow_int(xi, n);
        const Complex b = static_cast<double>(n) * pow_int(xi, n - 1);
        return a * Operator2::identity() + b * (m - xi * Operator2::identity());
    }
    const Complex pn = pow_int(xp, n);
    const Complex mn = pow_int(xm, n);
    const Complex mean = 0.5 * (xp + xm);
    const Complex ratio = (pn - mn) / (xp - xm);
    // M^n = (xi+^n + xi-^n)/2 I + (xi+^n - xi-^n)/(xi+ - xi-) (M - (xi+ + xi-)/2 I)
    return (0.5 * (pn + mn)) * Operator2::identity() + ratio * (m - mean * Operator2::identity());
}

Operator2 matrix_power_iterated(const Operator2& m, long n) {
    if (n < 1) {
        throw std::domain_error("matrix_power_iterated: exponent must be >= 1");
    }
    require_finite(m, "matrix_power_iterated");
    Operator2 acc = m;
    for (long k = 1; k < n; ++k) acc = acc * m;
    return acc;
}

} // namespace zeno
