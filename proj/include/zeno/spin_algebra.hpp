// spin_algebra.hpp — exact complex 2x2 linear algebra for a spin-1/2:
// Pauli decomposition, closed-form eigenvalues, matrix powers, and the
// elementary x-axis rotation.

#pragma once

#include <array>
#include <complex>

namespace zeno {

using Complex = std::complex<double>;

bool is_finite(Complex z) noexcept;

// Spin state (c_up, c_down). Sub-normalized states are legal (they carry
// loss); super-normalized states are rejected by `checked`.
struct SpinState {
    Complex up{1.0, 0.0};
    Complex down{0.0, 0.0};

    static SpinState spin_up() { return {Complex{1.0, 0.0}, Complex{0.0, 0.0}}; }

    // Validating factory: finite components and norm2 <= 1 + 1e-9.
    static SpinState checked(Complex up, Complex down);

    double norm2() const noexcept;
};

// Coefficients of M = s0*I + sx*sigma_x + sy*sigma_y + sz*sigma_z.
struct PauliCoefficients {
    Complex s0, sx, sy, sz;
};

// Complex 2x2 matrix in row-major storage.
class Operator2 {
public:
    Operator2() = default;
    Operator2(Complex a00, Complex a01, Complex a10, Complex a11)
        : e_{a00, a01, a10, a11} {}

    static Operator2 identity();
    static Operator2 diagonal(Complex a, Complex b);
    static Operator2 sigma_x();
    static Operator2 sigma_y();
    static Operator2 sigma_z();
    static Operator2 from_pauli(const PauliCoefficients& c);

    Complex operator()(int row, int col) const { return e_[2 * row + col]; }
    Complex& operator()(int row, int col) { return e_[2 * row + col]; }

    Operator2 operator*(const Operator2& rhs) const;
    Operator2 operator+(const Operator2& rhs) const;
    Operator2 operator-(const Operator2& rhs) const;
    friend Operator2 operator*(Complex s, const Operator2& m);

    SpinState apply(const SpinState& s) const;

    Operator2 adjoint() const;
    Complex trace() const { return e_[0] + e_[3]; }
    Complex determinant() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
    PauliCoefficients pauli() const;

    bool finite() const noexcept;
    double max_abs() const noexcept;

    // max |(M†M - I)_ij|; zero for unitary M
    double unitarity_defect() const;

private:
    std::array<Complex, 4> e_{};
};

// Eigenvalue pair trace/2 ± sqrt((trace/2)^2 - det), principal branch of
// the complex square root; `plus` carries the + sign.
struct EigenPair {
    Complex plus, minus;
};

EigenPair eigenvalues(const Operator2& m);

// cos(theta_step)*I - i*sin(theta_step)*sigma_x, the elementary rotation of
// one field region. Throws std::domain_error on non-finite input.
Operator2 rotation(double theta_step);

// z^n for integer n >= 0, evaluated as exp(n log z) (principal log) so that
// |z|^n survives large n without underflow surprises; z = 0 handled exactly.
Complex pow_int(Complex z, long n);

// M^n by the spectral decomposition M = (xi+ + xi-)/2 + (xi+ - xi-)/2 * sigma_n,
// switching to the confluent limit M^n = xi^n I + n xi^(n-1) (M - xi I) when
// |xi+ - xi-| <= 1e-8 max(|xi+|, |xi-|). Throws std::domain_error for n < 1.
Operator2 matrix_power(const Operator2& m, long n);

// M^n by plain iterated multiplication; the oracle path for matrix_power.
Operator2 matrix_power_iterated(const Operator2& m, long n);

} // namespace zeno
