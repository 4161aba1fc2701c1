// mirror.hpp — measurement-stage models: ideal mirrors, diagonal lossy
// mirrors, and spin-flipping mirrors, with their transmit/reflect operators.

#pragma once

#include <variant>

#include "zeno/spin_algebra.hpp"

namespace zeno {

// Perfect spin filter: transmit |up><up|, reflect |down><down|.
struct IdealMirror {};

// Lossy mirror without spin flips: complex transmission and reflection
// amplitudes per spin component, |t|^2 + |r|^2 <= 1 componentwise
// (equality marks the mirror conservative).
struct DiagonalMirror {
    Complex t_up, t_down, r_up, r_down;

    DiagonalMirror(Complex t_up, Complex t_down, Complex r_up, Complex r_down);

    // Reflection amplitudes completed to |t|^2 + |r|^2 = 1 with zero phase.
    static DiagonalMirror conservative(Complex t_up, Complex t_down);
};

// Mirror with spin-flip amplitudes: full 2x2 transmission and reflection
// matrices, constrained per incident-spin column:
// |T_uu|^2 + |T_du|^2 + |R_uu|^2 + |R_du|^2 <= 1, likewise the down column.
struct SpinFlipMirror {
    Operator2 t_matrix, r_matrix;

    SpinFlipMirror(const Operator2& t_matrix, const Operator2& r_matrix);
};

using MirrorModel = std::variant<IdealMirror, DiagonalMirror, SpinFlipMirror>;

Operator2 transmit_operator(const MirrorModel& m);
Operator2 reflect_operator(const MirrorModel& m);

// True iff every norm constraint holds with equality to 1e-9.
bool is_conservative(const MirrorModel& m);

// |T_up|^2 for the dominant-loss factor: 1 for ideal, |t_up|^2 for diagonal,
// |T_uu|^2 for spin-flip mirrors.
double transmit_up_mod2(const MirrorModel& m);

} // namespace zeno
