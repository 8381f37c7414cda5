#pragma once

// Unitary optical elements acting on truncated Fock states: the 50/50
// beamsplitter, the delay line, and single- and two-mode Kerr cells.
// Kerr phases use normal ordering, a^+^2 a^2 = n(n-1).

#include "kerrecs/fock.hpp"

namespace kerrecs {

struct KerrParams {
  double chi = 0.0;  ///< nonlinearity, radians
  double tau = 0.0;  ///< linear phase, radians
};

struct DelayParams {
  double delta = 0.0;  ///< phase delay on mode b, radians
};

/// exp(i pi [a^+ b + a b^+] / 4), applied block by block in total photon
/// number. Amplitude rotated past n_max in either mode is added to tail_loss.
TwoModeState beamsplitter_apply(const TwoModeState& psi);

/// exp(i delta b^+ b).
TwoModeState delay_apply(const DelayParams& params, const TwoModeState& psi);

/// exp(-i tau n - i chi n(n-1)).
ModeState kerr_apply(const KerrParams& params, const ModeState& psi);

/// Single-mode Kerr cell placed on one mode of a two-mode state.
TwoModeState kerr_apply(const KerrParams& params, const TwoModeState& psi, Mode mode);

/// exp(-i tau (m + n) - i chi [m(m-1) + n(n-1) + 4mn]).
TwoModeState two_mode_kerr_apply(const KerrParams& params, const TwoModeState& psi);

/// exp(-4 i chi m n): the cross-phase left after the self-shear of both
/// modes has been undone.
TwoModeState reduced_two_mode_kerr_apply(double chi, const TwoModeState& psi);

/// Phase angle reduced into [0, 2 pi), computed in extended precision so
/// large photon numbers keep full double accuracy.
double reduce_angle(long double angle);

}  // namespace kerrecs
