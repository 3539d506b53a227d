#pragma once

#include <optional>

#include "mesoqo/harmonic.hpp"
#include "mesoqo/state_types.hpp"
#include "mesoqo/twomode.hpp"

namespace mesoqo::squid {

/// Classical drive of a ring. All phases already carry the pair charge:
/// delta(t) = phase_offset + omega_bias t + drive_amplitude sin(omega_drive t),
/// i.e. phase_offset = 2e phi0, omega_bias = 2eV, drive_amplitude = 2eu.
struct SquidDrive {
  double phase_offset = 0.0;
  double omega_bias = 0.0;
  double drive_amplitude = 0.0;
  double omega_drive = 1.0;
  double critical_current = 1.0;
};

/// I_c sin(delta(t)).
double classical_current(const SquidDrive& drive, double t);
/// I_c sum_n J_n(amplitude) sin(phase_offset + omega_bias t + n omega_drive t).
double classical_current_expansion(const SquidDrive& drive, double t);

/// I_c J_{-N}(amplitude) sin(phase_offset), with omega_bias = N omega_drive.
double classical_shapiro(const SquidDrive& drive, int step);

/// sigma(t) = i qprime e^{i w t}, so that e^{i 2e phi(t)} = D(sigma(t)).
cplx sigma(double qprime, double omega, double t);

/// I_c Im[e^{i(phase_offset + omega_bias t)} W(sigma(t))] with the field mode
/// frequency taken from state.mode.
double quantum_current(const PhotonState& state, double qprime, double omega_bias, double t,
                       double critical_current, double phase_offset = 0.0);

/// <I>(t) as an exact harmonic series for a classical drive plus an optional
/// quantum field at the drive frequency.
HarmonicSeries current_series(const std::optional<PhotonState>& state, const SquidDrive& drive,
                              double qprime);

/// Exact dc current with the resonance omega_bias = N omega_drive imposed.
double quantum_shapiro(const std::optional<PhotonState>& state, const SquidDrive& drive, double qprime,
                       int step);

/// Two rings A and B driven by modes 1 and 2.
struct TwoSquidParams {
  double qprime = 0.5;
  double omega_a = 1.1e-5;  ///< 2e V_A
  double omega_b = 0.9e-5;  ///< 2e V_B
  double omega1 = 1.2e-4;
  double omega2 = 1.0e-4;
  double i1 = 1.0;
  double i2 = 1.0;
};

struct CurrentMoments {
  double ia = 0.0;
  double ib = 0.0;
  double ia2 = 0.0;
  double ib2 = 0.0;
  double iaib = 0.0;
  double ia2ib2 = 0.0;
};

/// I_A = i1 sin(omega_a t + 2e phi_A(t)) as a displacement sum; likewise B.
twomode::DisplacementSum current_operator(twomode::Which which, const TwoSquidParams& p, double t);

/// All moments by displacement algebra on the two-mode Weyl function.
/// The modes of the state are replaced by omega1 and omega2.
CurrentMoments two_squid_moments(const TwoModePhotonState& state, const TwoSquidParams& p, double t);

struct NumberPairCoefficients {
  double c0, c1, c2, c3;
};
NumberPairCoefficients number_pair_coefficients(int n1, int n2, double qprime);

/// Omega = (N1 - N2)(omega1 - omega2).
double cross_frequency(int n1, int n2, const TwoSquidParams& p);

/// -i1 i2 C3 [cos(wA t + wB t) - (-1)^{N1-N2} cos(wA t - wB t)] cos(Omega t).
double cross_current(int n1, int n2, const TwoSquidParams& p, double t);

/// Closed-form moments for the swapped number pair |N1 N2>, |N2 N1>.
/// ia2ib2 has no closed form and is taken from displacement algebra.
CurrentMoments two_squid_currents_number(int n1, int n2, bool entangled, const TwoSquidParams& p, double t);

/// Closed-form first moments for the swapped coherent pair; the remaining
/// moments come from displacement algebra.
CurrentMoments two_squid_currents_coherent(cplx a1, cplx a2, bool entangled, const TwoSquidParams& p,
                                           double t);

/// <I_A I_B> / (<I_A><I_B>); NaN when the denominator vanishes.
double ratio_c(const CurrentMoments& m);
/// <I_A^2 I_B^2> / (<I_A^2><I_B^2>); NaN when the denominator vanishes.
double ratio_c2(const CurrentMoments& m);

/// 4 L_N1 L_N2 / (L_N1 + L_N2)^2.
double ratio_c_sep_number(int n1, int n2, double qprime);

/// Closed form for the entangled number pair, even or odd N1 - N2. Points
/// with |sin(wA t)| or |sin(wB t)| below exclusion are returned as NaN.
double ratio_c_ent_number(int n1, int n2, const TwoSquidParams& p, double t, double exclusion = 1e-6);

}  // namespace mesoqo::squid
