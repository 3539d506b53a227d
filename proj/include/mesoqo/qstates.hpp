#pragma once

#include <vector>

#include "mesoqo/state_types.hpp"

namespace mesoqo::qstates {

/// Weyl function Tr[rho D(z)]. |W| <= 1, W(0) = 1, W(-z) = conj(W(z)).
cplx weyl(const PhotonState& state, cplx z);

/// <u|D(z)|v> for number states.
cplx displacement_element(const Number& u, const Number& v, cplx z);
/// <u|D(z)|v> for coherent states.
cplx displacement_element(const Coherent& u, const Coherent& v, cplx z);
/// <u|v> for coherent states.
cplx overlap(const Coherent& u, const Coherent& v);

/// P(n) = <n|rho|n>.
double photon_counting(const PhotonState& state, int n);

/// Fock amplitudes <n|A;r,angle> for n = 0..nmax by three-term recurrence.
std::vector<cplx> squeezed_amplitudes(const Squeezed& s, int nmax);

/// Effective thermal exponent beta * omega; +inf for the vacuum.
double thermal_exponent(const Thermal& th, const ModeParams& mode);

double mean_photons(const PhotonState& state);

/// First and second ladder moments <a>, <a^2>, <a^dag a>.
struct LadderMoments {
  cplx a;
  cplx a2;
  double n;
};
LadderMoments ladder_moments(const PhotonState& state);

enum class FamilyKind { Number, Coherent, Squeezed, Thermal };

/// Fixed parameters used when solving for a target mean photon number.
struct MatchFixed {
  ModeParams mode;
  double amplitude_arg = 0.0;  ///< arg A for coherent and squeezed
  double r = 0.0;              ///< squeezed only
  double angle = 0.0;          ///< squeezed only
};

/// Returns a state of the requested family with mean_photons == target.
/// Throws std::invalid_argument when the target is unreachable.
PhotonState match_mean_photons(FamilyKind kind, double target, const MatchFixed& fixed);

struct Stats {
  double mean;
  double stddev;
};

/// Flux phi(t) = (xi/sqrt2)(e^{i w t} a^dag + e^{-i w t} a).
Stats flux_stats(const PhotonState& state, const ModeParams& mode, double t);

/// EMF V(t) = i (w xi/sqrt2)(e^{i w t} a^dag - e^{-i w t} a), so that
/// e^{-i w t} a = (phi + i V / w) / (sqrt2 xi).
Stats emf_stats(const PhotonState& state, const ModeParams& mode, double t);

}  // namespace mesoqo::qstates
