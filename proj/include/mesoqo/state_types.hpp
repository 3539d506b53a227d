#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace mesoqo {

using cplx = std::complex<double>;

/// Single field mode. Units with k_B = hbar = c = 1.
struct ModeParams {
  double omega = 1.0;  ///< angular frequency, > 0
  double xi = 1.0;     ///< loop coupling (area-proportional), > 0
};

/// Number state |n>.
struct Number {
  int n = 0;
};

/// Coherent state D(A)|0>.
struct Coherent {
  cplx amplitude{0.0, 0.0};
};

/// Squeezed state S(r, angle) D(A)|0> with
/// S = exp[-(r/4) e^{-i angle} a^dag^2 + (r/4) e^{i angle} a^2].
struct Squeezed {
  cplx amplitude{0.0, 0.0};
  double r = 0.0;
  double angle = 0.0;
};

/// Thermal state at inverse temperature beta; beta = +inf is the vacuum.
struct Thermal {
  double beta = 1.0;
};

using StateFamily = std::variant<Number, Coherent, Squeezed, Thermal>;

struct PhotonState {
  StateFamily family;
  ModeParams mode;
};

/// rho_A (x) rho_B.
struct Factorizable {
  PhotonState a;
  PhotonState b;
};

struct ProductTerm {
  double weight = 0.0;
  PhotonState a;
  PhotonState b;
};

/// sum_k P_k rho_A,k (x) rho_B,k with P_k >= 0 summing to one.
struct SeparableMixture {
  std::vector<ProductTerm> terms;
};

struct NumberPair {
  int na = 0;
  int nb = 0;
};

/// (|first> + |second>)/sqrt(2); first and second must differ.
struct EntangledNumberPair {
  NumberPair first;
  NumberPair second;
};

/// N(|A1 A2> + |A2 A1>), N = [2 + 2 exp(-|A1-A2|^2)]^{-1/2}.
struct EntangledCoherentPair {
  cplx a1{0.0, 0.0};
  cplx a2{0.0, 0.0};
};

using TwoModeFamily =
    std::variant<Factorizable, SeparableMixture, EntangledNumberPair, EntangledCoherentPair>;

/// Two-mode field. mode_a and mode_b override the modes stored in the
/// component single-mode states.
struct TwoModePhotonState {
  TwoModeFamily family;
  ModeParams mode_a;
  ModeParams mode_b;
};

/// Scaled charges: q = xi e / sqrt(2) for single electrons, qprime = 2 q for pairs.
struct ChargeCoupling {
  double q = 0.25;
  double qprime() const { return 2.0 * q; }
};

}  // namespace mesoqo
