#pragma once

#include <utility>
#include <vector>

#include "mesoqo/state_types.hpp"

namespace mesoqo::twomode {

/// coef * D_A(za) (x) D_B(zb).
struct DisplacementTerm {
  cplx coef;
  cplx za;
  cplx zb;
};

/// Operator written as a finite sum of two-mode displacement operators.
using DisplacementSum = std::vector<DisplacementTerm>;

/// Operator product using D(a) D(b) = e^{i Im(a b*)} D(a + b) in each mode.
/// Terms with coincident arguments are merged.
DisplacementSum multiply(const DisplacementSum& x, const DisplacementSum& y);

/// Two-mode Weyl function Tr[rho D_A(za) D_B(zb)].
cplx weyl2(const TwoModePhotonState& state, cplx za, cplx zb);

/// Tr[rho X] for X given as a displacement sum.
cplx expectation(const TwoModePhotonState& state, const DisplacementSum& op);

enum class Which { A, B };

/// 1 + cos(x - e phi(t)) on the chosen mode.
DisplacementSum intensity_operator(Which which, const ChargeCoupling& c, const ModeParams& mode,
                                   double x, double t);

double marginal_intensity(const TwoModePhotonState& state, Which which, const ChargeCoupling& c,
                          double x, double t);
double joint_intensity(const TwoModePhotonState& state, const ChargeCoupling& c, double xa, double xb,
                       double t);

/// Marginals at or below this value make R undefined.
inline constexpr double kSingularMarginal = 1e-12;

/// I(xa, xb) / (I_A I_B); NaN where a marginal vanishes.
double ratio_R(const TwoModePhotonState& state, const ChargeCoupling& c, double xa, double xb, double t);

struct SepCoefficients {
  double alpha;
  double gamma;
};

/// Coefficients for the (0,1) number pair: alpha = ((2-q^2)/2) e^{-q^2/2},
/// gamma = (1/2) e^{-q^2} [1 + (1-q^2)^2].
SepCoefficients sep_coefficients(double q);

/// Closed form R for rho = (|00><00| + |11><11|)/2.
double ratio_sep_closed(double q, double xa, double xb);

/// Closed form R for (|00> + |11>)/sqrt2; omega_sum = w1 + w2.
double ratio_ent_closed(double q, double omega_sum, double xa, double xb, double t);

/// (lower, upper) bounds on R for the (0,1) separable pair.
/// Throws std::domain_error when alpha is +-1.
std::pair<double, double> sep_bounds(double q);

struct QFit {
  double q;
  double lower;
  double upper;
  double max_deviation;
};

/// Minimax fit of sep_bounds(q) to (target_min, target_max) on [q_lo, q_hi].
QFit fit_q_to_bounds(double target_min, double target_max, double q_lo = 0.01, double q_hi = 1.0);

enum class Pairing {
  Correlated,  ///< |N1 N1>, |N2 N2>
  Swapped,     ///< |N1 N2>, |N2 N1>
};

TwoModePhotonState number_pair(int n1, int n2, Pairing pairing, bool entangled, const ModeParams& mode_a,
                               const ModeParams& mode_b);

/// Separable (|A1 A2><A1 A2| + |A2 A1><A2 A1|)/2 or entangled N(|A1 A2> + |A2 A1>).
TwoModePhotonState coherent_pair(cplx a1, cplx a2, bool entangled, const ModeParams& mode_a,
                                 const ModeParams& mode_b);

/// Weyl function of the reduced state of one mode.
cplx reduced_weyl(const TwoModePhotonState& state, Which which, cplx z);

}  // namespace mesoqo::twomode
