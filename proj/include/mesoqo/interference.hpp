#pragma once

#include <functional>
#include <vector>

#include "mesoqo/harmonic.hpp"
#include "mesoqo/state_types.hpp"

namespace mesoqo::interference {

/// 1 + cos(x - e Phi) for a static flux phase e Phi.
double intensity_static(double x, double ephi);

/// lambda(t) = i q e^{i w t}, so that e^{i e phi(t)} = D(lambda(t)).
cplx lambda(const ChargeCoupling& c, const ModeParams& mode, double t);

/// Phase factor <e^{i e phi(t)}> = W(lambda(t)).
cplx phase_factor(const PhotonState& state, const ChargeCoupling& c, const ModeParams& mode, double t);

/// 1 + |W| cos(x - arg W), W = W(lambda(t)).
double intensity_quantum(const PhotonState& state, const ChargeCoupling& c, const ModeParams& mode,
                         double x, double t);

/// Same quantity written as 1 + Re[e^{-ix} W].
double intensity_quantum_re(const PhotonState& state, const ChargeCoupling& c,
                            const ModeParams& mode, double x, double t);

/// Fringe visibility |W(lambda(t))|.
double visibility(const PhotonState& state, const ChargeCoupling& c, const ModeParams& mode, double t);

/// Exact Fourier series in t of intensity_quantum at fixed x.
HarmonicSeries intensity_series(const PhotonState& state, const ChargeCoupling& c,
                                const ModeParams& mode, double x);

/// 1 + cos(e phi1 sin(w t)).
double classical_intensity(double ephi1, double omega, double t);

struct CorrelationSeries {
  std::vector<double> taus;
  std::vector<cplx> gamma;
  cplx gamma0{0.0, 0.0};
};

/// Bessel form [1+J0]^2 + 2 sum_K J_{2K}^2 cos(2 K w tau) as a series in tau.
HarmonicSeries autocorrelation_classical_series(double ephi1, double omega);
CorrelationSeries autocorrelation_classical(double ephi1, double omega, const std::vector<double>& taus);

/// Phase average of W(rho e^{i theta}) over theta.
double weyl_radial_average(const PhotonState& state, double rho);

/// Gamma(tau) = lim (1/2T) int Tr[rho I(t) I(t+tau)] dt with I(t) = 1 + cos(e phi(t)).
cplx autocorrelation_quantum_value(const PhotonState& state, const ChargeCoupling& c,
                                   const ModeParams& mode, double tau);
CorrelationSeries autocorrelation_quantum(const PhotonState& state, const ChargeCoupling& c,
                                          const ModeParams& mode, const std::vector<double>& taus);
/// Gamma as an exact Fourier series in tau with base frequency w.
HarmonicSeries autocorrelation_quantum_series(const PhotonState& state, const ChargeCoupling& c,
                                              const ModeParams& mode);

/// gamma(tau) = Gamma(tau) / Gamma(0). Throws std::domain_error if Gamma(0) == 0.
CorrelationSeries normalized_gamma(const CorrelationSeries& series);

struct SpectrumCoeffs {
  double base = 0.0;
  int kmax = 0;
  std::vector<double> s;      ///< S_K for K = -kmax..kmax
  double max_imag = 0.0;      ///< largest discarded imaginary part
  double at(int k) const { return s.at(static_cast<std::size_t>(k + kmax)); }
};

/// Exact path: S_K are the amplitudes of Gamma at K * base. Throws
/// std::domain_error when Gamma has content off the K * base lattice.
SpectrumCoeffs spectral_density(const HarmonicSeries& gamma, double base, int kmax);

/// Quadrature path: periodic trapezoid rule over one 2 pi / base period.
SpectrumCoeffs spectral_density(const std::function<cplx(double)>& gamma, double base, int kmax,
                                int samples = 4096);

}  // namespace mesoqo::interference
