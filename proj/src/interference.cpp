#include "mesoqo/interference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "mesoqo/qstates.hpp"
#include "mesoqo/specfun.hpp"

namespace mesoqo::interference {

double intensity_static(double x, double ephi) { return 1.0 + std::cos(x - ephi); }

cplx lambda(const ChargeCoupling& c, const ModeParams& mode, double t) {
  return cplx(0.0, c.q) * std::polar(1.0, mode.omega * t);
}

cplx phase_factor(const PhotonState& state, const ChargeCoupling& c, const ModeParams& mode, double t) {
  return qstates::weyl(state, lambda(c, mode, t));
}

double intensity_quantum(const PhotonState& state, const ChargeCoupling& c, const ModeParams& mode,
                         double x, double t) {
  const cplx w = phase_factor(state, c, mode, t);
  return 1.0 + std::abs(w) * std::cos(x - std::arg(w));
}

double intensity_quantum_re(const PhotonState& state, const ChargeCoupling& c,
                            const ModeParams& mode, double x, double t) {
  return 1.0 + (std::polar(1.0, -x) * phase_factor(state, c, mode, t)).real();
}

double visibility(const PhotonState& state, const ChargeCoupling& c, const ModeParams& mode, double t) {
  return std::abs(phase_factor(state, c, mode, t));
}

HarmonicSeries intensity_series(const PhotonState& state, const ChargeCoupling& c,
                                const ModeParams& mode, double x) {
  return HarmonicSeries::from_periodic(
      [&](double t) -> cplx { return intensity_quantum_re(state, c, mode, x, t); }, mode.omega);
}

double classical_intensity(double ephi1, double omega, double t) {
  return 1.0 + std::cos(ephi1 * std::sin(omega * t));
}

HarmonicSeries autocorrelation_classical_series(double ephi1, double omega) {
  const double j0 = specfun::bessel_j(0, ephi1);
  std::vector<HarmonicTerm> terms{{0.0, (1.0 + j0) * (1.0 + j0)}};
  const int kmin = static_cast<int>(std::ceil(std::abs(ephi1))) + 1;
  for (int k = 1;; ++k) {
    const double j = specfun::bessel_j(2 * k, ephi1);
    const double s = j * j;
    // 2 J^2 cos(2 K w tau) splits evenly over +-2 K w.
    terms.push_back({2.0 * k * omega, s});
    terms.push_back({-2.0 * k * omega, s});
    if (2 * k > kmin && s < 1e-32) break;
  }
  return HarmonicSeries(std::move(terms));
}

CorrelationSeries autocorrelation_classical(double ephi1, double omega, const std::vector<double>& taus) {
  const auto series = autocorrelation_classical_series(ephi1, omega);
  CorrelationSeries out;
  out.taus = taus;
  out.gamma.reserve(taus.size());
  for (double tau : taus) out.gamma.push_back(series(tau).real());
  out.gamma0 = series(0.0).real();
  return out;
}

double weyl_radial_average(const PhotonState& state, double rho) {
  if (rho == 0.0) return 1.0;
  // Phase-invariant families need no averaging.
  if (std::holds_alternative<Number>(state.family) || std::holds_alternative<Thermal>(state.family)) {
    return qstates::weyl(state, rho).real();
  }
  const auto series = HarmonicSeries::from_periodic(
      [&](double theta) { return qstates::weyl(state, std::polar(rho, theta)); }, 1.0, 1e-15);
  return series.average().real();
}

cplx autocorrelation_quantum_value(const PhotonState& state, const ChargeCoupling& c,
                                   const ModeParams& mode, double tau) {
  // cos(e phi(t)) = [D(lambda_t) + D(-lambda_t)] / 2 and
  // D(s lambda_t) D(s' lambda_{t+tau}) = e^{-i s s' q^2 sin(w tau)} D(s lambda_t + s' lambda_{t+tau}),
  // whose modulus is 2q|cos(w tau/2)| for s = s' and 2q|sin(w tau/2)| otherwise.
  // Averaging over t sweeps the phase of each argument, leaving radial averages.
  const double q = c.q;
  const double wt = mode.omega * tau;
  const double same = 2.0 * q * std::abs(std::cos(0.5 * wt));
  const double opposite = 2.0 * q * std::abs(std::sin(0.5 * wt));
  const cplx ph = std::polar(1.0, -q * q * std::sin(wt));
  return 1.0 + 2.0 * weyl_radial_average(state, q) +
         0.5 * (ph * weyl_radial_average(state, same) + std::conj(ph) * weyl_radial_average(state, opposite));
}

CorrelationSeries autocorrelation_quantum(const PhotonState& state, const ChargeCoupling& c,
                                          const ModeParams& mode, const std::vector<double>& taus) {
  CorrelationSeries out;
  out.taus = taus;
  out.gamma.reserve(taus.size());
  for (double tau : taus) out.gamma.push_back(autocorrelation_quantum_value(state, c, mode, tau));
  out.gamma0 = autocorrelation_quantum_value(state, c, mode, 0.0);
  return out;
}

HarmonicSeries autocorrelation_quantum_series(const PhotonState& state, const ChargeCoupling& c,
                                              const ModeParams& mode) {
  return HarmonicSeries::from_periodic(
      [&](double tau) { return autocorrelation_quantum_value(state, c, mode, tau); }, mode.omega, 1e-13);
}

CorrelationSeries normalized_gamma(const CorrelationSeries& series) {
  if (series.gamma0 == cplx(0.0, 0.0)) throw std::domain_error("normalized_gamma: Gamma(0) is zero");
  CorrelationSeries out = series;
  for (auto& g : out.gamma) g /= series.gamma0;
  out.gamma0 = 1.0;
  return out;
}

SpectrumCoeffs spectral_density(const HarmonicSeries& gamma, double base, int kmax) {
  const auto idx = gamma.harmonic_indices(base);
  SpectrumCoeffs out;
  out.base = base;
  out.kmax = kmax;
  out.s.assign(static_cast<std::size_t>(2 * kmax + 1), 0.0);
  std::vector<cplx> acc(out.s.size(), 0.0);
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (std::abs(idx[j]) <= kmax) acc[static_cast<std::size_t>(idx[j] + kmax)] += gamma.terms()[j].amplitude;
  }
  for (std::size_t j = 0; j < acc.size(); ++j) {
    out.s[j] = acc[j].real();
    out.max_imag = std::max(out.max_imag, std::abs(acc[j].imag()));
  }
  return out;
}

SpectrumCoeffs spectral_density(const std::function<cplx(double)>& gamma, double base, int kmax,
                                int samples) {
  if (!(base > 0.0)) throw std::domain_error("spectral_density: base frequency must be positive");
  const double period = 2.0 * std::numbers::pi / base;
  std::vector<cplx> values(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) values[j] = gamma(period * j / samples);
  SpectrumCoeffs out;
  out.base = base;
  out.kmax = kmax;
  out.s.reserve(static_cast<std::size_t>(2 * kmax + 1));
  for (int k = -kmax; k <= kmax; ++k) {
    cplx sum = 0.0;
    for (int j = 0; j < samples; ++j) {
      sum += values[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) * j / samples);
    }
    sum /= static_cast<double>(samples);
    out.s.push_back(sum.real());
    out.max_imag = std::max(out.max_imag, std::abs(sum.imag()));
  }
  return out;
}

}  // namespace mesoqo::interference
