#include "mesoqo/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

namespace mesoqo {

namespace {

std::vector<HarmonicTerm> normalize(std::vector<HarmonicTerm> terms, double rel_tol) {
  double fmax = 0.0;
  for (const auto& t : terms) fmax = std::max(fmax, std::abs(t.frequency));
  const double tol = rel_tol * fmax;
  for (auto& t : terms) {
    if (std::abs(t.frequency) <= tol) t.frequency = 0.0;
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const HarmonicTerm& a, const HarmonicTerm& b) { return a.frequency < b.frequency; });
  std::vector<HarmonicTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && std::abs(t.frequency - out.back().frequency) <= tol) {
      out.back().amplitude += t.amplitude;
      if (t.frequency == 0.0) out.back().frequency = 0.0;
    } else {
      out.push_back(t);
    }
  }
  return out;
}

// Coefficients c_m, m in (-n/2, n/2), of n equispaced samples over one period.
std::vector<cplx> dft_coeffs(const std::vector<cplx>& samples) {
  Eigen::FFT<double> fft;
  std::vector<cplx> coeffs;
  fft.fwd(coeffs, samples);
  const double inv = 1.0 / static_cast<double>(samples.size());
  for (auto& c : coeffs) c *= inv;
  return coeffs;
}

cplx coeff(const std::vector<cplx>& coeffs, long m) {
  const long n = static_cast<long>(coeffs.size());
  return coeffs[static_cast<std::size_t>((m % n + n) % n)];
}

}  // namespace

HarmonicSeries::HarmonicSeries(std::vector<HarmonicTerm> terms, double rel_tol)
    : terms_(normalize(std::move(terms), rel_tol)), rel_tol_(rel_tol) {}

HarmonicSeries harmonic(double frequency, cplx amplitude) {
  return HarmonicSeries({{frequency, amplitude}});
}

HarmonicSeries HarmonicSeries::from_periodic(const std::function<cplx(double)>& f, double omega,
                                             double tol, int max_samples, int min_samples) {
  if (!(omega > 0.0)) throw std::invalid_argument("from_periodic: omega must be positive");
  const double period = 2.0 * std::numbers::pi / omega;
  int n = 1;
  while (n < std::max(2, min_samples)) n *= 2;
  std::vector<cplx> samples(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) samples[k] = f(period * k / n);
  auto prev = dft_coeffs(samples);
  while (true) {
    const int n2 = 2 * n;
    if (n2 > max_samples) {
      throw std::runtime_error("from_periodic: Fourier series did not converge");
    }
    // Reuse even samples; only odd points are new.
    std::vector<cplx> s2(static_cast<std::size_t>(n2));
    for (int k = 0; k < n; ++k) {
      s2[2 * k] = samples[k];
      s2[2 * k + 1] = f(period * (2 * k + 1) / n2);
    }
    auto next = dft_coeffs(s2);
    double scale = 0.0;
    for (const auto& v : s2) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, 1e-300);
    double diff = 0.0;
    for (long m = -(n / 2 - 1); m <= n / 2 - 1; ++m) {
      diff = std::max(diff, std::abs(coeff(next, m) - coeff(prev, m)));
    }
    double tail = 0.0;
    for (long m = n / 2; m < n; ++m) {
      tail = std::max({tail, std::abs(coeff(next, m)), std::abs(coeff(next, -m))});
    }
    samples = std::move(s2);
    n = n2;
    if (diff <= tol * scale && tail <= tol * scale) {
      std::vector<HarmonicTerm> terms;
      terms.reserve(static_cast<std::size_t>(n));
      for (long m = -(n / 2 - 1); m <= n / 2 - 1; ++m) {
        terms.push_back({static_cast<double>(m) * omega, coeff(next, m)});
      }
      return HarmonicSeries(std::move(terms));
    }
    prev = std::move(next);
  }
}

cplx HarmonicSeries::operator()(double t) const {
  cplx sum = 0.0;
  for (const auto& term : terms_) sum += term.amplitude * std::polar(1.0, term.frequency * t);
  return sum;
}

cplx HarmonicSeries::average() const { return amplitude_at(0.0); }

cplx HarmonicSeries::amplitude_at(double frequency, double abs_tol) const {
  cplx sum = 0.0;
  for (const auto& term : terms_) {
    if (std::abs(term.frequency - frequency) <= abs_tol) sum += term.amplitude;
  }
  return sum;
}

double HarmonicSeries::max_amplitude() const {
  double m = 0.0;
  for (const auto& term : terms_) m = std::max(m, std::abs(term.amplitude));
  return m;
}

HarmonicSeries HarmonicSeries::autocorrelation() const {
  std::vector<HarmonicTerm> out;
  out.reserve(terms_.size());
  for (const auto& term : terms_) out.push_back({term.frequency, std::norm(term.amplitude)});
  return HarmonicSeries(std::move(out), rel_tol_);
}

std::vector<long> HarmonicSeries::harmonic_indices(double base, double rel_tol) const {
  if (!(base > 0.0)) throw std::domain_error("harmonic_indices: base frequency must be positive");
  std::vector<long> idx;
  idx.reserve(terms_.size());
  for (const auto& term : terms_) {
    const double k = std::round(term.frequency / base);
    if (std::abs(term.frequency - k * base) > rel_tol * std::max(std::abs(term.frequency), base)) {
      throw std::domain_error("frequency content is incommensurate with the base frequency");
    }
    idx.push_back(static_cast<long>(k));
  }
  return idx;
}

HarmonicSeries HarmonicSeries::pruned(double threshold) const {
  std::vector<HarmonicTerm> out;
  for (const auto& term : terms_) {
    if (std::abs(term.amplitude) > threshold) out.push_back(term);
  }
  return HarmonicSeries(std::move(out), rel_tol_);
}

HarmonicSeries HarmonicSeries::operator+(const HarmonicSeries& o) const {
  std::vector<HarmonicTerm> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return HarmonicSeries(std::move(out), std::max(rel_tol_, o.rel_tol_));
}

HarmonicSeries HarmonicSeries::operator-(const HarmonicSeries& o) const { return *this + o * cplx(-1.0); }

HarmonicSeries HarmonicSeries::operator*(const HarmonicSeries& o) const {
  std::vector<HarmonicTerm> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) out.push_back({a.frequency + b.frequency, a.amplitude * b.amplitude});
  }
  return HarmonicSeries(std::move(out), std::max(rel_tol_, o.rel_tol_));
}

HarmonicSeries HarmonicSeries::operator*(cplx s) const {
  std::vector<HarmonicTerm> out = terms_;
  for (auto& t : out) t.amplitude *= s;
  return HarmonicSeries(std::move(out), rel_tol_);
}

HarmonicSeries HarmonicSeries::conj() const {
  std::vector<HarmonicTerm> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({-t.frequency, std::conj(t.amplitude)});
  return HarmonicSeries(std::move(out), rel_tol_);
}

}  // namespace mesoqo
