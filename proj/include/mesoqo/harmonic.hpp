#pragma once

#include <functional>
#include <vector>

#include "mesoqo/state_types.hpp"

namespace mesoqo {

struct HarmonicTerm {
  double frequency;
  cplx amplitude;
};

/// Almost-periodic signal f(t) = sum_k amplitude_k exp(i frequency_k t).
///
/// Terms are kept sorted by frequency with equal frequencies merged, so the
/// exact infinite-time average is the amplitude at frequency zero.
class HarmonicSeries {
 public:
  HarmonicSeries() = default;
  /// Frequencies closer than rel_tol * max|frequency| are merged.
  explicit HarmonicSeries(std::vector<HarmonicTerm> terms, double rel_tol = 1e-9);

  /// Fourier series of a 2 pi / omega periodic function. The sample count
  /// doubles until every coefficient is stable to tol (relative to the
  /// largest), which is spectrally exact for smooth periodic input.
  /// Throws std::runtime_error if max_samples is reached first.
  static HarmonicSeries from_periodic(const std::function<cplx(double)>& f, double omega,
                                      double tol = 1e-14, int max_samples = 1 << 16,
                                      int min_samples = 16);

  const std::vector<HarmonicTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cplx operator()(double t) const;
  /// Exact infinite-time average.
  cplx average() const;
  /// Amplitude at the given frequency (0 when absent).
  cplx amplitude_at(double frequency, double abs_tol = 0.0) const;
  /// Largest |amplitude|.
  double max_amplitude() const;

  /// Gamma(tau) = average_t conj(f(t)) f(t + tau) = sum |c_k|^2 e^{i f_k tau}.
  HarmonicSeries autocorrelation() const;

  /// Integer indices k_j with frequency_j = k_j * base. Throws
  /// std::domain_error when a frequency is not an integer multiple of base.
  std::vector<long> harmonic_indices(double base, double rel_tol = 1e-9) const;

  /// Drops terms with |amplitude| <= threshold.
  HarmonicSeries pruned(double threshold) const;

  HarmonicSeries operator+(const HarmonicSeries& o) const;
  HarmonicSeries operator-(const HarmonicSeries& o) const;
  HarmonicSeries operator*(const HarmonicSeries& o) const;
  HarmonicSeries operator*(cplx s) const;
  HarmonicSeries conj() const;

 private:
  std::vector<HarmonicTerm> terms_;
  double rel_tol_ = 1e-9;
};

/// Single term amplitude * exp(i frequency t).
HarmonicSeries harmonic(double frequency, cplx amplitude);

}  // namespace mesoqo
