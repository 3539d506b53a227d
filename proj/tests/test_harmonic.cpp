#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "mesoqo/harmonic.hpp"

using mesoqo::cplx;
using mesoqo::harmonic;
using mesoqo::HarmonicSeries;

TEST_CASE("terms with equal frequencies merge and average is the dc term") {
  HarmonicSeries s({{1.0, 2.0}, {0.0, 0.5}, {1.0, -0.5}, {-3.0, cplx(0.0, 1.0)}});
  CHECK(s.terms().size() == 3);
  CHECK(s.average() == cplx(0.5));
  CHECK(s.amplitude_at(1.0) == cplx(1.5));
  CHECK(std::abs(s(0.3) - (0.5 + 1.5 * std::polar(1.0, 0.3) + cplx(0.0, 1.0) * std::polar(1.0, -0.9))) <= 1e-15);
}

TEST_CASE("products combine frequencies") {
  const auto c = harmonic(1.0, 0.5) + harmonic(-1.0, 0.5);  // cos t
  const auto c2 = c * c;                                     // (1 + cos 2t) / 2
  CHECK(std::abs(c2.average() - 0.5) <= 1e-15);
  CHECK(std::abs(c2.amplitude_at(2.0) - 0.25) <= 1e-15);
  CHECK(std::abs(c2.amplitude_at(1.0)) == 0.0);
  CHECK(std::abs(c.conj().amplitude_at(-1.0) - 0.5) <= 1e-15);
}

TEST_CASE("from_periodic is exact for trigonometric polynomials") {
  const double w = 1e-4;
  const auto s = HarmonicSeries::from_periodic(
      [&](double t) { return 1.0 + 2.0 * std::cos(3.0 * w * t) + cplx(0.0, 1.0) * std::sin(w * t); }, w);
  CHECK(std::abs(s.average() - 1.0) <= 1e-14);
  CHECK(std::abs(s.amplitude_at(3.0 * w, 1e-12) - 1.0) <= 1e-14);
  CHECK(std::abs(s.amplitude_at(w, 1e-12) - 0.5) <= 1e-14);
  CHECK(std::abs(s.amplitude_at(-w, 1e-12) + 0.5) <= 1e-14);
}

TEST_CASE("from_periodic reproduces the Jacobi-Anger expansion") {
  // e^{i a sin t} = sum J_n(a) e^{i n t}.
  const double a = 5.0;
  const auto s = HarmonicSeries::from_periodic([&](double t) { return std::polar(1.0, a * std::sin(t)); }, 1.0);
  for (int n = -10; n <= 10; ++n) {
    CHECK(std::abs(s.amplitude_at(n, 1e-9) - std::cyl_bessel_j(std::abs(n), a) * ((n < 0 && n % 2) ? -1.0 : 1.0)) <=
          1e-13);
  }
}

TEST_CASE("from_periodic fails loudly when unresolved") {
  CHECK_THROWS_AS(HarmonicSeries::from_periodic([](double t) { return std::polar(1.0, 500.0 * std::sin(t)); }, 1.0,
                                                1e-14, 256),
                  std::runtime_error);
}

TEST_CASE("autocorrelation of a harmonic series") {
  const auto f = harmonic(0.0, 1.0) + harmonic(2.0, cplx(0.0, 0.5)) + harmonic(-2.0, cplx(0.0, -0.5));
  const auto g = f.autocorrelation();
  // Direct average of conj(f(t)) f(t + tau) over one period.
  const double tau = 0.4;
  cplx direct = 0.0;
  const int n = 64;
  for (int k = 0; k < n; ++k) {
    const double t = std::numbers::pi * k / n;
    direct += std::conj(f(t)) * f(t + tau);
  }
  direct /= static_cast<double>(n);
  CHECK(std::abs(g(tau) - direct) <= 1e-14);
}

TEST_CASE("harmonic indices detect incommensurate content") {
  const auto s = harmonic(2e-4, 1.0) + harmonic(-6e-4, 1.0);
  const auto idx = s.harmonic_indices(1e-4);
  CHECK(idx == std::vector<long>{-6, 2});
  const auto bad = s + harmonic(std::sqrt(2.0) * 1e-4, 1.0);
  CHECK_THROWS_AS(bad.harmonic_indices(1e-4), std::domain_error);
}
