#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "mesoqo/specfun.hpp"

using boost::multiprecision::cpp_rational;
using mesoqo::specfun::bessel_j;
using mesoqo::specfun::laguerre;

namespace {

// Exact series sum_{m} (-1)^m binom(n+alpha, n-m) x^m / m! with the
// falling-factorial binomial.
cpp_rational laguerre_series(int n, int alpha, const cpp_rational& x) {
  cpp_rational sum = 0;
  for (int m = 0; m <= n; ++m) {
    const int k = n - m;
    cpp_rational binom = 1;
    for (int j = 0; j < k; ++j) binom *= cpp_rational(n + alpha - j);
    for (int j = 1; j <= k; ++j) binom /= j;
    cpp_rational term = binom;
    for (int j = 1; j <= m; ++j) term *= x / j;
    sum += (m % 2 == 0) ? term : cpp_rational(-term);
  }
  return sum;
}

}  // namespace

TEST_CASE("laguerre low-degree values") {
  CHECK(laguerre(0, 5, 3.7) == 1.0);
  CHECK(laguerre(0, -4, 0.2) == 1.0);
  CHECK(laguerre(1, 0, 1.0) == doctest::Approx(0.0));
  CHECK(laguerre(3, -2, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(laguerre(-1, 0, 1.0), std::invalid_argument);
}

TEST_CASE("laguerre matches exact rational series") {
  const std::pair<cpp_rational, double> xs[] = {
      {cpp_rational(1, 100), 0.01}, {cpp_rational(1, 4), 0.25}, {cpp_rational(1), 1.0},
      {cpp_rational(2), 2.0},      {cpp_rational(4), 4.0},      {cpp_rational(9), 9.0}};
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    for (int alpha = -8; alpha <= 8; ++alpha) {
      for (const auto& [xr, xd] : xs) {
        const double exact = static_cast<double>(laguerre_series(n, alpha, xr));
        const double got = laguerre(n, alpha, xd);
        const double scale = std::max(1.0, std::abs(exact));
        worst = std::max(worst, std::abs(got - exact) / scale);
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("laguerre negative index reflection") {
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (double x : {0.3, 1.0, 2.5}) {
        const double lhs = laguerre(n, -k, x);
        const double rhs = std::pow(-x, k) * std::exp(std::lgamma(n - k + 1.0) - std::lgamma(n + 1.0)) *
                           laguerre(n - k, k, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("laguerre three-term recurrence") {
  double worst = 0.0;
  for (int alpha = -5; alpha <= 5; ++alpha) {
    for (double x : {0.01, 0.25, 1.0, 4.0}) {
      for (int n = 1; n < 20; ++n) {
        const double lhs = (n + 1) * laguerre(n + 1, alpha, x);
        const double rhs = (2 * n + 1 + alpha - x) * laguerre(n, alpha, x) - (n + alpha) * laguerre(n - 1, alpha, x);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
      }
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("bessel basic values and reflection") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  CHECK(bessel_j(-2, 1.5) == doctest::Approx(bessel_j(2, 1.5)).epsilon(1e-15));
  CHECK(bessel_j(-3, 1.5) == doctest::Approx(-bessel_j(3, 1.5)).epsilon(1e-15));
  CHECK(bessel_j(3, -1.5) == doctest::Approx(-bessel_j(3, 1.5)).epsilon(1e-15));
}

TEST_CASE("bessel agrees with the standard library") {
  double worst = 0.0;
  for (int n = 0; n <= 40; ++n) {
    for (double x : {0.001, 0.5, 1.0, 2.0, 5.83, 10.0, 25.0, 49.0}) {
      const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
      worst = std::max(worst, std::abs(bessel_j(n, x) - ref));
    }
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("bessel generating function identity") {
  const double theta = std::numbers::pi / 3.0;
  std::complex<double> sum = 0.0;
  for (int n = -40; n <= 40; ++n) sum += bessel_j(n, 2.0) * std::polar(1.0, n * theta);
  const auto expect = std::polar(1.0, 2.0 * std::sin(theta));
  CHECK(std::abs(sum - expect) <= 1e-12);
}

TEST_CASE("bessel squares sum to one") {
  for (double x : {0.1, 1.0, 3.0, 5.83, 10.0}) {
    double s = 0.0;
    for (int n = -60; n <= 60; ++n) s += bessel_j(n, x) * bessel_j(n, x);
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
}
