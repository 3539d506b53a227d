#include "mesoqo/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mesoqo::specfun {

double laguerre(int n, int alpha, double x) {
  if (n < 0) {
    throw std::invalid_argument("laguerre: degree must be nonnegative");
  }
  // The three-term recurrence is a polynomial identity in alpha, so it holds
  // for negative integer alpha as well.
  double prev = 1.0;
  if (n == 0) return prev;
  const double a = static_cast<double>(alpha);
  double curr = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * curr - (k + a) * prev) / (k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

namespace {

double bessel_j_nonneg(int n, double x) {
  // x > 0, n >= 0.
  if (n == 0 && x == 0.0) return 1.0;
  const double big = 1e250;
  const double small = 1.0 / big;
  const double nmax = std::max(static_cast<double>(n), x);
  int start = 2 * ((static_cast<int>(nmax) + 20 + static_cast<int>(std::sqrt(60.0 * nmax))) / 2);
  double jp = 0.0;
  double j = small;
  double norm = 0.0;
  double result = 0.0;
  bool have_result = false;
  for (int k = start; k > 0; --k) {
    const double jm = 2.0 * k / x * j - jp;
    jp = j;
    j = jm;
    if (std::abs(j) > big) {
      j *= small;
      jp *= small;
      norm *= small;
      if (have_result) result *= small;
    }
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j;
    if (k - 1 == n) {
      result = j;
      have_result = true;
    }
  }
  norm += j;  // J_0 term
  return result / norm;
}

}  // namespace

double bessel_j(int n, double x) {
  const int sign_n = (n < 0 && (n % 2 != 0)) ? -1 : 1;
  const int m = std::abs(n);
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;
  int sign_x = 1;
  if (x < 0.0) {
    x = -x;
    if (m % 2 != 0) sign_x = -1;
  }
  return sign_n * sign_x * bessel_j_nonneg(m, x);
}

}  // namespace mesoqo::specfun
