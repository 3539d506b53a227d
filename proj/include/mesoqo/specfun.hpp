#pragma once

// Special functions used by the closed forms: generalized Laguerre
// polynomials with integer (possibly negative) upper index, and integer-order
// Bessel functions of the first kind.

namespace mesoqo::specfun {

/// Generalized Laguerre polynomial L_n^alpha(x).
///
/// Defined for every integer alpha through the series
///   sum_{m=0}^{n} (-1)^m binom(n+alpha, n-m) x^m / m!
/// with the falling-factorial binomial, so that for alpha = -k and n >= k
///   L_n^{-k}(x) = (-x)^k (n-k)!/n! L_{n-k}^{k}(x).
/// Throws std::invalid_argument for n < 0.
double laguerre(int n, int alpha, double x);

/// Bessel function of the first kind J_n(x), integer order, real argument.
/// Miller's downward recurrence normalized by J_0 + 2 sum J_{2k} = 1.
double bessel_j(int n, double x);

}  // namespace mesoqo::specfun
