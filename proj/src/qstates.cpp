#include "mesoqo/qstates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mesoqo/specfun.hpp"

namespace mesoqo::qstates {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct SqueezeCoeffs {
  double mu;
  cplx nu;
};

// S^dag a S = mu a - nu a^dag.
SqueezeCoeffs squeeze_coeffs(const Squeezed& s) {
  return {std::cosh(0.5 * s.r), std::polar(std::sinh(0.5 * s.r), -s.angle)};
}

// Laguerre-based <m|D(z)|n>, both orderings.
cplx number_element(int m, int n, cplx z) {
  const double x = std::norm(z);
  const int lo = std::min(m, n);
  const int k = std::abs(m - n);
  // sqrt(lo!/hi!) |z|^k computed in logs to avoid overflow.
  double log_mag = -0.5 * x;
  log_mag += 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + k + 1.0));
  if (k > 0) {
    if (x == 0.0) return 0.0;
    log_mag += 0.5 * k * std::log(x);
  }
  const double lag = specfun::laguerre(lo, k, x);
  const double base = std::exp(log_mag) * lag;
  if (k == 0) return base;
  const double ph = std::arg(z);
  // m > n: z^k / |z|^k; m < n: (-z*)^k / |z|^k.
  if (m > n) return base * std::polar(1.0, k * ph);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * base * std::polar(1.0, -k * ph);
}

}  // namespace

double thermal_exponent(const Thermal& th, const ModeParams& mode) {
  if (std::isinf(th.beta)) return std::numeric_limits<double>::infinity();
  return th.beta * mode.omega;
}

cplx overlap(const Coherent& u, const Coherent& v) {
  const cplx a = u.amplitude, b = v.amplitude;
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

cplx displacement_element(const Coherent& u, const Coherent& v, cplx z) {
  // D(z)|b> = e^{i Im(z b*)} |b + z>.
  const cplx phase = std::polar(1.0, std::imag(z * std::conj(v.amplitude)));
  return phase * overlap(u, Coherent{v.amplitude + z});
}

cplx displacement_element(const Number& u, const Number& v, cplx z) {
  if (u.n < 0 || v.n < 0) throw std::invalid_argument("number state index must be nonnegative");
  return number_element(u.n, v.n, z);
}

cplx weyl(const PhotonState& state, cplx z) {
  return std::visit(
      overloaded{
          [&](const Number& s) -> cplx {
            const double x = std::norm(z);
            return std::exp(-0.5 * x) * specfun::laguerre(s.n, 0, x);
          },
          [&](const Coherent& s) -> cplx {
            const cplx a = s.amplitude;
            return std::exp(-0.5 * std::norm(z) + z * std::conj(a) - std::conj(z) * a);
          },
          [&](const Squeezed& s) -> cplx {
            // S^dag D(z) S = D(mu z + nu z*).
            const auto [mu, nu] = squeeze_coeffs(s);
            const cplx zp = mu * z + nu * std::conj(z);
            const cplx a = s.amplitude;
            return std::exp(-0.5 * std::norm(zp) + zp * std::conj(a) - std::conj(zp) * a);
          },
          [&](const Thermal& s) -> cplx {
            const double bw = thermal_exponent(s, state.mode);
            const double coth = std::isinf(bw) ? 1.0 : 1.0 / std::tanh(0.5 * bw);
            return std::exp(-0.5 * std::norm(z) * coth);
          },
      },
      state.family);
}

std::vector<cplx> squeezed_amplitudes(const Squeezed& s, int nmax) {
  if (nmax < 0) return {};
  const auto [mu, nu] = squeeze_coeffs(s);
  const cplx g = mu * s.amplitude - nu * std::conj(s.amplitude);
  // State equals D(g) S |0>, annihilated by mu (a - g) + nu (a^dag - g*).
  std::vector<cplx> c(static_cast<std::size_t>(nmax) + 1);
  c[0] = std::exp(-0.5 * std::norm(g) - 0.5 * (nu / mu) * std::conj(g) * std::conj(g)) /
         std::sqrt(mu);
  const cplx drive = mu * g + nu * std::conj(g);
  for (int n = 0; n < nmax; ++n) {
    cplx next = drive * c[n];
    if (n > 0) next -= nu * std::sqrt(static_cast<double>(n)) * c[n - 1];
    c[n + 1] = next / (mu * std::sqrt(n + 1.0));
  }
  return c;
}

double photon_counting(const PhotonState& state, int n) {
  if (n < 0) return 0.0;
  return std::visit(
      overloaded{
          [&](const Number& s) -> double { return s.n == n ? 1.0 : 0.0; },
          [&](const Coherent& s) -> double {
            const double m = std::norm(s.amplitude);
            if (m == 0.0) return n == 0 ? 1.0 : 0.0;
            return std::exp(-m + n * std::log(m) - std::lgamma(n + 1.0));
          },
          [&](const Squeezed& s) -> double { return std::norm(squeezed_amplitudes(s, n)[n]); },
          [&](const Thermal& s) -> double {
            const double bw = thermal_exponent(s, state.mode);
            if (std::isinf(bw)) return n == 0 ? 1.0 : 0.0;
            return -std::expm1(-bw) * std::exp(-bw * n);
          },
      },
      state.family);
}

LadderMoments ladder_moments(const PhotonState& state) {
  return std::visit(
      overloaded{
          [&](const Number& s) -> LadderMoments { return {0.0, 0.0, static_cast<double>(s.n)}; },
          [&](const Coherent& s) -> LadderMoments {
            const cplx a = s.amplitude;
            return {a, a * a, std::norm(a)};
          },
          [&](const Squeezed& s) -> LadderMoments {
            const auto [mu, nu] = squeeze_coeffs(s);
            const cplx a = s.amplitude;
            const cplx ac = std::conj(a);
            const double na = std::norm(a);
            const cplx mean = mu * a - nu * ac;
            const cplx a2 = mu * mu * a * a - mu * nu * (2.0 * na + 1.0) + nu * nu * ac * ac;
            const double n = std::norm(mean) + std::norm(nu);
            return {mean, a2, n};
          },
          [&](const Thermal& s) -> LadderMoments {
            const double bw = thermal_exponent(s, state.mode);
            const double n = std::isinf(bw) ? 0.0 : 1.0 / std::expm1(bw);
            return {0.0, 0.0, n};
          },
      },
      state.family);
}

double mean_photons(const PhotonState& state) { return ladder_moments(state).n; }

PhotonState match_mean_photons(FamilyKind kind, double target, const MatchFixed& fixed) {
  if (!(target >= 0.0) || !std::isfinite(target)) {
    throw std::invalid_argument("target mean photon number must be finite and nonnegative");
  }
  switch (kind) {
    case FamilyKind::Number: {
      const double n = std::round(target);
      if (std::abs(n - target) > 1e-10) {
        throw std::invalid_argument("number states need an integer mean photon number");
      }
      return {Number{static_cast<int>(n)}, fixed.mode};
    }
    case FamilyKind::Coherent:
      return {Coherent{std::polar(std::sqrt(target), fixed.amplitude_arg)}, fixed.mode};
    case FamilyKind::Thermal: {
      const double beta = target == 0.0 ? std::numeric_limits<double>::infinity()
                                        : std::log1p(1.0 / target) / fixed.mode.omega;
      return {Thermal{beta}, fixed.mode};
    }
    case FamilyKind::Squeezed: {
      if (fixed.r < 0.0) throw std::invalid_argument("squeezing parameter must be nonnegative");
      const double mu = std::cosh(0.5 * fixed.r);
      const double s = std::sinh(0.5 * fixed.r);
      const double floor = s * s;
      if (target < floor - 1e-12) {
        throw std::invalid_argument("target below the squeezed-vacuum photon number");
      }
      // |mu A - nu A*|^2 = |A|^2 (mu^2 + s^2 - 2 mu s cos(angle + 2 arg A)).
      const double gain =
          mu * mu + s * s - 2.0 * mu * s * std::cos(fixed.angle + 2.0 * fixed.amplitude_arg);
      const double mag2 = std::max(0.0, target - floor) / gain;
      return {Squeezed{std::polar(std::sqrt(mag2), fixed.amplitude_arg), fixed.r, fixed.angle},
              fixed.mode};
    }
  }
  throw std::invalid_argument("unknown family");
}

Stats flux_stats(const PhotonState& state, const ModeParams& mode, double t) {
  const auto m = ladder_moments(state);
  const cplx rot = std::polar(1.0, -mode.omega * t);
  const cplx b = rot * m.a;
  const cplx b2 = rot * rot * m.a2;
  const double xi = mode.xi;
  const double mean = std::sqrt(2.0) * xi * b.real();
  const double second = 2.0 * b2.real() + 2.0 * m.n + 1.0;
  const double var = 0.5 * xi * xi * (second - 4.0 * b.real() * b.real());
  return {mean, std::sqrt(std::max(0.0, var))};
}

Stats emf_stats(const PhotonState& state, const ModeParams& mode, double t) {
  const auto m = ladder_moments(state);
  const cplx rot = std::polar(1.0, -mode.omega * t);
  const cplx b = rot * m.a;
  const cplx b2 = rot * rot * m.a2;
  const double scale = mode.omega * mode.xi;
  const double mean = std::sqrt(2.0) * scale * b.imag();
  const double second = -2.0 * b2.real() + 2.0 * m.n + 1.0;
  const double var = 0.5 * scale * scale * (second - 4.0 * b.imag() * b.imag());
  return {mean, std::sqrt(std::max(0.0, var))};
}

}  // namespace mesoqo::qstates
