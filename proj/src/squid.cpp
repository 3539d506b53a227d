#include "mesoqo/squid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mesoqo/qstates.hpp"
#include "mesoqo/specfun.hpp"

namespace mesoqo::squid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double safe_ratio(double num, double den) {
  if (std::abs(den) <= 1e-300) return kNaN;
  return num / den;
}

}  // namespace

double classical_current(const SquidDrive& d, double t) {
  return d.critical_current *
         std::sin(d.phase_offset + d.omega_bias * t + d.drive_amplitude * std::sin(d.omega_drive * t));
}

double classical_current_expansion(const SquidDrive& d, double t) {
  const int nmax = static_cast<int>(std::abs(d.drive_amplitude)) + 40;
  double sum = 0.0;
  for (int n = -nmax; n <= nmax; ++n) {
    sum += specfun::bessel_j(n, d.drive_amplitude) *
           std::sin(d.phase_offset + d.omega_bias * t + n * d.omega_drive * t);
  }
  return d.critical_current * sum;
}

double classical_shapiro(const SquidDrive& d, int step) {
  return d.critical_current * specfun::bessel_j(-step, d.drive_amplitude) * std::sin(d.phase_offset);
}

cplx sigma(double qprime, double omega, double t) {
  return cplx(0.0, qprime) * std::polar(1.0, omega * t);
}

double quantum_current(const PhotonState& state, double qprime, double omega_bias, double t,
                       double critical_current, double phase_offset) {
  const cplx w = qstates::weyl(state, sigma(qprime, state.mode.omega, t));
  return critical_current * (std::polar(1.0, phase_offset + omega_bias * t) * w).imag();
}

HarmonicSeries current_series(const std::optional<PhotonState>& state, const SquidDrive& d,
                              double qprime) {
  std::optional<PhotonState> field = state;
  if (field) field->mode.omega = d.omega_drive;
  // g(t) = e^{i amplitude sin(w t)} W(sigma(t)) is periodic in the drive frequency.
  const auto g = HarmonicSeries::from_periodic(
      [&](double t) {
        cplx v = std::polar(1.0, d.drive_amplitude * std::sin(d.omega_drive * t));
        if (field) v *= qstates::weyl(*field, sigma(qprime, d.omega_drive, t));
        return v;
      },
      d.omega_drive);
  const auto x = harmonic(d.omega_bias, std::polar(d.critical_current, d.phase_offset)) * g;
  // Im X = (X - conj X) / 2i.
  return (x - x.conj()) * cplx(0.0, -0.5);
}

double quantum_shapiro(const std::optional<PhotonState>& state, const SquidDrive& drive, double qprime,
                       int step) {
  SquidDrive d = drive;
  d.omega_bias = step * d.omega_drive;
  return current_series(state, d, qprime).average().real();
}

twomode::DisplacementSum current_operator(twomode::Which which, const TwoSquidParams& p, double t) {
  // sin(theta + Phi) with e^{i Phi} = D(s): [e^{i theta} D(s) - e^{-i theta} D(-s)] / 2i.
  const bool a = which == twomode::Which::A;
  const double theta = (a ? p.omega_a : p.omega_b) * t;
  const double ic = a ? p.i1 : p.i2;
  const cplx s = sigma(p.qprime, a ? p.omega1 : p.omega2, t);
  const cplx c_plus = ic * std::polar(1.0, theta) / cplx(0.0, 2.0);
  const cplx c_minus = -ic * std::polar(1.0, -theta) / cplx(0.0, 2.0);
  if (a) return {{c_plus, s, 0.0}, {c_minus, -s, 0.0}};
  return {{c_plus, 0.0, s}, {c_minus, 0.0, -s}};
}

CurrentMoments two_squid_moments(const TwoModePhotonState& state, const TwoSquidParams& p, double t) {
  TwoModePhotonState s = state;
  s.mode_a.omega = p.omega1;
  s.mode_b.omega = p.omega2;
  using twomode::multiply;
  const auto ia = current_operator(twomode::Which::A, p, t);
  const auto ib = current_operator(twomode::Which::B, p, t);
  const auto ia2 = multiply(ia, ia);
  const auto ib2 = multiply(ib, ib);
  CurrentMoments m;
  m.ia = twomode::expectation(s, ia).real();
  m.ib = twomode::expectation(s, ib).real();
  m.ia2 = twomode::expectation(s, ia2).real();
  m.ib2 = twomode::expectation(s, ib2).real();
  // Product states factorize; the joint sums would only add rounding.
  if (std::holds_alternative<Factorizable>(s.family)) {
    m.iaib = m.ia * m.ib;
    m.ia2ib2 = m.ia2 * m.ib2;
    return m;
  }
  m.iaib = twomode::expectation(s, multiply(ia, ib)).real();
  m.ia2ib2 = twomode::expectation(s, multiply(ia2, ib2)).real();
  return m;
}

NumberPairCoefficients number_pair_coefficients(int n1, int n2, double qprime) {
  const double x = qprime * qprime;
  const double l1 = specfun::laguerre(n1, 0, x);
  const double l2 = specfun::laguerre(n2, 0, x);
  NumberPairCoefficients c{};
  c.c0 = 0.5 * std::exp(-0.5 * x) * (l1 + l2);
  c.c1 = 0.5 * std::exp(-2.0 * x) * (specfun::laguerre(n1, 0, 4.0 * x) + specfun::laguerre(n2, 0, 4.0 * x));
  c.c2 = std::exp(-x) * l1 * l2;
  c.c3 = 0.5 * std::exp(-x) * specfun::laguerre(n1, n2 - n1, x) * specfun::laguerre(n2, n1 - n2, x);
  return c;
}

double cross_frequency(int n1, int n2, const TwoSquidParams& p) {
  return static_cast<double>(n1 - n2) * (p.omega1 - p.omega2);
}

double cross_current(int n1, int n2, const TwoSquidParams& p, double t) {
  const auto c = number_pair_coefficients(n1, n2, p.qprime);
  const double sign = ((n1 - n2) % 2 == 0) ? 1.0 : -1.0;
  const double wa = p.omega_a * t, wb = p.omega_b * t;
  return -p.i1 * p.i2 * c.c3 * (std::cos(wa + wb) - sign * std::cos(wa - wb)) *
         std::cos(cross_frequency(n1, n2, p) * t);
}

CurrentMoments two_squid_currents_number(int n1, int n2, bool entangled, const TwoSquidParams& p, double t) {
  const auto c = number_pair_coefficients(n1, n2, p.qprime);
  const double sa = std::sin(p.omega_a * t), sb = std::sin(p.omega_b * t);
  CurrentMoments m;
  m.ia = p.i1 * c.c0 * sa;
  m.ib = p.i2 * c.c0 * sb;
  m.ia2 = 0.5 * p.i1 * p.i1 * (1.0 - c.c1 * std::cos(2.0 * p.omega_a * t));
  m.ib2 = 0.5 * p.i2 * p.i2 * (1.0 - c.c1 * std::cos(2.0 * p.omega_b * t));
  m.iaib = p.i1 * p.i2 * c.c2 * sa * sb;
  if (entangled) m.iaib += cross_current(n1, n2, p, t);
  const auto state = twomode::number_pair(n1, n2, twomode::Pairing::Swapped, entangled, {p.omega1, 1.0},
                                          {p.omega2, 1.0});
  m.ia2ib2 = two_squid_moments(state, p, t).ia2ib2;
  return m;
}

CurrentMoments two_squid_currents_coherent(cplx a1, cplx a2, bool entangled, const TwoSquidParams& p,
                                           double t) {
  const double qp = p.qprime;
  const double r1 = std::abs(a1), r2 = std::abs(a2);
  const double th1 = std::arg(a1), th2 = std::arg(a2);
  const double damp = std::exp(-0.5 * qp * qp);
  auto sep = [&](double ic, double wbias, double wfield) {
    return 0.5 * ic * damp *
           (std::sin(wbias * t + 2.0 * qp * r1 * std::cos(wfield * t - th1)) +
            std::sin(wbias * t + 2.0 * qp * r2 * std::cos(wfield * t - th2)));
  };
  const double ia_sep = sep(p.i1, p.omega_a, p.omega1);
  const double ib_sep = sep(p.i2, p.omega_b, p.omega2);

  const auto state = twomode::coherent_pair(a1, a2, entangled, {p.omega1, 1.0}, {p.omega2, 1.0});
  CurrentMoments m = two_squid_moments(state, p, t);
  if (!entangled) {
    m.ia = ia_sep;
    m.ib = ib_sep;
    return m;
  }
  const double n2 = 1.0 / (2.0 + 2.0 * std::exp(-std::norm(a1 - a2)));
  const double e = std::exp(-r1 * r1 - r2 * r2 + 2.0 * r1 * r2 * std::cos(th1 - th2));
  auto f = [&](double wbias, double wfield) {
    const double s1 = std::sin(wfield * t - th1), s2 = std::sin(wfield * t - th2);
    const double c1 = std::cos(wfield * t - th1), c2 = std::cos(wfield * t - th2);
    const double a = qp * (r1 * s1 - r2 * s2);
    return (std::exp(a) + std::exp(-a)) * std::sin(wbias * t + qp * (r1 * c1 + r2 * c2));
  };
  m.ia = 2.0 * n2 * ia_sep + n2 * e * f(p.omega_a, p.omega1) * damp * p.i1;
  m.ib = 2.0 * n2 * ib_sep + n2 * e * f(p.omega_b, p.omega2) * damp * p.i2;
  return m;
}

double ratio_c(const CurrentMoments& m) { return safe_ratio(m.iaib, m.ia * m.ib); }
double ratio_c2(const CurrentMoments& m) { return safe_ratio(m.ia2ib2, m.ia2 * m.ib2); }

double ratio_c_sep_number(int n1, int n2, double qprime) {
  const double x = qprime * qprime;
  const double l1 = specfun::laguerre(n1, 0, x), l2 = specfun::laguerre(n2, 0, x);
  return safe_ratio(4.0 * l1 * l2, (l1 + l2) * (l1 + l2));
}

double ratio_c_ent_number(int n1, int n2, const TwoSquidParams& p, double t, double exclusion) {
  const double x = p.qprime * p.qprime;
  const double l1 = specfun::laguerre(n1, 0, x), l2 = specfun::laguerre(n2, 0, x);
  const double den = (l1 + l2) * (l1 + l2);
  const double k = 4.0 * specfun::laguerre(n1, n2 - n1, x) * specfun::laguerre(n2, n1 - n2, x) / den;
  const double base = ratio_c_sep_number(n1, n2, p.qprime);
  const double osc = std::cos(cross_frequency(n1, n2, p) * t);
  if ((n1 - n2) % 2 == 0) return base + k * osc;
  const double sa = std::sin(p.omega_a * t), sb = std::sin(p.omega_b * t);
  if (std::abs(sa) < exclusion || std::abs(sb) < exclusion) return kNaN;
  const double cot = std::cos(p.omega_a * t) * std::cos(p.omega_b * t) / (sa * sb);
  return base - k * osc * cot;
}

}  // namespace mesoqo::squid
