#include "mesoqo/twomode.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mesoqo/qstates.hpp"

namespace mesoqo::twomode {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

PhotonState with_mode(PhotonState s, const ModeParams& mode) {
  s.mode = mode;
  return s;
}

bool same_point(cplx a, cplx b) { return std::abs(a - b) <= 1e-14 * (1.0 + std::abs(a)); }

double phase_of_product(cplx a, cplx b) { return std::imag(a * std::conj(b)); }

}  // namespace

DisplacementSum multiply(const DisplacementSum& x, const DisplacementSum& y) {
  DisplacementSum out;
  out.reserve(x.size() * y.size());
  for (const auto& s : x) {
    for (const auto& u : y) {
      const double ph = phase_of_product(s.za, u.za) + phase_of_product(s.zb, u.zb);
      const DisplacementTerm term{s.coef * u.coef * std::polar(1.0, ph), s.za + u.za, s.zb + u.zb};
      bool merged = false;
      for (auto& o : out) {
        if (same_point(o.za, term.za) && same_point(o.zb, term.zb)) {
          o.coef += term.coef;
          merged = true;
          break;
        }
      }
      if (!merged) out.push_back(term);
    }
  }
  return out;
}

cplx weyl2(const TwoModePhotonState& state, cplx za, cplx zb) {
  return std::visit(
      overloaded{
          [&](const Factorizable& f) -> cplx {
            return qstates::weyl(with_mode(f.a, state.mode_a), za) *
                   qstates::weyl(with_mode(f.b, state.mode_b), zb);
          },
          [&](const SeparableMixture& m) -> cplx {
            cplx sum = 0.0;
            for (const auto& t : m.terms) {
              sum += t.weight * qstates::weyl(with_mode(t.a, state.mode_a), za) *
                     qstates::weyl(with_mode(t.b, state.mode_b), zb);
            }
            return sum;
          },
          [&](const EntangledNumberPair& p) -> cplx {
            const NumberPair comps[2] = {p.first, p.second};
            cplx sum = 0.0;
            for (const auto& j : comps) {
              for (const auto& k : comps) {
                sum += qstates::displacement_element(Number{j.na}, Number{k.na}, za) *
                       qstates::displacement_element(Number{j.nb}, Number{k.nb}, zb);
              }
            }
            return 0.5 * sum;
          },
          [&](const EntangledCoherentPair& p) -> cplx {
            const Coherent ca[2] = {Coherent{p.a1}, Coherent{p.a2}};
            const Coherent cb[2] = {Coherent{p.a2}, Coherent{p.a1}};
            cplx sum = 0.0;
            for (int j = 0; j < 2; ++j) {
              for (int k = 0; k < 2; ++k) {
                sum += qstates::displacement_element(ca[j], ca[k], za) *
                       qstates::displacement_element(cb[j], cb[k], zb);
              }
            }
            const double norm2 = 1.0 / (2.0 + 2.0 * std::exp(-std::norm(p.a1 - p.a2)));
            return norm2 * sum;
          },
      },
      state.family);
}

cplx expectation(const TwoModePhotonState& state, const DisplacementSum& op) {
  cplx sum = 0.0;
  for (const auto& t : op) sum += t.coef * weyl2(state, t.za, t.zb);
  return sum;
}

cplx reduced_weyl(const TwoModePhotonState& state, Which which, cplx z) {
  return which == Which::A ? weyl2(state, z, 0.0) : weyl2(state, 0.0, z);
}

DisplacementSum intensity_operator(Which which, const ChargeCoupling& c, const ModeParams& mode,
                                   double x, double t) {
  // cos(x - e phi) = [e^{ix} D(-lambda) + e^{-ix} D(lambda)] / 2.
  const cplx lam = cplx(0.0, c.q) * std::polar(1.0, mode.omega * t);
  const cplx plus = 0.5 * std::polar(1.0, -x);
  const cplx minus = 0.5 * std::polar(1.0, x);
  if (which == Which::A) return {{1.0, 0.0, 0.0}, {plus, lam, 0.0}, {minus, -lam, 0.0}};
  return {{1.0, 0.0, 0.0}, {plus, 0.0, lam}, {minus, 0.0, -lam}};
}

double marginal_intensity(const TwoModePhotonState& state, Which which, const ChargeCoupling& c,
                          double x, double t) {
  const ModeParams& mode = which == Which::A ? state.mode_a : state.mode_b;
  return expectation(state, intensity_operator(which, c, mode, x, t)).real();
}

double joint_intensity(const TwoModePhotonState& state, const ChargeCoupling& c, double xa, double xb,
                       double t) {
  // Product states factorize; using the marginals keeps R exactly one.
  if (std::holds_alternative<Factorizable>(state.family)) {
    return marginal_intensity(state, Which::A, c, xa, t) * marginal_intensity(state, Which::B, c, xb, t);
  }
  const auto op = multiply(intensity_operator(Which::A, c, state.mode_a, xa, t),
                           intensity_operator(Which::B, c, state.mode_b, xb, t));
  return expectation(state, op).real();
}

double ratio_R(const TwoModePhotonState& state, const ChargeCoupling& c, double xa, double xb, double t) {
  const double ia = marginal_intensity(state, Which::A, c, xa, t);
  const double ib = marginal_intensity(state, Which::B, c, xb, t);
  if (ia <= kSingularMarginal || ib <= kSingularMarginal) return std::numeric_limits<double>::quiet_NaN();
  return joint_intensity(state, c, xa, xb, t) / (ia * ib);
}

SepCoefficients sep_coefficients(double q) {
  const double q2 = q * q;
  const double alpha = 0.5 * (2.0 - q2) * std::exp(-0.5 * q2);
  const double gamma = 0.5 * std::exp(-q2) * (1.0 + (1.0 - q2) * (1.0 - q2));
  return {alpha, gamma};
}

double ratio_sep_closed(double q, double xa, double xb) {
  const auto [alpha, gamma] = sep_coefficients(q);
  const double ca = std::cos(xa), cb = std::cos(xb);
  return (1.0 + alpha * (ca + cb) + gamma * ca * cb) / ((1.0 + alpha * ca) * (1.0 + alpha * cb));
}

double ratio_ent_closed(double q, double omega_sum, double xa, double xb, double t) {
  const auto [alpha, gamma] = sep_coefficients(q);
  const double ca = std::cos(xa), cb = std::cos(xb);
  const double q2 = q * q;
  const double cross = q2 * std::exp(-q2) * std::sin(xa) * std::sin(xb) * std::cos(omega_sum * t);
  return ratio_sep_closed(q, xa, xb) + cross / ((1.0 + alpha * ca) * (1.0 + alpha * cb));
}

std::pair<double, double> sep_bounds(double q) {
  const auto [alpha, gamma] = sep_coefficients(q);
  if (std::abs(std::abs(alpha) - 1.0) < 1e-15) throw std::domain_error("sep_bounds: alpha = +-1");
  const double at_zero = (1.0 + 2.0 * alpha + gamma) / ((1.0 + alpha) * (1.0 + alpha));
  const double at_pi = (1.0 - 2.0 * alpha + gamma) / ((1.0 - alpha) * (1.0 - alpha));
  return {std::min(at_zero, at_pi), std::max(at_zero, at_pi)};
}

QFit fit_q_to_bounds(double target_min, double target_max, double q_lo, double q_hi) {
  auto deviation = [&](double q) {
    const auto [lo, hi] = sep_bounds(q);
    return std::max(std::abs(lo - target_min), std::abs(hi - target_max));
  };
  // Coarse scan, then golden-section refinement around the best sample.
  const int n = 2000;
  double best_q = q_lo, best = deviation(q_lo);
  for (int i = 1; i <= n; ++i) {
    const double q = q_lo + (q_hi - q_lo) * i / n;
    const double d = deviation(q);
    if (d < best) {
      best = d;
      best_q = q;
    }
  }
  const double h = (q_hi - q_lo) / n;
  double a = std::max(q_lo, best_q - h), b = std::min(q_hi, best_q + h);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = deviation(c), fd = deviation(d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = deviation(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = deviation(d);
    }
  }
  const double q = 0.5 * (a + b);
  const auto [lo, hi] = sep_bounds(q);
  return {q, lo, hi, deviation(q)};
}

TwoModePhotonState number_pair(int n1, int n2, Pairing pairing, bool entangled, const ModeParams& mode_a,
                               const ModeParams& mode_b) {
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("photon numbers must be nonnegative");
  const NumberPair first = pairing == Pairing::Correlated ? NumberPair{n1, n1} : NumberPair{n1, n2};
  const NumberPair second = pairing == Pairing::Correlated ? NumberPair{n2, n2} : NumberPair{n2, n1};
  if (entangled) {
    if (first.na == second.na && first.nb == second.nb) {
      throw std::invalid_argument("entangled number pair needs two distinct components");
    }
    return {EntangledNumberPair{first, second}, mode_a, mode_b};
  }
  SeparableMixture mix;
  mix.terms.push_back({0.5, {Number{first.na}, mode_a}, {Number{first.nb}, mode_b}});
  mix.terms.push_back({0.5, {Number{second.na}, mode_a}, {Number{second.nb}, mode_b}});
  return {mix, mode_a, mode_b};
}

TwoModePhotonState coherent_pair(cplx a1, cplx a2, bool entangled, const ModeParams& mode_a,
                                 const ModeParams& mode_b) {
  if (entangled) return {EntangledCoherentPair{a1, a2}, mode_a, mode_b};
  SeparableMixture mix;
  mix.terms.push_back({0.5, {Coherent{a1}, mode_a}, {Coherent{a2}, mode_b}});
  mix.terms.push_back({0.5, {Coherent{a2}, mode_a}, {Coherent{a1}, mode_b}});
  return {mix, mode_a, mode_b};
}

}  // namespace mesoqo::twomode
