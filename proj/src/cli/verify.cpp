#include "mesoqo/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mesoqo/fockbench.hpp"
#include "mesoqo/harmonic.hpp"
#include "mesoqo/interference.hpp"
#include "mesoqo/qstates.hpp"
#include "mesoqo/twomode.hpp"

namespace mesoqo::cli {

namespace {

using fockbench::FockMatrix;
constexpr double pi = std::numbers::pi;

CheckResult check(std::string name, double err, double tol) { return {std::move(name), err, tol, err <= tol}; }

FockMatrix ring_current(const fockbench::QuadratureFunctions& qf, double ic, double qprime, double bias, double field,
                        double t, int power) {
  return fockbench::rotate(qf.apply([&](double v) { return std::pow(ic * std::sin(bias * t + qprime * v), power); }),
                           field * t);
}

FockMatrix fringe(const fockbench::QuadratureFunctions& qf, double q, double x, double phase) {
  return fockbench::rotate(qf.apply([&](double v) { return 1.0 + std::cos(x - q * v); }), phase);
}

// Six current moments on truncated matrices.
squid::CurrentMoments oracle_moments(const TwoModePhotonState& s, const squid::TwoSquidParams& p, int dim, double t) {
  const auto ens = fockbench::two_mode_ensemble(s, dim, dim);
  fockbench::QuadratureFunctions qf(dim);
  const FockMatrix id = FockMatrix::Identity(dim, dim);
  const auto a1 = ring_current(qf, p.i1, p.qprime, p.omega_a, p.omega1, t, 1);
  const auto a2 = ring_current(qf, p.i1, p.qprime, p.omega_a, p.omega1, t, 2);
  const auto b1 = ring_current(qf, p.i2, p.qprime, p.omega_b, p.omega2, t, 1);
  const auto b2 = ring_current(qf, p.i2, p.qprime, p.omega_b, p.omega2, t, 2);
  auto e = [&](const FockMatrix& x, const FockMatrix& y) { return fockbench::expectation(ens, x, y).real(); };
  return {e(a1, id), e(id, b1), e(a2, id), e(id, b2), e(a1, b1), e(a2, b2)};
}

double moment_error(const squid::CurrentMoments& a, const squid::CurrentMoments& b, bool relative) {
  const double pa[6] = {a.ia, a.ib, a.ia2, a.ib2, a.iaib, a.ia2ib2};
  const double pb[6] = {b.ia, b.ib, b.ia2, b.ib2, b.iaib, b.ia2ib2};
  double err = 0.0;
  for (int k = 0; k < 6; ++k) {
    const double d = std::abs(pa[k] - pb[k]);
    err = std::max(err, relative ? d / std::max(std::abs(pb[k]), 1e-12) : d);
  }
  return err;
}

// Window average of Tr[rho I(t) I(t + tau)]; exact for more than dim samples.
cplx gamma_window(const PhotonState& s, double q, double tau) {
  const double w = s.mode.omega;
  const int dim = fockbench::adequate_dim(s) + 32;
  const auto rho = fockbench::density_matrix(s, dim);
  fockbench::QuadratureFunctions qf(dim);
  const auto base = qf.apply([&](double x) { return 1.0 + std::cos(q * x); });
  const int n = 2 * dim + 2;
  cplx sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * pi / w * k / n;
    sum += fockbench::expectation(rho, fockbench::rotate(base, w * t) * fockbench::rotate(base, w * (t + tau)));
  }
  return sum / static_cast<double>(n);
}

SuiteReport suite_weyl(const Context& ctx) {
  SuiteReport rep{"weyl-oracle", {}};
  const ModeParams mode{1.0, 1.0};
  const double target = 17.0;
  const qstates::MatchFixed fixed{mode, 0.7, 4.2, 0.3};
  const std::pair<std::string, PhotonState> states[] = {
      {"number", {Number{17}, mode}},
      {"coherent", qstates::match_mean_photons(qstates::FamilyKind::Coherent, target, fixed)},
      {"squeezed", qstates::match_mean_photons(qstates::FamilyKind::Squeezed, target, fixed)},
      {"thermal", qstates::match_mean_photons(qstates::FamilyKind::Thermal, target, fixed)},
  };
  std::vector<cplx> grid;
  for (double r : {0.6, 1.2, 1.8, 2.4, 3.0})
    for (double a : {0.0, 1.3, 2.5, 3.8, 5.1}) grid.push_back(std::polar(r, a));
  for (const auto& [name, s] : states) {
    const auto rec = weyl_spot_check(name, s, grid, ctx.policy);
    rep.checks.push_back(check(name + " (dim " + std::to_string(rec.dim) + ")", rec.max_error, 1e-8));
  }
  return rep;
}

SuiteReport suite_flux(const Context& ctx) {
  SuiteReport rep{"flux-stats", {}};
  const ModeParams mode{1.3, 0.8};
  const PhotonState states[] = {{Number{5}, mode},
                                {Coherent{std::polar(2.0, 0.4)}, mode},
                                {Squeezed{cplx(1.0, 0.5), 1.0, 0.6}, mode},
                                {Thermal{0.3}, mode}};
  const char* names[] = {"number", "coherent", "squeezed", "thermal"};
  for (int k = 0; k < 4; ++k) {
    const int dim = fockbench::adequate_dim(states[k], ctx.policy) + 32;
    const auto rho = fockbench::density_matrix(states[k], dim);
    double err = 0.0;
    for (double t : {0.0, 0.7, 2.1}) {
      const FockMatrix ops[2] = {fockbench::flux_matrix(mode, t, dim), fockbench::emf_matrix(mode, t, dim)};
      const qstates::Stats st[2] = {qstates::flux_stats(states[k], mode, t), qstates::emf_stats(states[k], mode, t)};
      for (int j = 0; j < 2; ++j) {
        const double m = fockbench::expectation(rho, ops[j]).real();
        const double v = fockbench::expectation(rho, ops[j] * ops[j]).real() - m * m;
        err = std::max({err, std::abs(m - st[j].mean), std::abs(std::sqrt(std::max(v, 0.0)) - st[j].stddev)});
      }
    }
    rep.checks.push_back(check(names[k], err, 1e-8));
  }
  return rep;
}

SuiteReport suite_autocorr(const Context&) {
  SuiteReport rep{"autocorr", {}};
  const ModeParams mode{1.0, 1.0};
  const ChargeCoupling c{0.7};
  const PhotonState states[] = {{Number{0}, mode}, {Number{2}, mode}, {Coherent{1.0}, mode}, {Thermal{1.0}, mode}};
  const char* names[] = {"vacuum", "number_2", "coherent_1", "thermal_beta1"};
  for (int k = 0; k < 4; ++k) {
    double err = 0.0;
    for (double tau : {0.0, 0.6, 1.7, 3.0, 4.4}) {
      err = std::max(err, std::abs(interference::autocorrelation_quantum_value(states[k], c, mode, tau) -
                                   gamma_window(states[k], c.q, tau)));
    }
    rep.checks.push_back(check(std::string("quantum_") + names[k], err, 1e-6));
  }
  const double w = 1e-4, ephi = std::sqrt(34.0);
  std::vector<double> taus;
  for (int k = 0; k < 9; ++k) taus.push_back(k * 0.37 / w);
  const auto g = interference::autocorrelation_classical(ephi, w, taus);
  double err = 0.0;
  for (std::size_t j = 0; j < taus.size(); ++j) {
    const auto direct = HarmonicSeries::from_periodic(
        [&](double t) { return interference::classical_intensity(ephi, w, t) * interference::classical_intensity(ephi, w, t + taus[j]); },
        w);
    err = std::max(err, std::abs(g.gamma[j] - direct.average()));
  }
  rep.checks.push_back(check("classical_direct_average", err, 1e-8));
  return rep;
}

SuiteReport suite_twomode(const Context& ctx) {
  SuiteReport rep{"twomode", {}};
  const ModeParams ma{1.2e-4, 1.0}, mb{1e-4, 1.0};
  const ChargeCoupling c{0.25};
  {
    const TwoModePhotonState fact{Factorizable{{Coherent{cplx(0.5, 0.3)}, ma}, {Thermal{2e4}, mb}}, ma, mb};
    double err = 0.0;
    for (double t : {0.0, 3e4})
      for (double xa = -2.0 * pi; xa <= 2.0 * pi; xa += 0.7)
        for (double xb = -2.0 * pi; xb <= 2.0 * pi; xb += 0.9) {
          const double r = twomode::ratio_R(fact, c, xa, xb, t);
          if (!std::isnan(r)) err = std::max(err, std::abs(r - 1.0));
        }
    rep.checks.push_back(check("factorizable_R_equals_one", err, 1e-12));
  }
  for (bool ent : {false, true}) {
    const auto st = twomode::number_pair(0, 1, twomode::Pairing::Correlated, ent, ma, mb);
    const auto rec = joint_spot_check("", st, c.q, ctx.policy);
    double err = 0.0;
    for (double t : {0.0, 1.1e4})
      for (double xa : {0.3, 2.0})
        for (double xb : {-1.0, 2.9}) {
          const double closed = ent ? twomode::ratio_ent_closed(c.q, ma.omega + mb.omega, xa, xb, t)
                                    : twomode::ratio_sep_closed(c.q, xa, xb);
          err = std::max(err, std::abs(closed - twomode::ratio_R(st, c, xa, xb, t)));
        }
    rep.checks.push_back(check(ent ? "R_ent_closed_vs_algebra" : "R_sep_closed_vs_algebra", err, 1e-12));
    rep.checks.push_back(check(ent ? "joint_ent_vs_matrices" : "joint_sep_vs_matrices", rec.max_error, 1e-10));
  }
  for (bool ent : {false, true}) {
    const auto st = twomode::number_pair(1, 3, twomode::Pairing::Swapped, ent, ma, mb);
    const int dim = 8;
    const auto rho = fockbench::two_mode_density(st, dim, dim);
    FockMatrix expect = FockMatrix::Zero(dim, dim);
    expect(1, 1) = 0.5;
    expect(3, 3) = 0.5;
    const double err = std::max((fockbench::partial_trace(rho, dim, dim, fockbench::Keep::A) - expect).cwiseAbs().maxCoeff(),
                                (fockbench::partial_trace(rho, dim, dim, fockbench::Keep::B) - expect).cwiseAbs().maxCoeff());
    rep.checks.push_back(check(ent ? "reduced_density_ent" : "reduced_density_sep", err, 1e-12));
  }
  return rep;
}

SuiteReport suite_squid(const Context& ctx) {
  SuiteReport rep{"squid", {}};
  const double w = 1e-4, qp = 0.5;
  {
    const squid::SquidDrive bare{0.6, 0.0, 0.0, w, 1.0};
    double odd = 0.0;
    for (double r : {0.5, 2.0, 4.2}) {
      const PhotonState s{Squeezed{0.0, r, 0.3}, {w, 1.0}};
      for (int step = -5; step <= 5; step += 2) odd = std::max(odd, std::abs(squid::quantum_shapiro(s, bare, qp, step)));
    }
    rep.checks.push_back(check("squeezed_vacuum_odd_steps", odd, 1e-10));
  }
  {
    double err = 0.0;
    for (int step = -3; step <= 3; ++step) {
      const squid::SquidDrive d{0.7, step * w, 1.8, w, 1.0};
      const auto s = HarmonicSeries::from_periodic([&](double t) { return squid::classical_current(d, t); }, w);
      err = std::max(err, std::abs(s.average().real() - squid::classical_shapiro(d, step)));
    }
    rep.checks.push_back(check("classical_steps_vs_average", err, 1e-10));
  }
  {
    double err = 0.0;
    const squid::SquidDrive bare{0.9, 0.0, 0.0, w, 1.0};
    for (double amp : {0.5, 2.0}) {
      const PhotonState s{Coherent{cplx(0.0, amp)}, {w, 1.0}};
      const squid::SquidDrive equiv{0.9, 0.0, 2.0 * qp * amp, w, 1.0};
      for (int step = -3; step <= 3; ++step) {
        err = std::max(err, std::abs(squid::quantum_shapiro(s, bare, qp, step) -
                                     std::exp(-0.5 * qp * qp) * squid::classical_shapiro(equiv, step)));
      }
    }
    rep.checks.push_back(check("coherent_step_rescaling", err, 1e-10));
  }
  const squid::TwoSquidParams p;
  for (bool ent : {false, true}) {
    const auto st = twomode::number_pair(1, 3, twomode::Pairing::Swapped, ent, {p.omega1, 1.0}, {p.omega2, 1.0});
    const int dim = fockbench::adequate_two_mode_dim(st, ctx.policy) + 24;
    double err = 0.0;
    for (int k = 0; k < 16; ++k) {
      const double t = (0.37 + 0.61 * k) / (p.omega1 - p.omega2);
      err = std::max(err, moment_error(squid::two_squid_currents_number(1, 3, ent, p, t), oracle_moments(st, p, dim, t), true));
    }
    rep.checks.push_back(check(ent ? "number_pair_ent_closed_forms" : "number_pair_sep_closed_forms", err, 1e-8));
  }
  return rep;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"max_error", c.max_error}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  return {{"suite", suite}, {"pass", pass()}, {"checks", arr}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"weyl-oracle", "flux-stats", "autocorr", "twomode", "squid"};
  return names;
}

SuiteReport run_suite(const std::string& name, const Context& ctx) {
  if (name == "weyl-oracle") return suite_weyl(ctx);
  if (name == "flux-stats") return suite_flux(ctx);
  if (name == "autocorr") return suite_autocorr(ctx);
  if (name == "twomode") return suite_twomode(ctx);
  if (name == "squid") return suite_squid(ctx);
  throw ConfigError("unknown suite: " + name);
}

TruncationRecord weyl_spot_check(const std::string& label, const PhotonState& state,
                                 const std::vector<cplx>& points, const fockbench::TruncationPolicy& policy) {
  const auto numeric = fockbench::weyl_numeric(state, points, policy);
  TruncationRecord rec{label, 0, 0.0};
  for (std::size_t i = 0; i < points.size(); ++i) {
    rec.dim = std::max(rec.dim, numeric[i].dim);
    rec.max_error = std::max(rec.max_error, std::abs(numeric[i].value - qstates::weyl(state, points[i])));
  }
  return rec;
}

TruncationRecord joint_spot_check(const std::string& label, const TwoModePhotonState& state, double q,
                                  const fockbench::TruncationPolicy& policy) {
  const ChargeCoupling c{q};
  const double wa = state.mode_a.omega, wb = state.mode_b.omega;
  struct Point {
    double xa, xb, t;
  };
  std::vector<Point> pts;
  for (int k = 0; k < 3; ++k) pts.push_back({0.3 + 1.1 * k, -0.8 + 1.7 * k, (0.4 + 1.3 * k) / wa});
  auto eval = [&](int dim) {
    const auto ens = fockbench::two_mode_ensemble(state, dim, dim);
    fockbench::QuadratureFunctions qf(dim);
    cplx acc = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double v = fockbench::expectation(ens, fringe(qf, q, pts[k].xa, wa * pts[k].t), fringe(qf, q, pts[k].xb, wb * pts[k].t)).real();
      acc += std::polar(v, static_cast<double>(k));  // distinct phases keep points from cancelling
    }
    return acc;
  };
  const auto conv = fockbench::converge(eval, fockbench::adequate_two_mode_dim(state, policy), policy);
  const auto ens = fockbench::two_mode_ensemble(state, conv.dim, conv.dim);
  fockbench::QuadratureFunctions qf(conv.dim);
  TruncationRecord rec{label, conv.dim, 0.0};
  for (const auto& pt : pts) {
    const double oracle = fockbench::expectation(ens, fringe(qf, q, pt.xa, wa * pt.t), fringe(qf, q, pt.xb, wb * pt.t)).real();
    rec.max_error = std::max(rec.max_error, std::abs(oracle - twomode::joint_intensity(state, c, pt.xa, pt.xb, pt.t)));
  }
  return rec;
}

TruncationRecord current_spot_check(const std::string& label, const TwoModePhotonState& state,
                                    const squid::TwoSquidParams& p, const fockbench::TruncationPolicy& policy) {
  std::vector<double> ts;
  for (int k = 0; k < 3; ++k) ts.push_back((0.5 + 2.3 * k) / (p.omega1 - p.omega2));
  auto eval = [&](int dim) {
    cplx acc = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const auto m = oracle_moments(state, p, dim, ts[k]);
      acc += std::polar(1.0, static_cast<double>(k)) * cplx(m.iaib + m.ia, m.ia2ib2 + m.ib2);
    }
    return acc;
  };
  const auto conv = fockbench::converge(eval, fockbench::adequate_two_mode_dim(state, policy), policy);
  TruncationRecord rec{label, conv.dim, 0.0};
  for (double t : ts) {
    rec.max_error = std::max(rec.max_error, moment_error(squid::two_squid_moments(state, p, t), oracle_moments(state, p, conv.dim, t), false));
  }
  return rec;
}

}  // namespace mesoqo::cli
