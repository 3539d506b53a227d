#include "mesoqo/cli/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "mesoqo/cli/verify.hpp"
#include "mesoqo/interference.hpp"
#include "mesoqo/qstates.hpp"
#include "mesoqo/squid.hpp"
#include "mesoqo/twomode.hpp"

namespace mesoqo::cli {

namespace {

constexpr double pi = std::numbers::pi;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

int int_param(const Params& p, const std::string& key, int lo, int hi) {
  const double v = p.at(key);
  if (v != std::floor(v) || v < lo || v > hi) {
    throw ConfigError("parameter " + key + " must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

double positive_param(const Params& p, const std::string& key) {
  const double v = p.at(key);
  if (!(v > 0.0)) throw ConfigError("parameter " + key + " must be positive");
  return v;
}

double nonneg_param(const Params& p, const std::string& key) {
  const double v = p.at(key);
  if (!(v >= 0.0)) throw ConfigError("parameter " + key + " must be nonnegative");
  return v;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

// Rows computed independently, in parallel, written in order.
Table tabulate(std::vector<std::string> columns, const std::vector<double>& axis, int threads,
               const std::function<std::vector<double>(double)>& row) {
  Table t;
  t.columns = std::move(columns);
  t.rows.resize(axis.size());
  parallel_for(axis.size(), threads, [&](std::size_t i) {
    auto r = row(axis[i]);
    r.insert(r.begin(), axis[i]);
    t.rows[i] = std::move(r);
  });
  return t;
}

// The four drive states at a common mean photon number.
struct FourStates {
  PhotonState number, coherent, squeezed, thermal;
};

FourStates matched_states(const Params& p, const ModeParams& mode) {
  const double n = nonneg_param(p, "mean_photons");
  if (n != std::floor(n)) throw ConfigError("parameter mean_photons must be an integer for the number state");
  qstates::MatchFixed fixed{mode, p.at("amplitude_arg"), nonneg_param(p, "r"), p.at("angle")};
  try {
    return {{Number{static_cast<int>(n)}, mode},
            qstates::match_mean_photons(qstates::FamilyKind::Coherent, n, fixed),
            qstates::match_mean_photons(qstates::FamilyKind::Squeezed, n, fixed),
            qstates::match_mean_photons(qstates::FamilyKind::Thermal, n, fixed)};
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ModeParams mode_from(const Params& p) { return {positive_param(p, "omega"), 1.0}; }

std::vector<cplx> lambda_points(const ChargeCoupling& c, const ModeParams& mode, bool doubled) {
  std::vector<cplx> pts;
  for (int k = 0; k < 4; ++k) {
    const double t = (0.3 + 1.7 * k) / mode.omega;
    pts.push_back(interference::lambda(c, mode, t));
    if (doubled) pts.push_back(2.0 * interference::lambda(c, mode, t));
  }
  return pts;
}

void spot_check_four(ExperimentResult& res, const FourStates& s, const ChargeCoupling& c, const ModeParams& mode,
                     bool doubled, const Context& ctx) {
  const auto pts = lambda_points(c, mode, doubled);
  res.truncation.push_back(weyl_spot_check("number", s.number, pts, ctx.policy));
  res.truncation.push_back(weyl_spot_check("coherent", s.coherent, pts, ctx.policy));
  res.truncation.push_back(weyl_spot_check("squeezed", s.squeezed, pts, ctx.policy));
  res.truncation.push_back(weyl_spot_check("thermal", s.thermal, pts, ctx.policy));
}

// --- single-mode figures ------------------------------------------------------

ExperimentResult run_fig1(const Params& p, const Context& ctx) {
  const ModeParams mode{positive_param(p, "omega"), positive_param(p, "xi")};
  const PhotonState coh{Coherent{p.at("amplitude")}, mode};
  const PhotonState sq{Squeezed{p.at("sq_amplitude"), nonneg_param(p, "r"), p.at("angle")}, mode};
  ExperimentResult res;
  const auto ts = linspace(0.0, p.at("t_max"), int_param(p, "points", 2, 1000000));
  res.tables.push_back(tabulate({"t", "E_coh", "dE_coh", "E_sq", "dE_sq"}, ts, ctx.threads, [&](double t) {
    const auto a = qstates::emf_stats(coh, mode, t);
    const auto b = qstates::emf_stats(sq, mode, t);
    return std::vector<double>{a.mean, a.stddev, b.mean, b.stddev};
  }));
  const int nmax = int_param(p, "n_max", 0, 100000);
  std::vector<double> ns;
  for (int n = 0; n <= nmax; ++n) ns.push_back(n);
  Table counts = tabulate({"N", "P_coh", "P_sq"}, ns, ctx.threads, [&](double n) {
    return std::vector<double>{qstates::photon_counting(coh, static_cast<int>(n)), qstates::photon_counting(sq, static_cast<int>(n))};
  });
  counts.name = "counts";
  res.tables.push_back(std::move(counts));
  const std::vector<cplx> pts{cplx(0.4, 0.1), cplx(-0.7, 0.9), cplx(1.2, -0.5), cplx(0.0, 1.5)};
  res.truncation.push_back(weyl_spot_check("coherent", coh, pts, ctx.policy));
  res.truncation.push_back(weyl_spot_check("squeezed", sq, pts, ctx.policy));
  res.summary["mean_photons"] = {{"coherent", qstates::mean_photons(coh)}, {"squeezed", qstates::mean_photons(sq)}};
  return res;
}

ExperimentResult run_fig4(const Params& p, const Context& ctx) {
  const ModeParams mode = mode_from(p);
  const ChargeCoupling c{positive_param(p, "q")};
  const FourStates s{{Number{0}, mode},
                     {Coherent{0.0}, mode},
                     {Squeezed{0.0, nonneg_param(p, "r"), p.at("angle")}, mode},
                     {Thermal{std::numeric_limits<double>::infinity()}, mode}};
  ExperimentResult res;
  const auto xs = linspace(0.0, p.at("omega_t_max"), int_param(p, "points", 2, 1000000));
  res.tables.push_back(tabulate({"omega_t", "absW_num", "absW_coh", "absW_sq", "absW_th", "argW_num", "argW_coh", "argW_sq", "argW_th"},
                                xs, ctx.threads, [&](double wt) {
                                  const double t = wt / mode.omega;
                                  const cplx w[4] = {interference::phase_factor(s.number, c, mode, t),
                                                     interference::phase_factor(s.coherent, c, mode, t),
                                                     interference::phase_factor(s.squeezed, c, mode, t),
                                                     interference::phase_factor(s.thermal, c, mode, t)};
                                  std::vector<double> r;
                                  for (const auto& v : w) r.push_back(std::abs(v));
                                  for (const auto& v : w) r.push_back(std::arg(v));
                                  return r;
                                }));
  spot_check_four(res, s, c, mode, false, ctx);
  return res;
}

ExperimentResult run_fig5(const Params& p, const Context& ctx) {
  const ModeParams mode = mode_from(p);
  const ChargeCoupling c{positive_param(p, "q")};
  const auto s = matched_states(p, mode);
  const double ephi1 = p.at("e_phi1");
  ExperimentResult res;
  const auto xs = linspace(0.0, p.at("omega_t_max"), int_param(p, "points", 2, 1000000));
  res.tables.push_back(tabulate({"omega_t", "I_num", "I_coh", "I_sq", "I_th", "I_cl"}, xs, ctx.threads, [&](double wt) {
    const double t = wt / mode.omega;
    return std::vector<double>{interference::intensity_quantum(s.number, c, mode, 0.0, t),
                               interference::intensity_quantum(s.coherent, c, mode, 0.0, t),
                               interference::intensity_quantum(s.squeezed, c, mode, 0.0, t),
                               interference::intensity_quantum(s.thermal, c, mode, 0.0, t),
                               interference::classical_intensity(ephi1, mode.omega, t)};
  }));
  spot_check_four(res, s, c, mode, false, ctx);
  return res;
}

ExperimentResult run_fig6(const Params& p, const Context& ctx) {
  const ModeParams mode = mode_from(p);
  const ChargeCoupling c{positive_param(p, "q")};
  const auto s = matched_states(p, mode);
  const double ephi1 = p.at("e_phi1");
  const auto xs = linspace(0.0, p.at("omega_tau_max"), int_param(p, "points", 2, 1000000));
  std::vector<double> taus;
  for (double x : xs) taus.push_back(x / mode.omega);

  std::vector<interference::CorrelationSeries> g(5);
  const PhotonState* quantum[4] = {&s.number, &s.coherent, &s.squeezed, &s.thermal};
  parallel_for(5, ctx.threads, [&](std::size_t k) {
    g[k] = k == 0 ? interference::autocorrelation_classical(ephi1, mode.omega, taus)
                  : interference::autocorrelation_quantum(*quantum[k - 1], c, mode, taus);
    g[k] = interference::normalized_gamma(g[k]);
  });
  Table t;
  t.columns = {"omega_tau", "re_cl", "im_cl", "re_num", "im_num", "re_coh", "im_coh", "re_sq", "im_sq", "re_th", "im_th"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<double> row{xs[i]};
    for (const auto& gk : g) {
      row.push_back(gk.gamma[i].real());
      row.push_back(gk.gamma[i].imag());
    }
    t.rows.push_back(std::move(row));
  }
  ExperimentResult res;
  res.tables.push_back(std::move(t));
  spot_check_four(res, s, c, mode, true, ctx);
  return res;
}

ExperimentResult run_fig7(const Params& p, const Context& ctx) {
  const ModeParams mode = mode_from(p);
  const ChargeCoupling c{positive_param(p, "q")};
  const auto s = matched_states(p, mode);
  const double ephi1 = p.at("e_phi1");
  const int kmax = int_param(p, "k_max", 0, 100000);
  std::vector<interference::SpectrumCoeffs> coeffs(5);
  const PhotonState* quantum[4] = {&s.number, &s.coherent, &s.squeezed, &s.thermal};
  parallel_for(5, ctx.threads, [&](std::size_t k) {
    if (k == 0) {
      // The classical signal repeats at twice the drive frequency.
      coeffs[k] = interference::spectral_density(interference::autocorrelation_classical_series(ephi1, mode.omega),
                                               2.0 * mode.omega, kmax);
    } else {
      coeffs[k] = interference::spectral_density(
          interference::autocorrelation_quantum_series(*quantum[k - 1], c, mode), mode.omega, kmax);
    }
  });
  Table t;
  t.columns = {"K", "S_cl", "S_num", "S_coh", "S_sq", "S_th"};
  for (int k = -kmax; k <= kmax; ++k) {
    std::vector<double> row{static_cast<double>(k)};
    for (const auto& sp : coeffs) row.push_back(sp.at(k));
    t.rows.push_back(std::move(row));
  }
  ExperimentResult res;
  res.tables.push_back(std::move(t));
  double max_imag = 0.0;
  for (const auto& sp : coeffs) max_imag = std::max(max_imag, sp.max_imag);
  res.summary["max_imag"] = max_imag;
  spot_check_four(res, s, c, mode, true, ctx);
  return res;
}

// --- two interference devices --------------------------------------------------

ModeParams mode1(const Params& p) { return {positive_param(p, "omega1"), 1.0}; }
ModeParams mode2(const Params& p) { return {positive_param(p, "omega2"), 1.0}; }

void spot_check_pair(ExperimentResult& res, const Params& p, double q, const Context& ctx) {
  for (bool ent : {false, true}) {
    const auto st = twomode::number_pair(0, 1, twomode::Pairing::Correlated, ent, mode1(p), mode2(p));
    res.truncation.push_back(joint_spot_check(ent ? "number_pair_ent" : "number_pair_sep", st, q, ctx.policy));
  }
}

Table surface(const Params& p, const Context& ctx, const std::string& name,
              const std::function<double(double, double)>& f) {
  const int n = int_param(p, "points", 2, 5000);
  const double xm = p.at("x_max");
  const auto xs = linspace(-xm, xm, n);
  Table t;
  t.columns = {"x_A", "x_B", name};
  t.rows.resize(xs.size() * xs.size());
  parallel_for(xs.size(), ctx.threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < xs.size(); ++j) t.rows[i * xs.size() + j] = {xs[i], xs[j], f(xs[i], xs[j])};
  });
  return t;
}

std::pair<double, double> column_range(const Table& t, std::size_t col) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& r : t.rows) {
    if (std::isnan(r[col])) continue;
    lo = std::min(lo, r[col]);
    hi = std::max(hi, r[col]);
  }
  return {lo, hi};
}

nlohmann::json bounds_json(double q) {
  try {
    const auto [lo, hi] = twomode::sep_bounds(q);
    return {{"lower", lo}, {"upper", hi}};
  } catch (const std::domain_error&) {
    return nullptr;
  }
}

ExperimentResult run_fig9(const Params& p, const Context& ctx) {
  const double q = positive_param(p, "q");
  ExperimentResult res;
  res.axis_columns = 2;
  res.tables.push_back(surface(p, ctx, "R_sep", [&](double xa, double xb) { return twomode::ratio_sep_closed(q, xa, xb); }));
  const auto [lo, hi] = column_range(res.tables[0], 2);
  res.summary["min"] = lo;
  res.summary["max"] = hi;
  res.summary["bounds"] = bounds_json(q);
  spot_check_pair(res, p, q, ctx);
  return res;
}

ExperimentResult run_fig10(const Params& p, const Context& ctx) {
  const double q = positive_param(p, "q");
  const double wsum = positive_param(p, "omega1") + positive_param(p, "omega2");
  const double t = p.at("phase_sum") / wsum;
  ExperimentResult res;
  res.axis_columns = 2;
  res.tables.push_back(surface(p, ctx, "R_ent", [&](double xa, double xb) { return twomode::ratio_ent_closed(q, wsum, xa, xb, t); }));
  const auto [lo, hi] = column_range(res.tables[0], 2);
  res.summary["min"] = lo;
  res.summary["max"] = hi;
  res.summary["bounds"] = bounds_json(q);
  spot_check_pair(res, p, q, ctx);
  return res;
}

ExperimentResult run_fig11(const Params& p, const Context& ctx) {
  const double q = positive_param(p, "q");
  const double wsum = positive_param(p, "omega1") + positive_param(p, "omega2");
  const double xa = p.at("x_a"), xb = p.at("x_b");
  ExperimentResult res;
  const auto ts = linspace(0.0, p.at("t_scaled_max"), int_param(p, "points", 2, 1000000));
  res.tables.push_back(tabulate({"t_scaled", "R_ent", "R_sep"}, ts, ctx.threads, [&](double s) {
    return std::vector<double>{twomode::ratio_ent_closed(q, wsum, xa, xb, s / wsum), twomode::ratio_sep_closed(q, xa, xb)};
  }));
  res.summary["bounds"] = bounds_json(q);
  spot_check_pair(res, p, q, ctx);
  return res;
}

// --- two SQUID rings -------------------------------------------------------------

struct RingSetup {
  squid::TwoSquidParams sp;
  int n1, n2;
  cplx a1, a2;
  std::vector<double> ts;  ///< scaled time (omega1 - omega2) t
  double scale;            ///< omega1 - omega2
};

RingSetup ring_setup(const Params& p) {
  RingSetup r;
  r.sp.qprime = positive_param(p, "qprime");
  r.sp.omega_a = p.at("omega_a");
  r.sp.omega_b = p.at("omega_b");
  r.sp.omega1 = positive_param(p, "omega1");
  r.sp.omega2 = positive_param(p, "omega2");
  r.n1 = int_param(p, "n1", 0, 10000);
  r.n2 = int_param(p, "n2", 0, 10000);
  if (r.n1 == r.n2) throw ConfigError("n1 and n2 must differ");
  r.a1 = p.at("a1");
  r.a2 = p.at("a2");
  r.scale = r.sp.omega1 - r.sp.omega2;
  if (r.scale == 0.0) throw ConfigError("omega1 and omega2 must differ");
  r.ts = linspace(0.0, p.at("t_scaled_max"), int_param(p, "points", 2, 1000000));
  return r;
}

void spot_check_rings(ExperimentResult& res, const RingSetup& r, const Context& ctx) {
  const ModeParams m1{r.sp.omega1, 1.0}, m2{r.sp.omega2, 1.0};
  for (bool ent : {false, true}) {
    res.truncation.push_back(current_spot_check(ent ? "number_pair_ent" : "number_pair_sep",
                                                twomode::number_pair(r.n1, r.n2, twomode::Pairing::Swapped, ent, m1, m2),
                                                r.sp, ctx.policy));
    res.truncation.push_back(current_spot_check(ent ? "coherent_pair_ent" : "coherent_pair_sep",
                                                twomode::coherent_pair(r.a1, r.a2, ent, m1, m2), r.sp, ctx.policy));
  }
}

using MomentsPair = std::pair<squid::CurrentMoments, squid::CurrentMoments>;  // separable, entangled

MomentsPair number_moments(const RingSetup& r, double t) {
  return {squid::two_squid_currents_number(r.n1, r.n2, false, r.sp, t), squid::two_squid_currents_number(r.n1, r.n2, true, r.sp, t)};
}
MomentsPair coherent_moments(const RingSetup& r, double t) {
  return {squid::two_squid_currents_coherent(r.a1, r.a2, false, r.sp, t),
          squid::two_squid_currents_coherent(r.a1, r.a2, true, r.sp, t)};
}

ExperimentResult ring_experiment(const Params& p, const Context& ctx, std::vector<std::string> columns,
                                 const std::function<std::vector<double>(const RingSetup&, double)>& row) {
  const auto r = ring_setup(p);
  ExperimentResult res;
  res.tables.push_back(tabulate(std::move(columns), r.ts, ctx.threads, [&](double s) { return row(r, s / r.scale); }));
  spot_check_rings(res, r, ctx);
  return res;
}

double diff_or_nan(double a, double b) { return (std::isnan(a) || std::isnan(b)) ? kNaN : a - b; }

ExperimentResult run_fig14(const Params& p, const Context& ctx) {
  return ring_experiment(p, ctx, {"t_scaled", "Rc_sep_num", "Rc_sep_coh"}, [](const RingSetup& r, double t) {
    return std::vector<double>{squid::ratio_c(number_moments(r, t).first), squid::ratio_c(coherent_moments(r, t).first)};
  });
}

ExperimentResult run_fig15(const Params& p, const Context& ctx) {
  return ring_experiment(p, ctx, {"t_scaled", "dR_num", "dR_coh"}, [](const RingSetup& r, double t) {
    const auto n = number_moments(r, t);
    const auto c = coherent_moments(r, t);
    return std::vector<double>{diff_or_nan(squid::ratio_c(n.first), squid::ratio_c(n.second)),
                               diff_or_nan(squid::ratio_c(c.first), squid::ratio_c(c.second))};
  });
}

ExperimentResult run_fig16(const Params& p, const Context& ctx) {
  return ring_experiment(p, ctx, {"t_scaled", "dIA_coh", "dIA2_coh"}, [](const RingSetup& r, double t) {
    const auto c = coherent_moments(r, t);
    return std::vector<double>{c.first.ia - c.second.ia, c.first.ia2 - c.second.ia2};
  });
}

ExperimentResult run_fig17(const Params& p, const Context& ctx) {
  return ring_experiment(p, ctx, {"t_scaled", "dIAIB_num", "dIAIB_coh"}, [](const RingSetup& r, double t) {
    const auto n = number_moments(r, t);
    const auto c = coherent_moments(r, t);
    return std::vector<double>{n.first.iaib - n.second.iaib, c.first.iaib - c.second.iaib};
  });
}

ExperimentResult run_fig18(const Params& p, const Context& ctx) {
  return ring_experiment(p, ctx, {"t_scaled", "dRc2_num", "dRc2_coh"}, [](const RingSetup& r, double t) {
    const auto n = number_moments(r, t);
    const auto c = coherent_moments(r, t);
    return std::vector<double>{diff_or_nan(squid::ratio_c2(n.first), squid::ratio_c2(n.second)),
                               diff_or_nan(squid::ratio_c2(c.first), squid::ratio_c2(c.second))};
  });
}

// --- tools ---------------------------------------------------------------------

ExperimentResult run_fitq(const Params& p, const Context&) {
  const double lo = positive_param(p, "q_lo"), hi = positive_param(p, "q_hi");
  if (!(lo < hi)) throw ConfigError("q_lo must be below q_hi");
  const auto f = twomode::fit_q_to_bounds(p.at("target_min"), p.at("target_max"), lo, hi);
  ExperimentResult res;
  res.axis_columns = 0;
  res.tables.push_back({"", {"q", "lower", "upper", "max_deviation"}, {{f.q, f.lower, f.upper, f.max_deviation}}});
  return res;
}

ExperimentResult run_shapiro(const Params& p, const Context& ctx) {
  const double qp = positive_param(p, "qprime");
  const double w = positive_param(p, "omega");
  const double amp = nonneg_param(p, "drive_amplitude");
  const squid::SquidDrive classical{p.at("phase_offset"), 0.0, amp, w, positive_param(p, "critical_current")};
  squid::SquidDrive bare = classical;
  bare.drive_amplitude = 0.0;
  // The coherent field that reproduces the classical drive phase.
  const PhotonState coh{Coherent{cplx(0.0, amp / (2.0 * qp))}, {w, 1.0}};
  const PhotonState sqv{Squeezed{0.0, nonneg_param(p, "r"), p.at("angle")}, {w, 1.0}};
  const int nmax = int_param(p, "max_step", 0, 1000);
  std::vector<double> steps;
  for (int n = -nmax; n <= nmax; ++n) steps.push_back(n);
  ExperimentResult res;
  res.tables.push_back(tabulate({"step", "I_cl", "I_coh", "I_sqvac"}, steps, ctx.threads, [&](double n) {
    const int k = static_cast<int>(n);
    return std::vector<double>{squid::classical_shapiro(classical, k), squid::quantum_shapiro(coh, bare, qp, k),
                               squid::quantum_shapiro(sqv, bare, qp, k)};
  }));
  std::vector<cplx> pts;
  for (int k = 0; k < 4; ++k) pts.push_back(squid::sigma(qp, w, (0.2 + 1.3 * k) / w));
  res.truncation.push_back(weyl_spot_check("coherent", coh, pts, ctx.policy));
  res.truncation.push_back(weyl_spot_check("squeezed_vacuum", sqv, pts, ctx.policy));
  return res;
}

Params single_mode_defaults() {
  return {{"q", 1.0 / std::numbers::sqrt2}, {"omega", 1e-4},        {"mean_photons", 17.0}, {"r", 4.2},
          {"angle", 0.0},                   {"amplitude_arg", pi / 2}, {"e_phi1", std::sqrt(34.0)}};
}

Params with(Params base, const Params& extra) {
  for (const auto& [k, v] : extra) base[k] = v;
  return base;
}

Params ring_defaults() {
  return {{"qprime", 0.5}, {"n1", 1.0},        {"n2", 3.0},        {"a1", 1.0},     {"a2", std::sqrt(3.0)},
          {"omega_a", 1.1e-5}, {"omega_b", 0.9e-5}, {"omega1", 1.2e-4}, {"omega2", 1e-4}, {"t_scaled_max", 10.0},
          {"points", 1001.0}};
}

Params pair_defaults() { return {{"q", 0.25}, {"omega1", 1.2e-4}, {"omega2", 1e-4}}; }

std::vector<Experiment> build_registry() {
  const double two_pi = 2.0 * pi;
  return {
      {"fig1", "EMF mean and noise, and photon counting, for coherent and squeezed light",
       {{"amplitude", 2.0}, {"sq_amplitude", 2.0 * std::exp(0.5)}, {"r", 1.0}, {"angle", 0.0}, {"omega", 1.0}, {"xi", 1.0},
        {"t_max", 2.0 * two_pi}, {"points", 401.0}, {"n_max", 40.0}},
       run_fig1},
      {"fig4", "vacuum-induced phase factor |W| and arg W versus omega t",
       {{"q", 1.0 / std::numbers::sqrt2}, {"omega", 1e-4}, {"r", 0.5}, {"angle", 0.0}, {"omega_t_max", two_pi}, {"points", 401.0}},
       run_fig4},
      {"fig5", "electron intensity I(0, t) for four drive states and classical microwaves",
       with(single_mode_defaults(), {{"omega_t_max", two_pi}, {"points", 401.0}}), run_fig5},
      {"fig6", "normalized autocorrelation gamma(tau), real and imaginary parts",
       with(single_mode_defaults(), {{"omega_tau_max", two_pi}, {"points", 401.0}}), run_fig6},
      {"fig7", "spectral density coefficients S_K", with(single_mode_defaults(), {{"k_max", 40.0}}), run_fig7},
      {"fig9", "R_sep over the screen grid", with(pair_defaults(), {{"x_max", two_pi}, {"points", 201.0}}), run_fig9},
      {"fig10", "R_ent over the screen grid at fixed (omega1 + omega2) t",
       with(pair_defaults(), {{"x_max", two_pi}, {"points", 201.0}, {"phase_sum", pi}}), run_fig10},
      {"fig11", "R_ent and R_sep versus (omega1 + omega2) t at fixed screen points",
       with(pair_defaults(), {{"x_a", 0.9 * pi}, {"x_b", 1.025 * pi}, {"t_scaled_max", 2.0 * two_pi}, {"points", 401.0}}), run_fig11},
      {"fig14", "R^(c) for separable number and coherent pairs", ring_defaults(), run_fig14},
      {"fig15", "R^(c)_sep - R^(c)_ent for number and coherent pairs", ring_defaults(), run_fig15},
      {"fig16", "<I_A> and <I_A^2> differences, separable minus entangled coherent pairs", ring_defaults(), run_fig16},
      {"fig17", "<I_A I_B> differences, separable minus entangled", ring_defaults(), run_fig17},
      {"fig18", "R^(c2)_sep - R^(c2)_ent for number and coherent pairs", ring_defaults(), run_fig18},
      {"fitq", "fit q so the separable bounds match target values",
       {{"target_min", 1.0001}, {"target_max", 1.2471}, {"q_lo", 0.01}, {"q_hi", 1.0}}, run_fitq},
      {"shapiro", "dc Shapiro steps for classical, coherent and squeezed vacuum drives",
       {{"qprime", 0.5}, {"omega", 1e-4}, {"drive_amplitude", 1.8}, {"phase_offset", pi / 2}, {"critical_current", 1.0},
        {"r", 2.0}, {"angle", 0.0}, {"max_step", 6.0}},
       run_shapiro},
  };
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

const std::vector<Experiment>& experiments() {
  static const std::vector<Experiment> registry = build_registry();
  return registry;
}

const Experiment* find_experiment(const std::string& id) {
  for (const auto& e : experiments()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < workers; ++k) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ExperimentResult run_experiment(const RunConfig& config, const Context& ctx) {
  const Experiment* exp = find_experiment(config.experiment);
  if (exp == nullptr) throw ConfigError("unknown experiment: " + config.experiment);
  return exp->run(config.params, ctx);
}

std::vector<std::filesystem::path> run_and_write(const RunConfig& config, const Context& ctx,
                                                 const std::filesystem::path& out_dir) {
  const auto res = run_experiment(config, ctx);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  nlohmann::json outputs = nlohmann::json::array();
  bool singular_only = false;
  for (const auto& table : res.tables) {
    const std::string file = config.output + (table.name.empty() ? "" : "_" + table.name) + ".csv";
    write_file(out_dir / file, to_csv(table));
    written.push_back(out_dir / file);

    nlohmann::json entry{{"file", file}, {"columns", table.columns}, {"rows", table.rows.size()}};
    nlohmann::json lo = nlohmann::json::object(), hi = nlohmann::json::object();
    std::size_t singular = 0, cells = 0;
    const std::size_t axis = static_cast<std::size_t>(table.name.empty() ? res.axis_columns : 1);
    for (std::size_t c = axis; c < table.columns.size(); ++c) {
      const auto [mn, mx] = column_range(table, c);
      lo[table.columns[c]] = finite_or_null(mn);
      hi[table.columns[c]] = finite_or_null(mx);
      for (const auto& r : table.rows) {
        ++cells;
        if (std::isnan(r[c])) ++singular;
      }
    }
    entry["min"] = lo;
    entry["max"] = hi;
    entry["singular_points"] = singular;
    outputs.push_back(entry);
    if (cells > 0 && singular == cells) singular_only = true;
  }

  nlohmann::json trunc = nlohmann::json::array();
  for (const auto& t : res.truncation) trunc.push_back({{"label", t.label}, {"dim", t.dim}, {"max_error", t.max_error}});
  nlohmann::json manifest{{"tool", "mesoqo"},
                          {"version", kVersion},
                          {"config", config.to_json()},
                          {"outputs", outputs},
                          {"truncation", trunc},
                          {"summary", res.summary}};
  const auto mpath = out_dir / (config.output + ".manifest.json");
  write_file(mpath, manifest.dump(2) + "\n");
  written.push_back(mpath);
  if (singular_only) throw SingularOutput("every computed value is at a singular point");
  return written;
}

}  // namespace mesoqo::cli
