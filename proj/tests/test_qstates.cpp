#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "mesoqo/fockbench.hpp"
#include "mesoqo/qstates.hpp"

using namespace mesoqo;
using namespace mesoqo::qstates;

namespace {

std::vector<cplx> z_grid() {
  // 25 points: the origin plus 8 angles on each of three radii up to 3.
  std::vector<cplx> zs{0.0};
  for (double r : {1.0, 2.0, 3.0}) {
    for (int k = 0; k < 8; ++k) zs.push_back(std::polar(r, 2.0 * std::numbers::pi * k / 8.0 + 0.1));
  }
  return zs;
}

std::vector<PhotonState> sample_states() {
  return {{Number{0}, {}},
          {Number{5}, {}},
          {Coherent{cplx(1.2, -0.7)}, {}},
          {Squeezed{cplx(0.6, 0.4), 1.3, 0.9}, {}},
          {Squeezed{0.0, 0.5, 0.0}, {}},
          {Thermal{0.7}, {1.3, 1.0}}};
}

// Weyl function of a squeezed state written with the X, Y quadrature phases.
cplx squeezed_xy_form(const Squeezed& s, cplx z) {
  const double az = std::abs(z), aa = std::abs(s.amplitude);
  const double thz = std::arg(z), tha = std::arg(s.amplitude);
  const double x = 2.0 * aa * az *
                   (std::cosh(0.5 * s.r) * std::sin(thz - tha) - std::sinh(0.5 * s.r) * std::sin(thz + tha + s.angle));
  const double y = 0.5 * az * az * (std::cosh(s.r) + std::sinh(s.r) * std::cos(2.0 * thz + s.angle));
  return std::exp(cplx(-y, x));
}

}  // namespace

TEST_CASE("weyl at the origin is one") {
  for (const auto& s : sample_states()) CHECK(std::abs(weyl(s, 0.0) - 1.0) <= 1e-15);
}

TEST_CASE("weyl elementary values") {
  CHECK(std::abs(weyl({Number{1}, {}}, std::polar(1.0, 0.3))) <= 1e-15);
  const PhotonState th{Thermal{1.0}, {1.0, 1.0}};
  const double expect = std::exp(-0.5 / std::tanh(0.5));
  CHECK(weyl(th, std::polar(1.0, 0.77)).real() == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("weyl is bounded and conjugate symmetric") {
  for (const auto& s : sample_states()) {
    for (cplx z : z_grid()) {
      CHECK(std::abs(weyl(s, z)) <= 1.0 + 1e-14);
      CHECK(std::abs(weyl(s, -z) - std::conj(weyl(s, z))) <= 1e-12);
    }
  }
}

TEST_CASE("squeezed weyl matches the quadrature-phase form") {
  const Squeezed sq{cplx(0.9, -0.4), 2.1, 0.6};
  for (cplx z : z_grid()) {
    if (z == cplx(0.0)) continue;
    CHECK(std::abs(weyl({sq, {}}, z) - squeezed_xy_form(sq, z)) <= 1e-12);
  }
}

TEST_CASE("closed-form weyl agrees with the matrix oracle") {
  for (const auto& s : sample_states()) {
    for (cplx z : z_grid()) {
      const auto num = fockbench::weyl_numeric(s, z);
      CHECK(std::abs(num.value - weyl(s, z)) <= 1e-8);
    }
  }
}

TEST_CASE("vacuum as number and as coherent state") {
  const PhotonState n0{Number{0}, {}}, c0{Coherent{0.0}, {}};
  for (cplx z : z_grid()) CHECK(std::abs(weyl(n0, z) - weyl(c0, z)) <= 1e-15);
  for (int n = 0; n < 4; ++n) CHECK(photon_counting(n0, n) == photon_counting(c0, n));
  const ModeParams mode{2.0, 1.5};
  for (double t : {0.0, 0.4, 1.3}) {
    CHECK(flux_stats(n0, mode, t).stddev == doctest::Approx(flux_stats(c0, mode, t).stddev));
    CHECK(emf_stats(n0, mode, t).stddev == doctest::Approx(emf_stats(c0, mode, t).stddev));
  }
}

TEST_CASE("photon counting distributions") {
  CHECK(photon_counting({Number{3}, {}}, 3) == 1.0);
  CHECK(photon_counting({Number{3}, {}}, 2) == 0.0);
  const double m = 2.5;
  for (int n = 0; n < 10; ++n) {
    const double poisson = std::exp(-m) * std::pow(m, n) / std::tgamma(n + 1.0);
    CHECK(photon_counting({Coherent{std::sqrt(m)}, {}}, n) == doctest::Approx(poisson).epsilon(1e-13));
  }
  const PhotonState sv{Squeezed{0.0, 2.0, 0.4}, {}};
  for (int n = 1; n < 40; n += 2) CHECK(photon_counting(sv, n) == 0.0);
  for (const auto& s : sample_states()) {
    double total = 0.0;
    for (int n = 0; n < 400; ++n) total += photon_counting(s, n);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("photon counting agrees with the oracle diagonal") {
  for (const auto& s : sample_states()) {
    const int dim = fockbench::adequate_dim(s);
    const auto rho = fockbench::density_matrix(s, dim);
    for (int n = 0; n < 30; ++n) CHECK(std::abs(photon_counting(s, n) - rho(n, n).real()) <= 1e-12);
  }
}

TEST_CASE("mean photon numbers") {
  CHECK(mean_photons({Coherent{std::sqrt(3.0)}, {}}) == doctest::Approx(3.0));
  CHECK(mean_photons({Thermal{std::log(2.0)}, {1.0, 1.0}}) == doctest::Approx(1.0));
  const double sh = std::sinh(2.1);
  CHECK(mean_photons({Squeezed{0.0, 4.2, 0.0}, {}}) == doctest::Approx(sh * sh));
  // Phase-aligned case: sinh^2(r/2) + [cosh(r/2) - sinh(r/2)]^2 |A|^2.
  const double r = 1.4, a = 1.7;
  const double aligned = std::pow(std::sinh(0.5 * r), 2) + std::pow(std::cosh(0.5 * r) - std::sinh(0.5 * r), 2) * a * a;
  CHECK(mean_photons({Squeezed{a, r, 0.0}, {}}) == doctest::Approx(aligned).epsilon(1e-14));
  for (const auto& s : sample_states()) {
    const int dim = fockbench::adequate_dim(s);
    const auto rho = fockbench::density_matrix(s, dim);
    const double oracle = fockbench::expectation(rho, fockbench::number_operator(dim)).real();
    CHECK(mean_photons(s) == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("matching a target mean photon number") {
  MatchFixed fixed;
  fixed.mode = {1e-4, 1.0};
  const auto coh = match_mean_photons(FamilyKind::Coherent, 17.0, fixed);
  CHECK(std::get<Coherent>(coh.family).amplitude.real() == doctest::Approx(std::sqrt(17.0)));
  const auto th = match_mean_photons(FamilyKind::Thermal, 17.0, fixed);
  CHECK(std::get<Thermal>(th.family).beta * fixed.mode.omega == doctest::Approx(std::log(18.0 / 17.0)));
  fixed.r = 4.2;
  const auto sq = match_mean_photons(FamilyKind::Squeezed, 17.0, fixed);
  const double sh = std::sinh(2.1);
  const double expect = (17.0 - sh * sh) / std::pow(std::cosh(2.1) - sh, 2);
  CHECK(std::norm(std::get<Squeezed>(sq.family).amplitude) == doctest::Approx(expect).epsilon(1e-12));
  for (const auto& s : {coh, th, sq, match_mean_photons(FamilyKind::Number, 17.0, fixed)}) {
    CHECK(std::abs(mean_photons(s) - 17.0) <= 1e-10);
  }
  fixed.amplitude_arg = 0.8;
  fixed.angle = -0.3;
  CHECK(std::abs(mean_photons(match_mean_photons(FamilyKind::Squeezed, 20.0, fixed)) - 20.0) <= 1e-10);
  CHECK_THROWS_AS(match_mean_photons(FamilyKind::Squeezed, 10.0, fixed), std::invalid_argument);
  CHECK_THROWS_AS(match_mean_photons(FamilyKind::Number, 2.5, fixed), std::invalid_argument);
}

TEST_CASE("flux statistics closed forms") {
  const ModeParams unit{1.0, 1.0};
  CHECK(flux_stats({Number{0}, unit}, unit, 0.3).stddev == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(flux_stats({Number{4}, {}}, {1.0, 2.0}, 0.3).stddev == doctest::Approx(2.0 * std::sqrt(4.5)));
  const cplx a = std::polar(1.5, 0.4);
  for (double t : {0.0, 0.7, 2.0}) {
    const auto st = flux_stats({Coherent{a}, unit}, unit, t);
    CHECK(st.stddev == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(st.mean == doctest::Approx(std::sqrt(2.0) * 1.5 * std::cos(t - 0.4)));
    const auto emf = emf_stats({Coherent{a}, unit}, unit, t);
    CHECK(emf.mean == doctest::Approx(-std::sqrt(2.0) * 1.5 * std::sin(t - 0.4)));
  }
  CHECK(flux_stats({Thermal{1.0}, unit}, unit, 0.2).stddev ==
        doctest::Approx(std::sqrt(0.5 / std::tanh(0.5))));
}

TEST_CASE("flux and EMF statistics agree with matrix expectations") {
  const ModeParams mode{1.7, 0.8};
  for (const auto& base : sample_states()) {
    PhotonState s = base;
    s.mode = mode;
    const int dim = fockbench::adequate_dim(s);
    const auto rho = fockbench::density_matrix(s, dim);
    for (int k = 0; k < 8; ++k) {
      const double t = 0.37 * k;
      const auto phi = fockbench::flux_matrix(mode, t, dim);
      const auto v = fockbench::emf_matrix(mode, t, dim);
      const double pm = fockbench::expectation(rho, phi).real();
      const double pv = fockbench::expectation(rho, phi * phi).real() - pm * pm;
      const double vm = fockbench::expectation(rho, v).real();
      const double vv = fockbench::expectation(rho, v * v).real() - vm * vm;
      const auto fs = flux_stats(s, mode, t);
      const auto es = emf_stats(s, mode, t);
      CHECK(std::abs(fs.mean - pm) <= 1e-8);
      CHECK(std::abs(fs.stddev - std::sqrt(pv)) <= 1e-8);
      CHECK(std::abs(es.mean - vm) <= 1e-8);
      CHECK(std::abs(es.stddev - std::sqrt(vv)) <= 1e-8);
    }
  }
}

TEST_CASE("squeezed uncertainty product and noise oscillation") {
  const ModeParams mode{1.0, 1.0};
  const PhotonState sv{Squeezed{0.0, 1.0, 0.0}, mode};
  const double vac = emf_stats({Number{0}, mode}, mode, 0.0).stddev;
  double lo = 1e9, hi = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 64.0;
    const auto f = flux_stats(sv, mode, t);
    const auto e = emf_stats(sv, mode, t);
    CHECK(f.stddev * e.stddev >= 0.5 * mode.omega * mode.xi * mode.xi - 1e-10);
    lo = std::min(lo, e.stddev);
    hi = std::max(hi, e.stddev);
  }
  CHECK(lo < vac);
  CHECK(hi > vac);
}
