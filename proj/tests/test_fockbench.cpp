#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

#include "doctest.h"
#include "mesoqo/fockbench.hpp"

using namespace mesoqo;
using namespace mesoqo::fockbench;

namespace {

double hermiticity_error(const FockMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double min_eigenvalue(const FockMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(rho);
  return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("number state density matrix") {
  const auto rho = density_matrix({Number{2}, {}}, 8);
  CHECK(rho(2, 2).real() == 1.0);
  CHECK(rho.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("coherent diagonal is Poissonian") {
  const auto rho = density_matrix({Coherent{1.0}, {}}, 40);
  for (int n = 0; n < 15; ++n) {
    const double poisson = std::exp(-1.0 - std::lgamma(n + 1.0));
    CHECK(rho(n, n).real() == doctest::Approx(poisson).epsilon(1e-12));
  }
  CHECK(std::abs(trace_deficit(rho)) < 1e-12);
}

TEST_CASE("thermal diagonal is geometric and mean photon number matches") {
  const PhotonState th{Thermal{1.0}, {1.0, 1.0}};
  const auto rho = density_matrix(th, 64);
  for (int n = 0; n < 10; ++n) CHECK(rho(n + 1, n + 1).real() / rho(n, n).real() == doctest::Approx(std::exp(-1.0)));
  CHECK(std::abs(trace_deficit(rho)) < 1e-12);
  const double mean = expectation(rho, number_operator(64)).real();
  CHECK(mean == doctest::Approx(1.0 / std::expm1(1.0)).epsilon(1e-12));
}

TEST_CASE("infinite beta thermal state is the vacuum") {
  const auto rho = density_matrix({Thermal{INFINITY}, {}}, 8);
  CHECK(rho(0, 0).real() == 1.0);
  CHECK(trace_deficit(rho) == 0.0);
}

TEST_CASE("density matrices are valid states") {
  const PhotonState states[] = {{Number{3}, {}}, {Coherent{cplx(1.0, -0.5)}, {}},
                                {Squeezed{cplx(0.4, 0.3), 1.2, 0.7}, {}}, {Thermal{0.8}, {}}};
  for (const auto& s : states) {
    const int dim = adequate_dim(s);
    const auto rho = density_matrix(s, dim);
    CHECK(hermiticity_error(rho) <= 1e-12);
    CHECK(std::abs(trace_deficit(rho)) <= 1e-10);
    CHECK(min_eigenvalue(rho) >= -1e-10);
  }
}

TEST_CASE("squeezed vacuum populates only even photon numbers") {
  const auto v = state_vector({Squeezed{0.0, 2.0, 0.3}, {}}, 128);
  double odd = 0.0;
  for (int n = 1; n < 128; n += 2) odd = std::max(odd, std::abs(v(n)));
  CHECK(odd <= 1e-14);
  CHECK(v.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("displacement matrix basics") {
  CHECK((displacement_matrix(0.0, 6) - FockMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
  const cplx z(0.7, -1.1);
  const auto d = displacement_matrix(z, 64);
  CHECK(std::abs(d(0, 0) - std::exp(-0.5 * std::norm(z))) <= 1e-15);
  // <1|D|0> = z e^{-|z|^2/2}, <0|D|1> = -z* e^{-|z|^2/2}.
  CHECK(std::abs(d(1, 0) - z * std::exp(-0.5 * std::norm(z))) <= 1e-15);
  CHECK(std::abs(d(0, 1) + std::conj(z) * std::exp(-0.5 * std::norm(z))) <= 1e-15);
}

TEST_CASE("displacement matrices are unitary and compose to identity") {
  for (cplx z : {cplx(0.5, 0.0), cplx(1.0, 1.0), cplx(-1.2, 1.5), cplx(0.0, -2.0)}) {
    const int dim = 128;
    const auto d = displacement_matrix(z, dim);
    const auto dm = displacement_matrix(-z, dim);
    const int k = 48;  // block far from the truncation edge
    const FockMatrix prod = (d * dm).topLeftCorner(k, k);
    CHECK((prod - FockMatrix::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-8);
    double col = 0.0;
    for (int n = 0; n < k; ++n) col = std::max(col, std::abs(d.col(n).norm() - 1.0));
    CHECK(col <= 1e-8);
    CHECK((dm - d.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("displacement matrix survives large dimensions") {
  const auto d = displacement_matrix(cplx(3.0, 0.0), 1024);
  CHECK(d.allFinite());
  CHECK(std::abs(d.col(0).norm() - 1.0) <= 1e-10);
}

TEST_CASE("flux matrix elements and vacuum variance") {
  const ModeParams mode{2.0, 1.0};
  const auto phi = flux_matrix(mode, 0.0, 10);
  for (int n = 0; n < 9; ++n) CHECK(phi(n, n + 1).real() == doctest::Approx(std::sqrt(n + 1.0) / std::sqrt(2.0)));
  const auto phit = flux_matrix(mode, 0.37, 10);
  CHECK(hermiticity_error(phit) <= 1e-14);
  const auto vac = density_matrix({Number{0}, mode}, 10);
  CHECK(expectation(vac, phit * phit).real() == doctest::Approx(0.5));
  const ModeParams wide{2.0, 3.0};
  const auto phiw = flux_matrix(wide, 0.1, 10);
  CHECK(expectation(vac, phiw * phiw).real() == doctest::Approx(4.5));
}

TEST_CASE("expectation of identity and number operator") {
  const auto rho = density_matrix({Number{5}, {}}, 12);
  CHECK(expectation(rho, FockMatrix::Identity(12, 12)).real() == doctest::Approx(1.0));
  CHECK(expectation(rho, number_operator(12)).real() == doctest::Approx(5.0));
  CHECK_THROWS_AS(expectation(rho, number_operator(6)), std::invalid_argument);
}

TEST_CASE("weyl oracle elementary values") {
  for (const PhotonState& s : {PhotonState{Number{4}, {}}, PhotonState{Thermal{0.5}, {}}}) {
    CHECK(std::abs(weyl_numeric(s, 0.0).value - 1.0) <= 1e-12);
  }
  const auto w = weyl_numeric({Number{1}, {}}, std::polar(1.0, 0.4));
  CHECK(std::abs(w.value) <= 1e-12);
  for (double re = -3.0; re <= 3.0; re += 1.5) {
    for (double im = -3.0; im <= 3.0; im += 1.5) {
      if (std::hypot(re, im) > 3.0) continue;
      CHECK(std::abs(weyl_numeric({Coherent{cplx(1.0, 0.5)}, {}}, cplx(re, im)).value) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("quadrature functions reproduce displacement operators near the vacuum") {
  const int dim = 96;
  QuadratureFunctions qf(dim);
  const double s = 0.8;
  // e^{i s (a + a^dag)} = D(i s).
  const auto f = qf.apply([&](double x) { return std::polar(1.0, s * x); });
  const auto d = displacement_matrix(cplx(0.0, s), dim);
  CHECK((f - d).topLeftCorner(20, 20).cwiseAbs().maxCoeff() <= 1e-12);
  // Rotation maps a + a^dag to e^{i p} a^dag + e^{-i p} a.
  const auto rot = rotate(d, 0.3);
  const auto dr = displacement_matrix(cplx(0.0, s) * std::polar(1.0, 0.3), dim);
  CHECK((rot - dr).topLeftCorner(20, 20).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("truncation policy reports failure at the cap") {
  TruncationPolicy tight;
  tight.cap = 32;
  CHECK_THROWS_AS(adequate_dim({Number{40}, {}}, tight), TruncationError);
  CHECK(adequate_dim({Number{40}, {}}) >= 64);
  CHECK(default_initial_dim(17.0) == 60);
  CHECK(default_initial_dim(0.0) == 32);
}

TEST_CASE("two-mode density of the correlated (0,1) pair") {
  SeparableMixture mix;
  mix.terms.push_back({0.5, {Number{0}, {}}, {Number{0}, {}}});
  mix.terms.push_back({0.5, {Number{1}, {}}, {Number{1}, {}}});
  const TwoModePhotonState sep{mix, {}, {}};
  const auto rho = two_mode_density(sep, 4, 4);
  CHECK(rho(0, 0).real() == doctest::Approx(0.5));
  CHECK(rho(5, 5).real() == doctest::Approx(0.5));  // |11> -> 1 * 4 + 1
  CHECK(rho.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("entangled coherent pair with equal amplitudes is a product state") {
  const cplx a(0.8, 0.2);
  const TwoModePhotonState s{EntangledCoherentPair{a, a}, {}, {}};
  const int dim = 24;
  const auto rho = two_mode_density(s, dim, dim);
  CHECK(std::abs(trace_deficit(rho)) <= 1e-10);
  const auto ra = partial_trace(rho, dim, dim, Keep::A);
  CHECK((ra - density_matrix({Coherent{a}, {}}, dim)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(std::abs((ra * ra).trace().real() - 1.0) <= 1e-10);
}

TEST_CASE("partial traces of number pairs") {
  const int n1 = 1, n2 = 3, dim = 6;
  for (bool entangled : {false, true}) {
    TwoModePhotonState s;
    if (entangled) {
      s = {EntangledNumberPair{{n1, n2}, {n2, n1}}, {}, {}};
    } else {
      SeparableMixture mix;
      mix.terms.push_back({0.5, {Number{n1}, {}}, {Number{n2}, {}}});
      mix.terms.push_back({0.5, {Number{n2}, {}}, {Number{n1}, {}}});
      s = {mix, {}, {}};
    }
    const auto rho = two_mode_density(s, dim, dim);
    FockMatrix expect = FockMatrix::Zero(dim, dim);
    expect(n1, n1) = expect(n2, n2) = 0.5;
    for (Keep k : {Keep::A, Keep::B}) {
      CHECK((partial_trace(rho, dim, dim, k) - expect).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((reduced_density(two_mode_ensemble(s, dim, dim), k) - expect).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("partial trace of a factorizable state") {
  const PhotonState a{Coherent{cplx(0.5, 0.5)}, {}};
  const PhotonState b{Thermal{1.3}, {}};
  const TwoModePhotonState s{Factorizable{a, b}, {}, {}};
  const int dim = 40;
  const auto rho = two_mode_density(s, dim, dim);
  CHECK((partial_trace(rho, dim, dim, Keep::A) - density_matrix(a, dim)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((partial_trace(rho, dim, dim, Keep::B) - density_matrix(b, dim)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("entangled coherent pair reduced state") {
  const cplx a1 = 1.0, a2 = std::sqrt(3.0);
  const TwoModePhotonState s{EntangledCoherentPair{a1, a2}, {}, {}};
  const int dim = 40;
  const auto rho = two_mode_density(s, dim, dim);
  const auto ra = partial_trace(rho, dim, dim, Keep::A);
  const FockVector u1 = state_vector({Coherent{a1}, {}}, dim);
  const FockVector u2 = state_vector({Coherent{a2}, {}}, dim);
  const cplx chi = u1.dot(u2);
  const double n2 = 1.0 / (2.0 + 2.0 * std::exp(-std::norm(a1 - a2)));
  const FockMatrix expect =
      n2 * (u1 * u1.adjoint() + u2 * u2.adjoint() + chi * u1 * u2.adjoint() + std::conj(chi) * u2 * u1.adjoint());
  CHECK((ra - expect).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(std::abs(trace_deficit(rho)) <= 1e-10);
}

TEST_CASE("two-mode expectation agrees with the dense density matrix") {
  const TwoModePhotonState s{EntangledCoherentPair{cplx(0.5, 0.2), cplx(-0.3, 0.7)}, {}, {}};
  const int dim = 20;
  const auto ens = two_mode_ensemble(s, dim, dim);
  const auto rho = two_mode_density(s, dim, dim);
  const auto da = displacement_matrix(cplx(0.3, -0.1), dim);
  const auto db = displacement_matrix(cplx(-0.2, 0.4), dim);
  const FockMatrix op = Eigen::kroneckerProduct(da, db).eval();
  CHECK(std::abs(expectation(ens, da, db) - expectation(rho, op)) <= 1e-12);
}
