#include "mesoqo/fockbench.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <limits>

namespace mesoqo::fockbench {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("fock dimension must be positive");
}

// <N>, used only to pick a starting dimension.
double mean_photon_estimate(const PhotonState& state) {
  return std::visit(
      overloaded{
          [](const Number& s) { return static_cast<double>(s.n); },
          [](const Coherent& s) { return std::norm(s.amplitude); },
          [](const Squeezed& s) {
            const double sh = std::sinh(0.5 * s.r);
            const cplx g = std::cosh(0.5 * s.r) * s.amplitude - std::polar(sh, -s.angle) * std::conj(s.amplitude);
            return sh * sh + std::norm(g);
          },
          [&](const Thermal& s) {
            if (std::isinf(s.beta)) return 0.0;
            return 1.0 / std::expm1(s.beta * state.mode.omega);
          },
      },
      state.family);
}

FockVector coherent_vector(cplx a, int dim) {
  FockVector v(dim);
  v(0) = std::exp(-0.5 * std::norm(a));
  for (int n = 1; n < dim; ++n) v(n) = v(n - 1) * a / std::sqrt(static_cast<double>(n));
  return v;
}

// G v with G = (r/4)(e^{i angle} a^2 - e^{-i angle} a^dag^2), anti-Hermitian.
void apply_squeeze_generator(const FockVector& v, FockVector& out, double r, double angle) {
  const int dim = static_cast<int>(v.size());
  const cplx lower = std::polar(0.25 * r, angle);
  const cplx raise = std::polar(0.25 * r, -angle);
  for (int n = 0; n < dim; ++n) {
    cplx acc = 0.0;
    if (n + 2 < dim) acc += lower * std::sqrt((n + 1.0) * (n + 2.0)) * v(n + 2);
    if (n >= 2) acc -= raise * std::sqrt(n * (n - 1.0)) * v(n - 2);
    out(n) = acc;
  }
}

// exp(G) v by scaled Taylor steps; each step has ||G/s|| <= 1.
FockVector squeeze_vector(const FockVector& v0, double r, double angle) {
  const int dim = static_cast<int>(v0.size());
  if (r == 0.0 || dim < 3) return v0;
  const double gnorm = 0.5 * r * dim;
  const int steps = std::max(1, static_cast<int>(std::ceil(gnorm)));
  const double h = 1.0 / steps;
  FockVector v = v0;
  FockVector term(dim), next(dim);
  for (int s = 0; s < steps; ++s) {
    term = v;
    FockVector acc = v;
    const double vnorm = v.norm();
    for (int k = 1; k < 200; ++k) {
      apply_squeeze_generator(term, next, r, angle);
      term = next * (h / k);
      acc += term;
      if (term.norm() <= 1e-18 * vnorm) break;
    }
    v = acc;
  }
  return v;
}

}  // namespace

int default_initial_dim(double mean_photons) {
  const double d = std::ceil(mean_photons + 10.0 * std::sqrt(mean_photons + 1.0));
  return std::max(32, static_cast<int>(d));
}

FockMatrix annihilation(int dim) {
  check_dim(dim);
  FockMatrix a = FockMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

FockMatrix number_operator(int dim) {
  check_dim(dim);
  FockMatrix m = FockMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

FockVector state_vector(const PhotonState& state, int dim) {
  check_dim(dim);
  return std::visit(
      overloaded{
          [&](const Number& s) -> FockVector {
            if (s.n < 0) throw std::invalid_argument("number state index must be nonnegative");
            FockVector v = FockVector::Zero(dim);
            if (s.n < dim) v(s.n) = 1.0;
            return v;
          },
          [&](const Coherent& s) -> FockVector { return coherent_vector(s.amplitude, dim); },
          [&](const Squeezed& s) -> FockVector {
            return squeeze_vector(coherent_vector(s.amplitude, dim), s.r, s.angle);
          },
          [&](const Thermal&) -> FockVector {
            throw std::invalid_argument("thermal states have no state vector");
          },
      },
      state.family);
}

FockMatrix density_matrix(const PhotonState& state, int dim) {
  check_dim(dim);
  if (const auto* th = std::get_if<Thermal>(&state.family)) {
    FockMatrix rho = FockMatrix::Zero(dim, dim);
    if (std::isinf(th->beta)) {
      rho(0, 0) = 1.0;
      return rho;
    }
    const double bw = th->beta * state.mode.omega;
    const double norm = -std::expm1(-bw);
    for (int n = 0; n < dim; ++n) rho(n, n) = norm * std::exp(-bw * n);
    return rho;
  }
  const FockVector v = state_vector(state, dim);
  return v * v.adjoint();
}

double trace_deficit(const FockMatrix& rho) { return 1.0 - rho.trace().real(); }

double tail_weight(const FockMatrix& rho) {
  const int dim = static_cast<int>(rho.rows());
  double w = 0.0;
  for (int n = dim - dim / 4; n < dim; ++n) w += rho(n, n).real();
  return w;
}

namespace {

bool adequate(const PhotonState& state, int dim, const TruncationPolicy& policy) {
  double deficit = 0.0, tail = 0.0;
  if (std::holds_alternative<Thermal>(state.family)) {
    const FockMatrix rho = density_matrix(state, dim);
    deficit = trace_deficit(rho);
    tail = tail_weight(rho);
  } else {
    const FockVector v = state_vector(state, dim);
    deficit = 1.0 - v.squaredNorm();
    for (int n = dim - dim / 4; n < dim; ++n) tail += std::norm(v(n));
  }
  return std::abs(deficit) < policy.trace_tolerance && tail < policy.trace_tolerance;
}

}  // namespace

int adequate_dim(const PhotonState& state, const TruncationPolicy& policy) {
  int dim = policy.initial_dim > 0 ? policy.initial_dim : default_initial_dim(mean_photon_estimate(state));
  while (true) {
    if (dim > policy.cap) throw TruncationError("state does not fit below the dimension cap");
    if (adequate(state, dim, policy)) return dim;
    if (dim == policy.cap) throw TruncationError("state does not fit below the dimension cap");
    dim = std::min(2 * dim, policy.cap);
  }
}

FockMatrix displacement_matrix(cplx z, int dim) {
  check_dim(dim);
  FockMatrix d = FockMatrix::Zero(dim, dim);
  const double x = std::norm(z);
  if (x == 0.0) return FockMatrix::Identity(dim, dim);
  const double absz = std::sqrt(x);
  const double ph = std::arg(z);
  for (int k = 0; k < dim; ++k) {
    // g_N = sqrt(N!/(N+k)!) |z|^k e^{-x/2} L_N^k(x), carried as h_N * exp(log_scale).
    const int len = dim - k;
    double log_scale = -0.5 * x + k * std::log(absz) - 0.5 * std::lgamma(k + 1.0);
    double h_prev = 0.0;
    double h = 1.0;
    const cplx lower_phase = std::polar(1.0, k * ph);
    const cplx upper_phase = std::polar((k % 2 == 0) ? 1.0 : -1.0, -k * ph);
    for (int n = 0; n < len; ++n) {
      const double g = h * std::exp(log_scale);
      d(n + k, n) = g * lower_phase;
      if (k > 0) d(n, n + k) = g * upper_phase;
      if (n + 1 == len) break;
      const double N = n;
      const double c1 = (2.0 * N + 1.0 + k - x) * std::sqrt((N + 1.0) / (N + 1.0 + k));
      const double c2 = (N + k) * std::sqrt(N * (N + 1.0) / ((N + k) * (N + k + 1.0)));
      const double h_next = (c1 * h - (n > 0 ? c2 * h_prev : 0.0)) / (N + 1.0);
      h_prev = h;
      h = h_next;
      const double mag = std::abs(h);
      if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
        const double s = std::log(mag);
        h /= mag;
        h_prev /= mag;
        log_scale += s;
      }
    }
  }
  return d;
}

FockMatrix flux_matrix(const ModeParams& mode, double t, int dim) {
  check_dim(dim);
  FockMatrix m = FockMatrix::Zero(dim, dim);
  const double c = mode.xi / std::sqrt(2.0);
  const cplx up = std::polar(c, mode.omega * t);
  for (int n = 0; n + 1 < dim; ++n) {
    const double s = std::sqrt(n + 1.0);
    m(n + 1, n) = up * s;
    m(n, n + 1) = std::conj(up) * s;
  }
  return m;
}

FockMatrix emf_matrix(const ModeParams& mode, double t, int dim) {
  check_dim(dim);
  FockMatrix m = FockMatrix::Zero(dim, dim);
  const double c = mode.omega * mode.xi / std::sqrt(2.0);
  const cplx up = cplx(0.0, 1.0) * std::polar(c, mode.omega * t);
  for (int n = 0; n + 1 < dim; ++n) {
    const double s = std::sqrt(n + 1.0);
    m(n + 1, n) = up * s;
    m(n, n + 1) = std::conj(up) * s;
  }
  return m;
}

cplx expectation(const FockMatrix& rho, const FockMatrix& obs) {
  if (rho.rows() != obs.rows() || rho.cols() != obs.cols()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  return (rho.cwiseProduct(obs.transpose())).sum();
}

FockMatrix rotate(const FockMatrix& m, double phase) {
  const int dim = static_cast<int>(m.rows());
  FockVector r(dim);
  for (int n = 0; n < dim; ++n) r(n) = std::polar(1.0, phase * n);
  return r.asDiagonal() * m * r.conjugate().asDiagonal();
}

QuadratureFunctions::QuadratureFunctions(int dim) : dim_(dim) {
  check_dim(dim);
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) {
    x(n, n + 1) = x(n + 1, n) = std::sqrt(n + 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
  vectors_ = es.eigenvectors();
  values_ = es.eigenvalues();
}

FockMatrix QuadratureFunctions::apply(const std::function<cplx(double)>& f) const {
  FockVector fv(dim_);
  for (int i = 0; i < dim_; ++i) fv(i) = f(values_(i));
  const Eigen::MatrixXcd v = vectors_.cast<cplx>();
  return v * fv.asDiagonal() * v.transpose();
}

Converged converge(const std::function<cplx(int)>& eval, int start, const TruncationPolicy& policy) {
  int dim = std::min(std::max(start, 1), policy.cap);
  cplx prev = eval(dim);
  while (true) {
    if (dim >= policy.cap) throw TruncationError("observable did not converge below the dimension cap");
    const int next_dim = std::min(2 * dim, policy.cap);
    const cplx next = eval(next_dim);
    if (std::abs(next - prev) <= policy.tolerance) return {next, next_dim};
    prev = next;
    dim = next_dim;
  }
}

std::vector<Converged> weyl_numeric(const PhotonState& state, const std::vector<cplx>& zs,
                                    const TruncationPolicy& policy) {
  const int start = adequate_dim(state, policy);
  const bool thermal = std::holds_alternative<Thermal>(state.family);
  std::map<int, FockMatrix> cache;  // density matrix or state vector per dimension
  auto cached = [&](int dim) -> const FockMatrix& {
    auto it = cache.find(dim);
    if (it == cache.end()) {
      it = cache.emplace(dim, thermal ? density_matrix(state, dim) : FockMatrix(state_vector(state, dim))).first;
    }
    return it->second;
  };
  std::vector<Converged> out;
  out.reserve(zs.size());
  for (cplx z : zs) {
    out.push_back(converge(
        [&](int dim) -> cplx {
          const FockMatrix d = displacement_matrix(z, dim);
          const FockMatrix& s = cached(dim);
          if (thermal) return expectation(s, d);
          return (s.adjoint() * d * s)(0, 0);
        },
        start, policy));
  }
  return out;
}

Converged weyl_numeric(const PhotonState& state, cplx z, const TruncationPolicy& policy) {
  return weyl_numeric(state, std::vector<cplx>{z}, policy).front();
}

// Two-mode oracle.

namespace {

PhotonState with_mode(PhotonState s, const ModeParams& mode) {
  s.mode = mode;
  return s;
}

}  // namespace

TwoModeEnsemble two_mode_ensemble(const TwoModePhotonState& state, int dim_a, int dim_b) {
  check_dim(dim_a);
  check_dim(dim_b);
  TwoModeEnsemble ens{dim_a, dim_b, {}};
  std::visit(
      overloaded{
          [&](const Factorizable& f) {
            TwoModeComponent c;
            c.rho_a = density_matrix(with_mode(f.a, state.mode_a), dim_a);
            c.rho_b = density_matrix(with_mode(f.b, state.mode_b), dim_b);
            ens.components.push_back(std::move(c));
          },
          [&](const SeparableMixture& m) {
            for (const auto& t : m.terms) {
              TwoModeComponent c;
              c.weight = t.weight;
              c.rho_a = density_matrix(with_mode(t.a, state.mode_a), dim_a);
              c.rho_b = density_matrix(with_mode(t.b, state.mode_b), dim_b);
              ens.components.push_back(std::move(c));
            }
          },
          [&](const EntangledNumberPair& p) {
            TwoModeComponent c;
            c.pure = true;
            c.psi = FockMatrix::Zero(dim_a, dim_b);
            const double amp = 1.0 / std::sqrt(2.0);
            for (const auto& np : {p.first, p.second}) {
              if (np.na < dim_a && np.nb < dim_b) c.psi(np.na, np.nb) += amp;
            }
            ens.components.push_back(std::move(c));
          },
          [&](const EntangledCoherentPair& p) {
            TwoModeComponent c;
            c.pure = true;
            const double norm = 1.0 / std::sqrt(2.0 + 2.0 * std::exp(-std::norm(p.a1 - p.a2)));
            const FockVector u1a = coherent_vector(p.a1, dim_a);
            const FockVector u2a = coherent_vector(p.a2, dim_a);
            const FockVector u1b = coherent_vector(p.a1, dim_b);
            const FockVector u2b = coherent_vector(p.a2, dim_b);
            c.psi = norm * (u1a * u2b.transpose() + u2a * u1b.transpose());
            ens.components.push_back(std::move(c));
          },
      },
      state.family);
  return ens;
}

cplx expectation(const TwoModeEnsemble& ens, const FockMatrix& op_a, const FockMatrix& op_b) {
  if (op_a.rows() != ens.dim_a || op_b.rows() != ens.dim_b) {
    throw std::invalid_argument("two-mode expectation: dimension mismatch");
  }
  cplx sum = 0.0;
  for (const auto& c : ens.components) {
    if (c.pure) {
      sum += c.weight * (c.psi.adjoint() * op_a * c.psi * op_b.transpose()).trace();
    } else {
      sum += c.weight * expectation(c.rho_a, op_a) * expectation(c.rho_b, op_b);
    }
  }
  return sum;
}

FockMatrix reduced_density(const TwoModeEnsemble& ens, Keep keep) {
  const int dim = keep == Keep::A ? ens.dim_a : ens.dim_b;
  FockMatrix out = FockMatrix::Zero(dim, dim);
  for (const auto& c : ens.components) {
    if (c.pure) {
      // rho_A = Psi Psi^dag, rho_B = Psi^T conj(Psi).
      out += c.weight * (keep == Keep::A ? FockMatrix(c.psi * c.psi.adjoint())
                                         : FockMatrix(c.psi.transpose() * c.psi.conjugate()));
    } else {
      const FockMatrix& other = keep == Keep::A ? c.rho_b : c.rho_a;
      out += c.weight * other.trace() * (keep == Keep::A ? c.rho_a : c.rho_b);
    }
  }
  return out;
}

FockMatrix two_mode_density(const TwoModePhotonState& state, int dim_a, int dim_b) {
  const auto ens = two_mode_ensemble(state, dim_a, dim_b);
  const int d = dim_a * dim_b;
  FockMatrix rho = FockMatrix::Zero(d, d);
  for (const auto& c : ens.components) {
    if (c.pure) {
      FockVector v(d);
      for (int m = 0; m < dim_a; ++m) {
        for (int n = 0; n < dim_b; ++n) v(m * dim_b + n) = c.psi(m, n);
      }
      rho += c.weight * v * v.adjoint();
    } else {
      rho += c.weight * Eigen::kroneckerProduct(c.rho_a, c.rho_b).eval();
    }
  }
  return rho;
}

FockMatrix partial_trace(const FockMatrix& rho, int dim_a, int dim_b, Keep keep) {
  if (rho.rows() != dim_a * dim_b || rho.cols() != dim_a * dim_b) {
    throw std::invalid_argument("partial_trace: dimension mismatch");
  }
  if (keep == Keep::A) {
    FockMatrix out = FockMatrix::Zero(dim_a, dim_a);
    for (int m = 0; m < dim_a; ++m)
      for (int mp = 0; mp < dim_a; ++mp)
        for (int n = 0; n < dim_b; ++n) out(m, mp) += rho(m * dim_b + n, mp * dim_b + n);
    return out;
  }
  FockMatrix out = FockMatrix::Zero(dim_b, dim_b);
  for (int n = 0; n < dim_b; ++n)
    for (int np = 0; np < dim_b; ++np)
      for (int m = 0; m < dim_a; ++m) out(n, np) += rho(m * dim_b + n, m * dim_b + np);
  return out;
}

int adequate_two_mode_dim(const TwoModePhotonState& state, const TruncationPolicy& policy) {
  int dim = 1;
  auto include = [&](const PhotonState& s) { dim = std::max(dim, adequate_dim(s, policy)); };
  std::visit(overloaded{
                 [&](const Factorizable& f) {
                   include(with_mode(f.a, state.mode_a));
                   include(with_mode(f.b, state.mode_b));
                 },
                 [&](const SeparableMixture& m) {
                   for (const auto& t : m.terms) {
                     include(with_mode(t.a, state.mode_a));
                     include(with_mode(t.b, state.mode_b));
                   }
                 },
                 [&](const EntangledNumberPair& p) {
                   for (const auto& np : {p.first, p.second}) {
                     include({Number{np.na}, state.mode_a});
                     include({Number{np.nb}, state.mode_b});
                   }
                 },
                 [&](const EntangledCoherentPair& p) {
                   include({Coherent{p.a1}, state.mode_a});
                   include({Coherent{p.a2}, state.mode_a});
                 },
             },
             state.family);
  return dim;
}

}  // namespace mesoqo::fockbench
