#pragma once

// Truncated Fock-space matrix oracle. Everything here is built from ladder
// operator matrix elements and dense linear algebra, independently of the
// closed forms in qstates.

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <vector>
#include <stdexcept>

#include "mesoqo/state_types.hpp"

namespace mesoqo::fockbench {

using FockMatrix = Eigen::MatrixXcd;
using FockVector = Eigen::VectorXcd;

struct TruncationPolicy {
  int initial_dim = 0;  ///< 0 selects max(32, ceil(<N> + 10 sqrt(<N>+1)))
  double tolerance = 1e-10;
  double trace_tolerance = 1e-10;
  int cap = 4096;
};

/// Raised when the policy cap is reached before convergence.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int default_initial_dim(double mean_photons);

FockMatrix annihilation(int dim);
FockMatrix number_operator(int dim);

/// Pure states (Number, Coherent, Squeezed) as truncated vectors.
/// Throws std::invalid_argument for Thermal.
FockVector state_vector(const PhotonState& state, int dim);

/// Truncated density matrix; not renormalized.
FockMatrix density_matrix(const PhotonState& state, int dim);

double trace_deficit(const FockMatrix& rho);
/// Probability in the top quarter of the basis.
double tail_weight(const FockMatrix& rho);

/// Smallest dimension on the doubling ladder at which the truncated state has
/// trace deficit and tail weight below the policy tolerance.
int adequate_dim(const PhotonState& state, const TruncationPolicy& policy = {});

/// <M|D(z)|N> via Laguerre recurrence along each diagonal.
FockMatrix displacement_matrix(cplx z, int dim);

/// Flux operator (xi/sqrt2)(e^{i w t} a^dag + e^{-i w t} a).
FockMatrix flux_matrix(const ModeParams& mode, double t, int dim);
/// EMF operator i (w xi/sqrt2)(e^{i w t} a^dag - e^{-i w t} a).
FockMatrix emf_matrix(const ModeParams& mode, double t, int dim);

cplx expectation(const FockMatrix& rho, const FockMatrix& obs);

/// R M R^dag with R = diag(e^{i phase n}); maps functions of a + a^dag to
/// functions of e^{i phase} a^dag + e^{-i phase} a.
FockMatrix rotate(const FockMatrix& m, double phase);

/// Matrix functions f(s (a + a^dag)) from one eigendecomposition.
class QuadratureFunctions {
 public:
  explicit QuadratureFunctions(int dim);
  int dim() const { return dim_; }
  FockMatrix apply(const std::function<cplx(double)>& f) const;

 private:
  int dim_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd values_;
};

struct Converged {
  cplx value;
  int dim;
};

/// Doubles the dimension from start until successive values differ by at
/// most policy.tolerance. Throws TruncationError at the cap.
Converged converge(const std::function<cplx(int)>& eval, int start, const TruncationPolicy& policy);

/// Tr[rho D(z)] iterated to convergence.
Converged weyl_numeric(const PhotonState& state, cplx z, const TruncationPolicy& policy = {});
/// Same for many points; truncated states are built once per dimension.
std::vector<Converged> weyl_numeric(const PhotonState& state, const std::vector<cplx>& zs,
                                    const TruncationPolicy& policy = {});

// Two-mode oracle. Tensor order is mode-A-major: index = n_a * dim_b + n_b.

struct TwoModeComponent {
  double weight = 1.0;
  bool pure = false;
  FockMatrix rho_a;  ///< product components
  FockMatrix rho_b;
  FockMatrix psi;  ///< pure components: |psi> = sum psi(m, n) |m>|n>
};

struct TwoModeEnsemble {
  int dim_a = 0;
  int dim_b = 0;
  std::vector<TwoModeComponent> components;
};

TwoModeEnsemble two_mode_ensemble(const TwoModePhotonState& state, int dim_a, int dim_b);

/// Tr[rho (op_a (x) op_b)].
cplx expectation(const TwoModeEnsemble& ens, const FockMatrix& op_a, const FockMatrix& op_b);

enum class Keep { A, B };

FockMatrix reduced_density(const TwoModeEnsemble& ens, Keep keep);
FockMatrix two_mode_density(const TwoModePhotonState& state, int dim_a, int dim_b);
FockMatrix partial_trace(const FockMatrix& rho, int dim_a, int dim_b, Keep keep);

/// Single-mode state dimension adequate for every component of a two-mode state.
int adequate_two_mode_dim(const TwoModePhotonState& state, const TruncationPolicy& policy = {});

}  // namespace mesoqo::fockbench
