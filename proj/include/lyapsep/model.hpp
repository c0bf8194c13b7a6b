#ifndef LYAPSEP_MODEL_HPP
#define LYAPSEP_MODEL_HPP

#include <Eigen/Dense>
#include <vector>

namespace lyapsep {

/// Finite discrete distribution of the single-site disorder variables.
/// Atoms must be distinct and finite, probabilities positive and summing
/// to one within 1e-12.
struct SiteLaw {
  std::vector<double> atoms;
  std::vector<double> probs;

  static SiteLaw bernoulli_half();
  static SiteLaw point_mass(double atom);

  void validate() const;
  bool has_atom(double value) const;
};

/// Static parameters of the random operator: channel count n, interaction
/// length ell, channel couplings c_i, site law, and the radius of the ball
/// inside the log of the group neighborhood that drives the energy-interval
/// construction (bg_radius). All derived interval quantities are parametric
/// in bg_radius.
struct ModelConfig {
  int n = 1;
  double ell = 0.5;
  std::vector<double> couplings = {1.0};
  SiteLaw site_law = SiteLaw::bernoulli_half();
  double bg_radius = 1.0;

  /// Structural validity: n >= 1, ell > 0, couplings nonzero and of length n,
  /// bg_radius > 0, site law well-formed.
  void validate() const;

  /// The interval/closure construction additionally needs {0,1} in the
  /// support of the site law. Sampling-only paths do not.
  void require_binary_support() const;
};

/// One disorder realization (omega_1, ..., omega_n).
using Omega = Eigen::VectorXd;

/// Tridiagonal coupling matrix: zero diagonal, ones on the first super- and
/// sub-diagonal.
Eigen::MatrixXd build_v0(int n);

/// V0 + diag(c_i * omega_i - energy). Exactly symmetric.
Eigen::MatrixXd build_m(const ModelConfig& config, const Omega& omega, double energy);

/// Block generator [[0, I], [M, 0]] with M = build_m(...). Lies in sp(n, R).
Eigen::MatrixXd build_x(const ModelConfig& config, const Omega& omega, double energy);

/// Spectral norm of build_x via the eigenvalue formula
/// max(1, max_i |lambda_i - energy|), lambda_i the spectrum of M at energy 0.
double x_norm(const ModelConfig& config, const Omega& omega, double energy);

/// Eigenvalues of M at energy 0, nondecreasing.
Eigen::VectorXd spectrum_m(const ModelConfig& config, const Omega& omega);

struct SpectralDecomposition {
  Eigen::VectorXd values;   // nondecreasing
  Eigen::MatrixXd vectors;  // orthonormal columns, A = Q diag(values) Q^T
};

/// Dense symmetric eigendecomposition; throws on solver non-convergence.
SpectralDecomposition spectral_decomposition(const Eigen::MatrixXd& a);

/// All 2^n binary disorder patterns; pattern k has omega_i = bit i of k.
/// n > 20 is rejected as a resource limit.
std::vector<Omega> binary_omegas(int n);

}  // namespace lyapsep

#endif
