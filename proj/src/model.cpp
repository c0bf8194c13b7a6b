#include "lyapsep/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lyapsep {

namespace {
constexpr double kProbSumTol = 1e-12;
constexpr int kEnumerationLimit = 20;  // 2^20 binary patterns
}  // namespace

SiteLaw SiteLaw::bernoulli_half() { return SiteLaw{{0.0, 1.0}, {0.5, 0.5}}; }

SiteLaw SiteLaw::point_mass(double atom) { return SiteLaw{{atom}, {1.0}}; }

void SiteLaw::validate() const {
  if (atoms.empty()) throw std::invalid_argument("site_law: needs at least one atom");
  if (atoms.size() != probs.size())
    throw std::invalid_argument("site_law: atoms and probs must have equal length");
  double sum = 0.0;
  for (double a : atoms)
    if (!std::isfinite(a)) throw std::invalid_argument("site_law: atoms must be finite");
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      if (atoms[i] == atoms[j]) throw std::invalid_argument("site_law: atoms must be distinct");
  for (double p : probs) {
    if (!std::isfinite(p) || p <= 0.0)
      throw std::invalid_argument("site_law: probabilities must be positive");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw std::invalid_argument("site_law: probabilities must sum to 1 within 1e-12");
}

bool SiteLaw::has_atom(double value) const {
  for (double a : atoms)
    if (a == value) return true;
  return false;
}

void ModelConfig::validate() const {
  if (n < 1) throw std::invalid_argument("model: n must be >= 1");
  if (!std::isfinite(ell) || ell <= 0.0)
    throw std::invalid_argument("model: ell must be positive");
  if (couplings.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("model: couplings must have length n");
  for (double c : couplings)
    if (!std::isfinite(c) || c == 0.0)
      throw std::invalid_argument("model: coupling must be nonzero");
  if (!std::isfinite(bg_radius) || bg_radius <= 0.0)
    throw std::invalid_argument("model: bg_radius must be positive");
  site_law.validate();
}

void ModelConfig::require_binary_support() const {
  if (!site_law.has_atom(0.0) || !site_law.has_atom(1.0))
    throw std::invalid_argument(
        "site_law: support must contain the atoms 0 and 1");
}

Eigen::MatrixXd build_v0(int n) {
  if (n < 1) throw std::invalid_argument("build_v0: dimension must be positive");
  Eigen::MatrixXd v0 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    v0(i, i + 1) = 1.0;
    v0(i + 1, i) = 1.0;
  }
  return v0;
}

Eigen::MatrixXd build_m(const ModelConfig& config, const Omega& omega, double energy) {
  if (omega.size() != config.n)
    throw std::invalid_argument("build_m: omega length must equal n");
  if (config.couplings.size() != static_cast<std::size_t>(config.n))
    throw std::invalid_argument("build_m: couplings must have length n");
  Eigen::MatrixXd m = build_v0(config.n);
  for (int i = 0; i < config.n; ++i)
    m(i, i) = config.couplings[static_cast<std::size_t>(i)] * omega[i] - energy;
  return m;
}

Eigen::MatrixXd build_x(const ModelConfig& config, const Omega& omega, double energy) {
  const int n = config.n;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  x.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  x.bottomLeftCorner(n, n) = build_m(config, omega, energy);
  return x;
}

double x_norm(const ModelConfig& config, const Omega& omega, double energy) {
  const Eigen::VectorXd lambda = spectrum_m(config, omega);
  double worst = 1.0;
  for (int i = 0; i < lambda.size(); ++i)
    worst = std::max(worst, std::abs(lambda[i] - energy));
  return worst;
}

Eigen::VectorXd spectrum_m(const ModelConfig& config, const Omega& omega) {
  return spectral_decomposition(build_m(config, omega, 0.0)).values;
}

SpectralDecomposition spectral_decomposition(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectral_decomposition: eigensolver failed to converge");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<Omega> binary_omegas(int n) {
  if (n < 1) throw std::invalid_argument("binary_omegas: dimension must be positive");
  if (n > kEnumerationLimit)
    throw std::length_error("binary_omegas: 2^n patterns exceed the enumeration limit (n <= 20)");
  const std::size_t count = std::size_t{1} << n;
  std::vector<Omega> patterns;
  patterns.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Omega omega(n);
    for (int i = 0; i < n; ++i) omega[i] = static_cast<double>((k >> i) & 1u);
    patterns.push_back(std::move(omega));
  }
  return patterns;
}

}  // namespace lyapsep
