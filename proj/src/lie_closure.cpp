#include "lyapsep/lie_closure.hpp"

#include <cmath>
#include <stdexcept>

namespace lyapsep {

Eigen::MatrixXd MatrixSpan::gram() const {
  const int r = rank();
  Eigen::MatrixXd g(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j <= i; ++j)
      g(i, j) = g(j, i) = (basis[static_cast<std::size_t>(i)].transpose() *
                           basis[static_cast<std::size_t>(j)])
                              .trace();
  return g;
}

Eigen::MatrixXd symplectic_form(int n) {
  if (n < 1) throw std::invalid_argument("symplectic_form: dimension must be positive");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return j;
}

Eigen::MatrixXd bracket(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("bracket: matrices must be square of equal dimension");
  return a * b - b * a;
}

int sp_dimension(int n) { return n * (2 * n + 1); }

namespace {

// Orthonormal span under the trace inner product, stored both as flattened
// unit vectors (for projection) and as matrices (for bracketing).
struct SpanState {
  int dim;
  std::vector<Eigen::VectorXd> vecs;
  std::vector<Eigen::MatrixXd> mats;

  // Adds the candidate when its orthogonal component clears the tolerance.
  bool try_add(const Eigen::MatrixXd& candidate, double rank_tol) {
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(candidate.data(),
                                                          candidate.size());
    const double norm0 = v.norm();
    if (!(norm0 > 0.0) || !std::isfinite(norm0)) return false;
    // Two projection passes keep the basis orthonormal to machine precision.
    for (int pass = 0; pass < 2; ++pass)
      for (const Eigen::VectorXd& b : vecs) v -= b.dot(v) * b;
    if (v.norm() <= rank_tol * std::max(1.0, norm0)) return false;
    v.normalize();
    vecs.push_back(v);
    mats.push_back(Eigen::Map<const Eigen::MatrixXd>(v.data(), dim, dim));
    return true;
  }
};

}  // namespace

LieSpanResult lie_span_dimension(const std::vector<Eigen::MatrixXd>& generators,
                                 double rank_tol) {
  if (generators.empty())
    throw std::invalid_argument("lie_span_dimension: generator list must be nonempty");
  const int dim = static_cast<int>(generators.front().rows());
  for (const Eigen::MatrixXd& g : generators)
    if (g.rows() != g.cols() || g.rows() != dim)
      throw std::invalid_argument(
          "lie_span_dimension: generators must be square of equal dimension");
  if (!(rank_tol > 0.0))
    throw std::invalid_argument("lie_span_dimension: rank_tol must be positive");

  SpanState state{dim, {}, {}};
  for (const Eigen::MatrixXd& g : generators) state.try_add(g, rank_tol);

  const int max_rank = dim * dim;
  int sweeps = 0;
  bool added = true;
  while (added) {
    if (++sweeps > max_rank + 1)
      throw std::logic_error("lie_span_dimension: closure failed to stabilize");
    added = false;
    const std::size_t snapshot = state.mats.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
      for (const Eigen::MatrixXd& g : generators)
        if (state.try_add(state.mats[i] * g - g * state.mats[i], rank_tol))
          added = true;
      for (std::size_t j = 0; j < snapshot; ++j)
        if (state.try_add(state.mats[i] * state.mats[j] - state.mats[j] * state.mats[i],
                          rank_tol))
          added = true;
    }
  }

  LieSpanResult result;
  result.span.dim = dim;
  result.span.basis = std::move(state.mats);
  result.rank = result.span.rank();
  return result;
}

GenerationResult verify_sp_generation(const ModelConfig& config, double energy,
                                      double rank_tol) {
  config.validate();
  config.require_binary_support();

  const Eigen::MatrixXd j = symplectic_form(config.n);
  std::vector<Eigen::MatrixXd> generators;
  for (const Omega& omega : binary_omegas(config.n)) {
    Eigen::MatrixXd a = config.ell * build_x(config, omega, energy);
    // Membership tripwire: J A + A^T J vanishes identically for the block form.
    const double residual = (j * a + a.transpose() * j).norm();
    if (residual > 1e-12)
      throw std::runtime_error("verify_sp_generation: generator escaped sp(n, R)");
    generators.push_back(std::move(a));
  }

  const LieSpanResult closure = lie_span_dimension(generators, rank_tol);
  GenerationResult result;
  result.rank = closure.rank;
  result.expected_rank = sp_dimension(config.n);
  result.generates = (closure.rank == result.expected_rank);
  return result;
}

}  // namespace lyapsep
