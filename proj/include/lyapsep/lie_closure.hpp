#ifndef LYAPSEP_LIE_CLOSURE_HPP
#define LYAPSEP_LIE_CLOSURE_HPP

#include <Eigen/Dense>
#include <vector>

#include "lyapsep/model.hpp"

namespace lyapsep {

/// Linear span of matrices, kept orthonormal under the trace inner product
/// <A, B> = tr(A^T B).
struct MatrixSpan {
  int dim = 0;                         // matrices are dim x dim
  std::vector<Eigen::MatrixXd> basis;  // orthonormal representatives

  int rank() const { return static_cast<int>(basis.size()); }
  Eigen::MatrixXd gram() const;
};

struct LieSpanResult {
  int rank = 0;
  MatrixSpan span;
};

struct GenerationResult {
  bool generates = false;
  int rank = 0;
  int expected_rank = 0;
};

/// Standard symplectic form J = [[0, I], [-I, 0]] of size 2n x 2n.
Eigen::MatrixXd symplectic_form(int n);

/// AB - BA.
Eigen::MatrixXd bracket(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// dim sp(n, R) = n(2n + 1).
int sp_dimension(int n);

/// Smallest bracket-closed linear span containing the generators, by
/// breadth-first bracketing with orthonormal projection. A candidate is added
/// when its component orthogonal to the span exceeds
/// rank_tol * max(1, candidate norm). Spans of d x d matrices stabilize
/// within d^2 productive sweeps; failure to do so is a bug signal.
LieSpanResult lie_span_dimension(const std::vector<Eigen::MatrixXd>& generators,
                                 double rank_tol = 1e-8);

/// Builds the 2^n generators ell * X_omega(energy) over binary disorder
/// patterns, checks each lies in sp(n, R), and reports whether their Lie
/// closure has full rank n(2n + 1).
GenerationResult verify_sp_generation(const ModelConfig& config, double energy,
                                      double rank_tol = 1e-8);

}  // namespace lyapsep

#endif
