#ifndef LYAPSEP_PROPAGATOR_HPP
#define LYAPSEP_PROPAGATOR_HPP

#include <Eigen/Dense>

#include "lyapsep/model.hpp"

namespace lyapsep {

/// Transfer matrix exp(ell * X) across one cell, computed in closed form
/// through the eigendecomposition of M: since X^2 = diag(M, M),
///   T = [[c(M), s(M)], [M s(M), c(M)]]
/// where c and s are the entire functions with c(lambda) = cosh(ell sqrt(lambda))
/// and s(lambda) = sinh(ell sqrt(lambda))/sqrt(lambda) for lambda > 0, their
/// trigonometric counterparts for lambda < 0, and 1 resp. ell at lambda = 0.
Eigen::MatrixXd transfer_matrix(const ModelConfig& config, const Omega& omega,
                                double energy);

/// Same matrix via the general dense exponential below; the independent
/// validation route for transfer_matrix.
Eigen::MatrixXd transfer_matrix_oracle(const ModelConfig& config, const Omega& omega,
                                       double energy);

/// Dense matrix exponential by scaling and squaring with diagonal Pade
/// approximants (orders 3/5/7/9/13). Throws std::range_error when the input
/// norm exceeds 700 and the result would overflow.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a);

/// Spectral norm of T^T J T - J, zero exactly on Sp(n, R).
double check_symplectic(const Eigen::MatrixXd& t);

/// Largest singular value.
double spectral_norm(const Eigen::MatrixXd& a);

}  // namespace lyapsep

#endif
