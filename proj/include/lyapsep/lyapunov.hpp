#ifndef LYAPSEP_LYAPUNOV_HPP
#define LYAPSEP_LYAPUNOV_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "lyapsep/interval.hpp"
#include "lyapsep/model.hpp"
#include "lyapsep/rng.hpp"

namespace lyapsep {

/// Monte-Carlo estimate of the full Lyapunov spectrum of the transfer-matrix
/// cocycle at one energy. Exponents are per unit length of x (log growth
/// divided by steps * ell) and sorted nonincreasing; standard errors come
/// from batch means and stay aligned with the exponents under the sort.
struct LyapunovEstimate {
  double energy = 0.0;
  Eigen::VectorXd exponents;
  Eigen::VectorXd standard_errors;
  long steps = 0;
  double ell = 0.0;
  std::uint64_t seed = 0;
  /// min over the top-n consecutive gaps and the n-th exponent itself; the
  /// quantity whose positivity is the separability statement.
  double min_positive_gap = 0.0;
};

/// One draw of (omega_1, ..., omega_n), each coordinate i.i.d. from the site
/// law. Advances rng by exactly n uniforms.
Omega sample_omega(const ModelConfig& config, RngStream& rng);

/// Benettin QR accumulation: multiply one-cell transfer matrices onto an
/// orthonormal frame, re-orthonormalize every qr_stride steps, and average
/// the log diagonal of R. `stream` selects the RNG stream for (seed, stream)
/// so concurrent tasks stay independent and reproducible.
LyapunovEstimate lyapunov_spectrum(const ModelConfig& config, double energy,
                                   long steps, std::uint64_t seed,
                                   int qr_stride = 1, std::uint64_t stream = 0);

struct ScanOptions {
  int grid_points = 21;
  long steps = 1000000;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  int qr_stride = 1;
  double rank_tol = 1e-8;
  double significance = 3.0;  // gaps must exceed this many standard errors
  int threads = 0;            // 0 = hardware concurrency
};

/// Scan result over the energy grid of the constructed interval. Lists are
/// aligned by grid index; estimates are seed-merged (mean exponents, combined
/// standard errors).
struct ScanReport {
  EnergyInterval interval;
  std::vector<double> energies;
  std::vector<LyapunovEstimate> estimates;
  std::vector<int> lie_ranks;
  std::vector<bool> separable;
  std::vector<double> min_gap_over_se;  // confidence: worst gap / SE ratio
  std::vector<std::string> errors;      // per-energy failures, normally empty

  bool all_separable() const;
};

/// Builds the interval, checks Lie generation at every grid energy, runs one
/// Lyapunov estimation task per (energy, seed), and issues a per-energy
/// verdict: separable iff every consecutive gap among the top n exponents and
/// the n-th exponent itself exceed significance * (their standard errors).
ScanReport separability_scan(const ModelConfig& config, const ScanOptions& options = {});

}  // namespace lyapsep

#endif
