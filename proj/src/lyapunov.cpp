#include "lyapsep/lyapunov.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lyapsep/lie_closure.hpp"
#include "lyapsep/propagator.hpp"

namespace lyapsep {

namespace {

constexpr int kBatches = 20;
constexpr std::size_t kTransferCacheCap = 4096;

// Inverse-CDF sampler over the site-law atoms. Both the public sample_omega
// and the hot estimation loop draw through this, one uniform per coordinate,
// so cached and uncached paths consume the RNG identically.
struct SiteSampler {
  std::vector<double> cum;
  const std::vector<double>* atoms;

  explicit SiteSampler(const SiteLaw& law) : atoms(&law.atoms) {
    cum.resize(law.probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < law.probs.size(); ++k) {
      acc += law.probs[k];
      cum[k] = acc;
    }
  }

  std::size_t draw_index(RngStream& rng) const {
    const double u = rng.next_double();
    for (std::size_t k = 0; k + 1 < cum.size(); ++k)
      if (u < cum[k]) return k;
    return cum.size() - 1;
  }
};

// Modified Gram-Schmidt with a second projection pass; on return the columns
// of b are orthonormal and rdiag holds the (positive) norms of the projected
// columns, i.e. the diagonal of R in the QR factorization.
void orthonormalize(Eigen::MatrixXd& b, Eigen::VectorXd& rdiag) {
  const int d = static_cast<int>(b.cols());
  for (int j = 0; j < d; ++j) {
    auto col = b.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) col -= b.col(i).dot(col) * b.col(i);
    const double r = col.norm();
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::runtime_error(
          "lyapunov_spectrum: QR produced a nonpositive diagonal entry");
    rdiag[j] = r;
    col /= r;
  }
}

double gap_ratio(double gap, double se) {
  if (se > 0.0) return gap / se;
  return gap > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

Omega sample_omega(const ModelConfig& config, RngStream& rng) {
  if (config.n < 1) throw std::invalid_argument("sample_omega: n must be >= 1");
  config.site_law.validate();
  const SiteSampler sampler(config.site_law);
  Omega omega(config.n);
  for (int i = 0; i < config.n; ++i)
    omega[i] = (*sampler.atoms)[sampler.draw_index(rng)];
  return omega;
}

LyapunovEstimate lyapunov_spectrum(const ModelConfig& config, double energy,
                                   long steps, std::uint64_t seed, int qr_stride,
                                   std::uint64_t stream) {
  config.validate();
  if (steps < 1) throw std::invalid_argument("lyapunov_spectrum: steps must be >= 1");
  if (qr_stride < 1) throw std::invalid_argument("lyapunov_spectrum: qr_stride must be >= 1");

  const int n = config.n;
  const int d = 2 * n;
  const SiteSampler sampler(config.site_law);
  const std::size_t natoms = config.site_law.atoms.size();

  // The one-cell transfer matrices take finitely many values; precompute them
  // all when the pattern count is small and reduce each step to a lookup.
  std::size_t combos = 1;
  bool cached = true;
  for (int i = 0; i < n; ++i) {
    if (combos > kTransferCacheCap / natoms) {
      cached = false;
      break;
    }
    combos *= natoms;
  }
  std::vector<Eigen::MatrixXd> cache;
  if (cached) {
    cache.reserve(combos);
    Omega omega(n);
    for (std::size_t k = 0; k < combos; ++k) {
      std::size_t rest = k;
      for (int i = 0; i < n; ++i) {
        omega[i] = config.site_law.atoms[rest % natoms];
        rest /= natoms;
      }
      cache.push_back(transfer_matrix(config, omega, energy));
    }
  }

  RngStream rng = RngStream::for_task(seed, stream);
  const int n_batches = static_cast<int>(std::min<long>(kBatches, steps));

  Eigen::MatrixXd frame = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd scratch(d, d);
  Eigen::MatrixXd step_matrix(d, d);
  Eigen::VectorXd rdiag(d);
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd batch_sums = Eigen::MatrixXd::Zero(n_batches, d);
  std::vector<long> batch_lengths(static_cast<std::size_t>(n_batches), 0);
  Omega omega(n);
  long chunk = 0;

  for (long k = 0; k < steps; ++k) {
    const Eigen::MatrixXd* t;
    if (cached) {
      std::size_t idx = 0;
      std::size_t mult = 1;
      for (int i = 0; i < n; ++i) {
        idx += mult * sampler.draw_index(rng);
        mult *= natoms;
      }
      t = &cache[idx];
    } else {
      for (int i = 0; i < n; ++i)
        omega[i] = (*sampler.atoms)[sampler.draw_index(rng)];
      step_matrix = transfer_matrix(config, omega, energy);
      t = &step_matrix;
    }

    scratch.noalias() = (*t) * frame;
    frame.swap(scratch);
    ++chunk;

    if ((k + 1) % qr_stride == 0 || k + 1 == steps) {
      orthonormalize(frame, rdiag);
      const int batch = static_cast<int>((k * n_batches) / steps);
      for (int i = 0; i < d; ++i) {
        const double lg = std::log(rdiag[i]);
        sums[i] += lg;
        batch_sums(batch, i) += lg;
      }
      batch_lengths[static_cast<std::size_t>(batch)] += chunk;
      chunk = 0;
    }
  }

  const double scale = static_cast<double>(steps) * config.ell;
  Eigen::VectorXd gamma = sums / scale;

  // Batch-means standard errors per QR direction.
  Eigen::VectorXd se = Eigen::VectorXd::Zero(d);
  int populated = 0;
  for (long len : batch_lengths)
    if (len > 0) ++populated;
  if (populated >= 2) {
    for (int i = 0; i < d; ++i) {
      double mean = 0.0;
      for (int bidx = 0; bidx < n_batches; ++bidx) {
        if (batch_lengths[static_cast<std::size_t>(bidx)] == 0) continue;
        mean += batch_sums(bidx, i) /
                (static_cast<double>(batch_lengths[static_cast<std::size_t>(bidx)]) * config.ell);
      }
      mean /= populated;
      double var = 0.0;
      for (int bidx = 0; bidx < n_batches; ++bidx) {
        if (batch_lengths[static_cast<std::size_t>(bidx)] == 0) continue;
        const double rate =
            batch_sums(bidx, i) /
            (static_cast<double>(batch_lengths[static_cast<std::size_t>(bidx)]) * config.ell);
        var += (rate - mean) * (rate - mean);
      }
      var /= (populated - 1);
      se[i] = std::sqrt(var / populated);
    }
  }

  // Sort nonincreasing, carrying the standard errors along.
  std::vector<int> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int bb) { return gamma[a] > gamma[bb]; });
  LyapunovEstimate estimate;
  estimate.exponents.resize(d);
  estimate.standard_errors.resize(d);
  for (int i = 0; i < d; ++i) {
    estimate.exponents[i] = gamma[order[static_cast<std::size_t>(i)]];
    estimate.standard_errors[i] = se[order[static_cast<std::size_t>(i)]];
  }
  estimate.energy = energy;
  estimate.steps = steps;
  estimate.ell = config.ell;
  estimate.seed = seed;

  double min_gap = estimate.exponents[n - 1];
  for (int i = 0; i + 1 < n; ++i)
    min_gap = std::min(min_gap, estimate.exponents[i] - estimate.exponents[i + 1]);
  estimate.min_positive_gap = min_gap;
  return estimate;
}

bool ScanReport::all_separable() const {
  if (separable.empty()) return false;
  for (bool ok : separable)
    if (!ok) return false;
  for (const std::string& err : errors)
    if (!err.empty()) return false;
  return true;
}

ScanReport separability_scan(const ModelConfig& config, const ScanOptions& options) {
  config.validate();
  config.require_binary_support();
  if (options.grid_points < 1)
    throw std::invalid_argument("separability_scan: grid_points must be positive");
  if (options.steps < 1)
    throw std::invalid_argument("separability_scan: steps must be positive");
  if (options.seeds.empty())
    throw std::invalid_argument("separability_scan: seeds must be nonempty");
  if (options.qr_stride < 1)
    throw std::invalid_argument("separability_scan: qr_stride must be positive");
  if (!(options.rank_tol > 0.0))
    throw std::invalid_argument("separability_scan: rank_tol must be positive");
  if (!(options.significance > 0.0))
    throw std::invalid_argument("separability_scan: significance must be positive");

  ScanReport report;
  report.interval = energy_interval(config);
  report.energies = energy_grid(report.interval, options.grid_points);

  const std::size_t n_energies = report.energies.size();
  const std::size_t n_seeds = options.seeds.size();

  report.lie_ranks.resize(n_energies);
  for (std::size_t ei = 0; ei < n_energies; ++ei)
    report.lie_ranks[ei] =
        verify_sp_generation(config, report.energies[ei], options.rank_tol).rank;

  // One task per (energy, seed); tasks write disjoint slots, so the merge is
  // deterministic regardless of scheduling.
  std::vector<LyapunovEstimate> raw(n_energies * n_seeds);
  std::vector<std::string> task_errors(n_energies * n_seeds);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= raw.size()) return;
      const std::size_t ei = task / n_seeds;
      const std::size_t si = task % n_seeds;
      try {
        raw[task] = lyapunov_spectrum(config, report.energies[ei], options.steps,
                                      options.seeds[si], options.qr_stride,
                                      /*stream=*/ei);
      } catch (const std::exception& e) {
        task_errors[task] = e.what();
      }
    }
  };

  int n_threads = options.threads > 0
                      ? options.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(raw.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_threads; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  const int n = config.n;
  const int d = 2 * n;
  report.estimates.resize(n_energies);
  report.separable.assign(n_energies, false);
  report.min_gap_over_se.assign(n_energies, 0.0);
  report.errors.assign(n_energies, std::string());

  for (std::size_t ei = 0; ei < n_energies; ++ei) {
    std::string joined;
    for (std::size_t si = 0; si < n_seeds; ++si) {
      const std::string& err = task_errors[ei * n_seeds + si];
      if (err.empty()) continue;
      if (!joined.empty()) joined += "; ";
      joined += err;
    }
    if (!joined.empty()) {
      report.errors[ei] = joined;
      LyapunovEstimate blank;
      blank.energy = report.energies[ei];
      blank.ell = config.ell;
      report.estimates[ei] = blank;
      continue;
    }

    LyapunovEstimate merged;
    merged.energy = report.energies[ei];
    merged.steps = options.steps;
    merged.ell = config.ell;
    merged.seed = options.seeds.front();
    merged.exponents = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd var_sum = Eigen::VectorXd::Zero(d);
    for (std::size_t si = 0; si < n_seeds; ++si) {
      const LyapunovEstimate& est = raw[ei * n_seeds + si];
      merged.exponents += est.exponents;
      var_sum += est.standard_errors.cwiseProduct(est.standard_errors);
    }
    merged.exponents /= static_cast<double>(n_seeds);
    merged.standard_errors = var_sum.cwiseSqrt() / static_cast<double>(n_seeds);

    double min_gap = merged.exponents[n - 1];
    for (int i = 0; i + 1 < n; ++i)
      min_gap = std::min(min_gap, merged.exponents[i] - merged.exponents[i + 1]);
    merged.min_positive_gap = min_gap;

    bool ok = true;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < n; ++i) {
      const double gap = merged.exponents[i] - merged.exponents[i + 1];
      const double gse = std::hypot(merged.standard_errors[i],
                                    merged.standard_errors[i + 1]);
      ok = ok && gap > options.significance * gse;
      min_ratio = std::min(min_ratio, gap_ratio(gap, gse));
    }
    const double last = merged.exponents[n - 1];
    const double last_se = merged.standard_errors[n - 1];
    ok = ok && last > options.significance * last_se;
    min_ratio = std::min(min_ratio, gap_ratio(last, last_se));

    report.estimates[ei] = std::move(merged);
    report.separable[ei] = ok;
    report.min_gap_over_se[ei] = min_ratio;
  }
  return report;
}

}  // namespace lyapsep
