#include "lyapsep/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace lyapsep {

namespace {
constexpr double kContainmentSlack = 1e-12;

std::string empty_interval_message(double ell, double ell_c) {
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "energy interval is empty: ell=%.12g >= ell_c=%.12g (retry with a smaller ell)",
                ell, ell_c);
  return std::string(buf);
}
}  // namespace

EmptyIntervalError::EmptyIntervalError(double ell, double ell_c)
    : std::runtime_error(empty_interval_message(ell, ell_c)), ell_c_(ell_c) {}

Extremes extremal_eigenvalues(const ModelConfig& config) {
  config.validate();
  config.require_binary_support();

  Extremes ex;
  bool first = true;
  for (const Omega& omega : binary_omegas(config.n)) {
    const Eigen::VectorXd lambda = spectrum_m(config, omega);
    const double lo = lambda.minCoeff();
    const double hi = lambda.maxCoeff();
    if (first || lo < ex.lambda_min) ex.lambda_min = lo;
    if (first || hi > ex.lambda_max) ex.lambda_max = hi;
    first = false;
  }
  ex.delta = 0.5 * (ex.lambda_max - ex.lambda_min);
  return ex;
}

double critical_length_from_delta(double delta, double bg_radius) {
  if (!std::isfinite(delta) || delta < 0.0)
    throw std::invalid_argument("critical_length: delta must be nonnegative");
  if (!std::isfinite(bg_radius) || bg_radius <= 0.0)
    throw std::invalid_argument("critical_length: bg_radius must be positive");
  // ell <= bg_radius keeps r_ell >= 1; ell < bg_radius/delta keeps delta < r_ell.
  if (delta == 0.0) return bg_radius;
  return std::min(bg_radius, bg_radius / delta);
}

double critical_length(const ModelConfig& config) {
  return critical_length_from_delta(extremal_eigenvalues(config).delta,
                                    config.bg_radius);
}

EnergyInterval energy_interval(const ModelConfig& config) {
  const Extremes ex = extremal_eigenvalues(config);
  const double ell_c = critical_length_from_delta(ex.delta, config.bg_radius);
  if (!(config.ell < ell_c)) throw EmptyIntervalError(config.ell, ell_c);

  EnergyInterval interval;
  interval.lambda_min = ex.lambda_min;
  interval.lambda_max = ex.lambda_max;
  interval.delta = ex.delta;
  interval.r_ell = config.bg_radius / config.ell;
  interval.ell_c = ell_c;
  interval.bg_radius = config.bg_radius;
  interval.lower = ex.lambda_max - interval.r_ell;
  interval.upper = ex.lambda_min + interval.r_ell;
  return interval;
}

ContainmentReport verify_containment(const ModelConfig& config, int grid_points) {
  if (grid_points < 1)
    throw std::invalid_argument("verify_containment: grid_points must be positive");

  ContainmentReport report;
  report.interval = energy_interval(config);
  report.grid_points = grid_points;

  const std::vector<Omega> patterns = binary_omegas(config.n);
  for (double energy : energy_grid(report.interval, grid_points)) {
    for (const Omega& omega : patterns) {
      const double scaled = config.ell * x_norm(config, omega, energy);
      const double ratio = scaled / config.bg_radius;
      if (ratio > report.max_ratio) {
        report.max_ratio = ratio;
        report.worst_energy = energy;
      }
      if (scaled > config.bg_radius + kContainmentSlack) ++report.violations;
    }
  }
  return report;
}

std::vector<double> energy_grid(const EnergyInterval& interval, int grid_points) {
  if (grid_points < 1)
    throw std::invalid_argument("energy_grid: grid_points must be positive");
  if (grid_points == 1) return {interval.midpoint()};
  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  const double step = interval.length() / (grid_points - 1);
  for (int k = 0; k < grid_points; ++k) grid[static_cast<std::size_t>(k)] = interval.lower + k * step;
  grid.front() = interval.lower;
  grid.back() = interval.upper;
  return grid;
}

}  // namespace lyapsep
