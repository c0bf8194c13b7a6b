#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "lyapsep/interval.hpp"
#include "lyapsep/model.hpp"
#include "oracles.hpp"

using namespace lyapsep;

namespace {

ModelConfig config_for(int n, std::vector<double> couplings, double ell,
                       double bg_radius = 1.0) {
  ModelConfig config;
  config.n = n;
  config.couplings = std::move(couplings);
  config.ell = ell;
  config.bg_radius = bg_radius;
  return config;
}

}  // namespace

TEST_SUITE("interval") {

TEST_CASE("extremal eigenvalues for one channel") {
  const Extremes ex = extremal_eigenvalues(config_for(1, {1.0}, 0.5));
  CHECK(ex.lambda_min == 0.0);
  CHECK(ex.lambda_max == 1.0);
  CHECK(ex.delta == 0.5);
}

TEST_CASE("extremal eigenvalues for two channels match the Jacobi oracle") {
  const ModelConfig config = config_for(2, {1.0, 1.0}, 0.5);
  const Extremes ex = extremal_eigenvalues(config);
  CHECK(std::abs(ex.lambda_min + 1.0) < 1e-12);
  CHECK(std::abs(ex.lambda_max - 2.0) < 1e-12);
  CHECK(std::abs(ex.delta - 1.5) < 1e-12);

  // Brute force over the four binary patterns with the independent solver.
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const Omega& omega : binary_omegas(2)) {
    const std::vector<double> lambda =
        oracle::jacobi_eigenvalues(build_m(config, omega, 0.0));
    if (first || lambda.front() < lo) lo = lambda.front();
    if (first || lambda.back() > hi) hi = lambda.back();
    first = false;
  }
  CHECK(std::abs(ex.lambda_min - lo) < 1e-10);
  CHECK(std::abs(ex.lambda_max - hi) < 1e-10);

  // The mixed patterns contribute the golden-ratio pair (1 +- sqrt 5)/2.
  const std::vector<double> mixed = oracle::jacobi_eigenvalues(
      build_m(config, binary_omegas(2)[1], 0.0));
  CHECK(std::abs(mixed.front() - (1.0 - std::sqrt(5.0)) / 2.0) < 1e-12);
  CHECK(std::abs(mixed.back() - (1.0 + std::sqrt(5.0)) / 2.0) < 1e-12);

  CHECK(ex.lambda_min <= ex.lambda_max);
}

TEST_CASE("extremal enumeration enforces the channel limit") {
  ModelConfig config;
  config.n = 21;
  config.couplings.assign(21, 1.0);
  CHECK_THROWS_AS(extremal_eigenvalues(config), std::length_error);
}

TEST_CASE("critical length evaluates min(bg_radius, bg_radius / delta)") {
  CHECK(std::abs(critical_length(config_for(1, {1.0}, 0.5)) - 1.0) < 1e-12);
  CHECK(std::abs(critical_length(config_for(2, {1.0, 1.0}, 0.5)) - 2.0 / 3.0) < 1e-12);

  // Degenerate spread: the delta condition is vacuous.
  CHECK(critical_length_from_delta(0.0, 2.0) == 2.0);
  CHECK_THROWS_AS(critical_length_from_delta(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(critical_length_from_delta(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("energy interval closed form for one channel") {
  const EnergyInterval interval = energy_interval(config_for(1, {1.0}, 0.5));
  CHECK(interval.r_ell == 2.0);
  CHECK(interval.lower == -1.0);
  CHECK(interval.upper == 2.0);
  CHECK(std::abs(interval.length() - 3.0) < 1e-12);
  CHECK(std::abs(interval.length() - (2.0 * interval.r_ell - 2.0 * interval.delta)) <
        1e-12);

  const EnergyInterval wider = energy_interval(config_for(1, {1.0}, 0.25));
  CHECK(wider.lower == -3.0);
  CHECK(wider.upper == 4.0);
  CHECK(std::abs(wider.length() - 7.0) < 1e-12);
}

TEST_CASE("interval construction fails beyond the critical length") {
  const ModelConfig config = config_for(1, {1.0}, 1.5);
  CHECK_THROWS_AS(energy_interval(config), EmptyIntervalError);
  try {
    energy_interval(config);
  } catch (const EmptyIntervalError& e) {
    CHECK(e.ell_c() == 1.0);
    CHECK(std::string(e.what()).find("ell_c=") != std::string::npos);
  }
}

TEST_CASE("interval midpoint and length identities hold at several sizes") {
  for (int n : {1, 2, 3}) {
    std::vector<double> couplings(static_cast<std::size_t>(n), 1.0);
    ModelConfig config = config_for(n, couplings, 0.1);
    config.ell = 0.5 * critical_length(config);
    const EnergyInterval interval = energy_interval(config);

    CHECK(std::abs(interval.length() -
                   (2.0 * interval.r_ell - 2.0 * interval.delta)) < 1e-12);
    CHECK(std::abs(interval.midpoint() -
                   0.5 * (interval.lambda_min + interval.lambda_max)) < 1e-12);
    CHECK(interval.length() > 0.0);
  }
}

TEST_CASE("intervals grow as ell shrinks") {
  ModelConfig config = config_for(2, {1.0, -1.5}, 0.1);
  const double ell_c = critical_length(config);
  double previous_lower = 0.0, previous_upper = 0.0;
  bool first = true;
  for (double fraction : {0.9, 0.5, 0.25, 0.1}) {
    config.ell = fraction * ell_c;
    const EnergyInterval interval = energy_interval(config);
    if (!first) {
      CHECK(interval.lower < previous_lower);
      CHECK(interval.upper > previous_upper);
    }
    previous_lower = interval.lower;
    previous_upper = interval.upper;
    first = false;
  }
}

TEST_CASE("doubling bg_radius doubles r_ell and ell_c only") {
  const ModelConfig base = config_for(2, {1.0, 1.0}, 0.25, 1.0);
  const ModelConfig doubled = config_for(2, {1.0, 1.0}, 0.25, 2.0);
  const EnergyInterval a = energy_interval(base);
  const EnergyInterval b = energy_interval(doubled);
  CHECK(b.r_ell == 2.0 * a.r_ell);
  CHECK(b.ell_c == 2.0 * a.ell_c);
  CHECK(b.lambda_min == a.lambda_min);
  CHECK(b.lambda_max == a.lambda_max);
  CHECK(b.delta == a.delta);
}

TEST_CASE("containment holds on the grid and fails just outside") {
  const ModelConfig config = config_for(1, {1.0}, 0.5);
  const ContainmentReport report = verify_containment(config, 101);
  CHECK(report.violations == 0);
  CHECK(report.max_ratio <= 1.0 + 1e-12);
  CHECK(report.grid_points == 101);

  // Just past the upper endpoint some pattern exceeds the bound.
  const EnergyInterval interval = energy_interval(config);
  const double outside = interval.upper + 0.01 * interval.r_ell;
  double worst = 0.0;
  for (const Omega& omega : binary_omegas(config.n))
    worst = std::max(worst, config.ell * x_norm(config, omega, outside));
  CHECK(worst > config.bg_radius);
}

TEST_CASE("single grid point means the midpoint") {
  const ModelConfig config = config_for(1, {1.0}, 0.5);
  const ContainmentReport report = verify_containment(config, 1);
  CHECK(report.violations == 0);
  CHECK(report.worst_energy == energy_interval(config).midpoint());

  const std::vector<double> grid = energy_grid(energy_interval(config), 1);
  CHECK(grid.size() == 1);
  CHECK(grid[0] == 0.5);

  CHECK_THROWS_AS(verify_containment(config, 0), std::invalid_argument);
}

TEST_CASE("energy grid hits both endpoints exactly") {
  const EnergyInterval interval = energy_interval(config_for(2, {1.0, 1.0}, 0.5));
  const std::vector<double> grid = energy_grid(interval, 21);
  CHECK(grid.size() == 21);
  CHECK(grid.front() == interval.lower);
  CHECK(grid.back() == interval.upper);
  for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
}

}  // TEST_SUITE
