#ifndef LYAPSEP_INTERVAL_HPP
#define LYAPSEP_INTERVAL_HPP

#include <stdexcept>
#include <vector>

#include "lyapsep/model.hpp"

namespace lyapsep {

struct Extremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double delta = 0.0;  // (lambda_max - lambda_min) / 2
};

/// The compact energy interval [lambda_max - r_ell, lambda_min + r_ell]
/// together with its construction witnesses.
struct EnergyInterval {
  double lower = 0.0;
  double upper = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double delta = 0.0;
  double r_ell = 0.0;
  double ell_c = 0.0;
  double bg_radius = 0.0;

  double length() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
  bool contains(double e) const { return e >= lower && e <= upper; }
};

/// Raised when ell >= ell_c and the interval construction is empty; carries
/// the critical length so callers can retry with a smaller ell.
class EmptyIntervalError : public std::runtime_error {
 public:
  EmptyIntervalError(double ell, double ell_c);
  double ell_c() const { return ell_c_; }

 private:
  double ell_c_;
};

/// Extremal eigenvalues of M_omega(0) over all binary disorder patterns.
Extremes extremal_eigenvalues(const ModelConfig& config);

/// min(bg_radius, bg_radius / delta); bg_radius when delta = 0 (the spread
/// condition is vacuous).
double critical_length_from_delta(double delta, double bg_radius);

double critical_length(const ModelConfig& config);

/// Requires config.ell < critical_length(config), else EmptyIntervalError.
EnergyInterval energy_interval(const ModelConfig& config);

struct ContainmentReport {
  EnergyInterval interval;
  int grid_points = 0;
  int violations = 0;
  double max_ratio = 0.0;     // max over (E, omega) of ell * x_norm / bg_radius
  double worst_energy = 0.0;  // grid energy attaining max_ratio
};

/// Checks ell * x_norm(config, omega, E) <= bg_radius + 1e-12 for every
/// binary pattern at grid_points energies spanning the interval (endpoints
/// included; a single point means the midpoint).
ContainmentReport verify_containment(const ModelConfig& config, int grid_points);

/// Uniform grid over the interval, endpoints exact; one point = midpoint.
std::vector<double> energy_grid(const EnergyInterval& interval, int grid_points);

}  // namespace lyapsep

#endif
