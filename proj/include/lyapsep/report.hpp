#ifndef LYAPSEP_REPORT_HPP
#define LYAPSEP_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lyapsep/lyapunov.hpp"
#include "lyapsep/model.hpp"

namespace lyapsep {

/// Everything one batch run needs: the model plus scan and output knobs.
struct RunConfig {
  ModelConfig model;
  int grid_points = 21;
  long steps = 1000000;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  int qr_stride = 1;
  double rank_tol = 1e-8;
  double significance = 3.0;
  std::string output_path = ".";
  bool emit_csv = true;

  void validate() const;
};

/// Parses the JSON run configuration. Unknown keys are parse errors naming
/// the key; constraint violations (zero coupling, ell <= 0, site law missing
/// the atoms 0 or 1) are validation errors.
RunConfig parse_config(const std::string& json_text);

RunConfig load_config_file(const std::string& path);

/// Executes the scan and writes interval.csv, exponents.csv (unless
/// emit_csv is off) and summary.txt under output_path.
/// Returns 0 when every grid energy is separable, 2 when any verdict is
/// inconclusive, 1 on error (the message also lands in summary.txt).
int run(const RunConfig& config);

/// Fixed numeric formatting for all CSV output: 12 significant digits,
/// '.' decimal separator.
std::string format_number(double value);

/// Header of exponents.csv for channel count n:
/// E,gamma_1..gamma_2n,se_1..se_2n,lie_rank,separable
std::string exponents_csv_header(int n);

}  // namespace lyapsep

#endif
