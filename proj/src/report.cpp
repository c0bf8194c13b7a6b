#include "lyapsep/report.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lyapsep {

namespace {

using nlohmann::json;

const std::set<std::string> kTopLevelKeys = {
    "n",      "ell",       "couplings", "bg_radius", "site_law",
    "grid_points", "steps", "seeds",     "qr_stride", "rank_tol",
    "significance", "output", "emit_csv"};
const std::set<std::string> kSiteLawKeys = {"atoms", "probs"};

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it)
    if (known.find(it.key()) == known.end())
      throw std::invalid_argument("config: unknown key '" + where + it.key() + "'");
}

template <typename T>
T get_key(const json& object, const std::string& key, const char* type_name) {
  try {
    return object.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument("config: key '" + key + "' must be " + type_name);
  }
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_number(values[i]);
  }
  return out + "]";
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out = "[";
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(seeds[i]);
  }
  return out + "]";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string interval_csv(const EnergyInterval& interval) {
  std::string csv = "lambda_min,lambda_max,delta,ell_c,r_ell,lower,upper\n";
  csv += format_number(interval.lambda_min) + "," + format_number(interval.lambda_max) +
         "," + format_number(interval.delta) + "," + format_number(interval.ell_c) +
         "," + format_number(interval.r_ell) + "," + format_number(interval.lower) +
         "," + format_number(interval.upper) + "\n";
  return csv;
}

std::string exponents_csv(const ScanReport& report, int n) {
  std::string csv = exponents_csv_header(n) + "\n";
  for (std::size_t ei = 0; ei < report.energies.size(); ++ei) {
    const LyapunovEstimate& est = report.estimates[ei];
    csv += format_number(report.energies[ei]);
    for (int i = 0; i < 2 * n; ++i)
      csv += "," + format_number(est.exponents.size() == 2 * n ? est.exponents[i] : 0.0);
    for (int i = 0; i < 2 * n; ++i)
      csv += "," + format_number(est.standard_errors.size() == 2 * n
                                     ? est.standard_errors[i]
                                     : 0.0);
    csv += "," + std::to_string(report.lie_ranks[ei]);
    csv += std::string(",") + (report.separable[ei] ? "1" : "0");
    csv += "\n";
  }
  return csv;
}

std::string summary_text(const RunConfig& config, const ScanReport& report,
                         double wall_seconds, int exit_code) {
  const ModelConfig& m = config.model;
  std::ostringstream out;
  out << "separability scan summary\n";
  out << "model: n=" << m.n << " ell=" << format_number(m.ell)
      << " couplings=" << join_numbers(m.couplings)
      << " bg_radius=" << format_number(m.bg_radius)
      << " atoms=" << join_numbers(m.site_law.atoms)
      << " probs=" << join_numbers(m.site_law.probs) << "\n";
  out << "interval: [" << format_number(report.interval.lower) << ", "
      << format_number(report.interval.upper) << "]"
      << " lambda_min=" << format_number(report.interval.lambda_min)
      << " lambda_max=" << format_number(report.interval.lambda_max)
      << " delta=" << format_number(report.interval.delta)
      << " r_ell=" << format_number(report.interval.r_ell)
      << " ell_c=" << format_number(report.interval.ell_c) << "\n";
  out << "run: grid_points=" << config.grid_points << " steps=" << config.steps
      << " seeds=" << join_seeds(config.seeds) << " qr_stride=" << config.qr_stride
      << " rank_tol=" << format_number(config.rank_tol)
      << " significance=" << format_number(config.significance) << "\n";

  const int expected_rank = report.lie_ranks.empty() ? 0 : report.lie_ranks.front();
  int full_rank = 0;
  for (int r : report.lie_ranks)
    if (r == m.n * (2 * m.n + 1)) ++full_rank;
  out << "lie rank: " << full_rank << "/" << report.lie_ranks.size()
      << " energies at full rank " << m.n * (2 * m.n + 1)
      << " (first rank seen: " << expected_rank << ")\n";

  int separable_count = 0;
  for (bool ok : report.separable)
    if (ok) ++separable_count;
  out << "separable: " << separable_count << "/" << report.separable.size()
      << " energies\n";

  double min_gap = std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t ei = 0; ei < report.estimates.size(); ++ei) {
    if (!report.errors[ei].empty()) continue;
    min_gap = std::min(min_gap, report.estimates[ei].min_positive_gap);
    min_ratio = std::min(min_ratio, report.min_gap_over_se[ei]);
  }
  out << "min gap over scan: " << format_number(min_gap) << "\n";
  out << "min gap/SE over scan: " << format_number(min_ratio) << "\n";

  bool any_error = false;
  for (std::size_t ei = 0; ei < report.errors.size(); ++ei) {
    if (report.errors[ei].empty()) continue;
    any_error = true;
    out << "energy " << format_number(report.energies[ei])
        << " failed: " << report.errors[ei] << "\n";
  }
  if (!any_error) out << "per-energy failures: none\n";

  out << "wall time: " << format_number(wall_seconds) << " s\n";
  out << "exit status: " << exit_code << "\n";
  return out.str();
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  if (grid_points < 1) throw std::invalid_argument("config: grid_points must be positive");
  if (steps < 1) throw std::invalid_argument("config: steps must be positive");
  if (seeds.empty()) throw std::invalid_argument("config: seeds must be nonempty");
  if (qr_stride < 1) throw std::invalid_argument("config: qr_stride must be positive");
  if (!(rank_tol > 0.0)) throw std::invalid_argument("config: rank_tol must be positive");
  if (!(significance > 0.0))
    throw std::invalid_argument("config: significance must be positive");
  if (output_path.empty()) throw std::invalid_argument("config: output path must be nonempty");
}

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object())
    throw std::invalid_argument("config: top level must be a JSON object");
  reject_unknown_keys(doc, kTopLevelKeys, "");

  for (const char* required : {"n", "ell", "couplings"})
    if (!doc.contains(required))
      throw std::invalid_argument(std::string("config: missing required key '") +
                                  required + "'");

  RunConfig config;
  config.model.n = get_key<int>(doc, "n", "an integer");
  config.model.ell = get_key<double>(doc, "ell", "a number");
  config.model.couplings = get_key<std::vector<double>>(doc, "couplings", "an array of numbers");
  if (doc.contains("bg_radius"))
    config.model.bg_radius = get_key<double>(doc, "bg_radius", "a number");
  if (doc.contains("site_law")) {
    const json& law = doc.at("site_law");
    if (!law.is_object())
      throw std::invalid_argument("config: key 'site_law' must be an object");
    reject_unknown_keys(law, kSiteLawKeys, "site_law.");
    config.model.site_law.atoms =
        get_key<std::vector<double>>(law, "atoms", "an array of numbers");
    config.model.site_law.probs =
        get_key<std::vector<double>>(law, "probs", "an array of numbers");
  }
  if (doc.contains("grid_points"))
    config.grid_points = get_key<int>(doc, "grid_points", "an integer");
  if (doc.contains("steps")) config.steps = get_key<long>(doc, "steps", "an integer");
  if (doc.contains("seeds"))
    config.seeds = get_key<std::vector<std::uint64_t>>(doc, "seeds",
                                                       "an array of nonnegative integers");
  if (doc.contains("qr_stride"))
    config.qr_stride = get_key<int>(doc, "qr_stride", "an integer");
  if (doc.contains("rank_tol"))
    config.rank_tol = get_key<double>(doc, "rank_tol", "a number");
  if (doc.contains("significance"))
    config.significance = get_key<double>(doc, "significance", "a number");
  if (doc.contains("output"))
    config.output_path = get_key<std::string>(doc, "output", "a string");
  if (doc.contains("emit_csv"))
    config.emit_csv = get_key<bool>(doc, "emit_csv", "a boolean");

  config.validate();
  config.model.require_binary_support();
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("config: cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

int run(const RunConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  const std::filesystem::path out_dir(config.output_path);

  auto fail = [&](const std::string& message) {
    std::cerr << "error: " << message << "\n";
    try {
      if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
      write_text_file(out_dir / "summary.txt", "error: " + message + "\n");
    } catch (const std::exception&) {
      // The message already went to stderr; nothing else to record.
    }
    return 1;
  };

  try {
    config.validate();
    config.model.require_binary_support();

    ScanOptions options;
    options.grid_points = config.grid_points;
    options.steps = config.steps;
    options.seeds = config.seeds;
    options.qr_stride = config.qr_stride;
    options.rank_tol = config.rank_tol;
    options.significance = config.significance;

    const ScanReport report = separability_scan(config.model, options);

    std::filesystem::create_directories(out_dir);
    if (config.emit_csv) {
      write_text_file(out_dir / "interval.csv", interval_csv(report.interval));
      write_text_file(out_dir / "exponents.csv", exponents_csv(report, config.model.n));
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    const int code = report.all_separable() ? 0 : 2;
    write_text_file(out_dir / "summary.txt", summary_text(config, report, wall, code));
    return code;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return std::string(buf);
}

std::string exponents_csv_header(int n) {
  std::string header = "E";
  for (int i = 1; i <= 2 * n; ++i) header += ",gamma_" + std::to_string(i);
  for (int i = 1; i <= 2 * n; ++i) header += ",se_" + std::to_string(i);
  header += ",lie_rank,separable";
  return header;
}

}  // namespace lyapsep
