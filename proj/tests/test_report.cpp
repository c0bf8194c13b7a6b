#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "lyapsep/report.hpp"

using namespace lyapsep;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

RunConfig small_run_config(const std::string& out_name) {
  RunConfig config;
  config.model.n = 1;
  config.model.ell = 0.5;
  config.model.couplings = {1.0};
  config.grid_points = 3;
  config.steps = 5000;
  config.seeds = {7};
  config.output_path = fresh_dir(out_name).string();
  return config;
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("minimal config document fills the documented defaults") {
  const RunConfig config =
      parse_config(R"({"n": 1, "ell": 0.5, "couplings": [1], "bg_radius": 1})");
  CHECK(config.model.n == 1);
  CHECK(config.model.ell == 0.5);
  CHECK(config.model.bg_radius == 1.0);
  CHECK(config.model.site_law.atoms == std::vector<double>{0.0, 1.0});
  CHECK(config.steps == 1000000);
  CHECK(config.grid_points == 21);
  CHECK(config.qr_stride == 1);
  CHECK(config.rank_tol == 1e-8);
  CHECK(config.significance == 3.0);
  CHECK(config.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(config.emit_csv);
}

TEST_CASE("zero couplings are rejected with a clear message") {
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"n": 1, "ell": 0.5, "couplings": [0]})"),
      "model: coupling must be nonzero", std::invalid_argument);
}

TEST_CASE("a site law without the atom 1 violates the support requirement") {
  try {
    parse_config(
        R"({"n": 1, "ell": 0.5, "couplings": [1],
            "site_law": {"atoms": [0], "probs": [1.0]}})");
    FAIL("expected validation error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("support") != std::string::npos);
  }
}

TEST_CASE("unknown keys are named in the parse error") {
  try {
    parse_config(R"({"n": 1, "ell": 0.5, "couplings": [1], "stepz": 10})");
    FAIL("expected parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("stepz") != std::string::npos);
  }
}

TEST_CASE("wrongly typed keys are named in the parse error") {
  try {
    parse_config(R"({"n": 1, "ell": 0.5, "couplings": [1], "steps": "many"})");
    FAIL("expected parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("steps") != std::string::npos);
  }
}

TEST_CASE("missing required keys and malformed JSON are rejected") {
  CHECK_THROWS_AS(parse_config(R"({"ell": 0.5, "couplings": [1]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[1, 2, 3]"), std::invalid_argument);
}

TEST_CASE("number formatting is fixed at twelve significant digits") {
  CHECK(format_number(2.0 / 3.0) == "0.666666666667");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-1.5) == "-1.5");
  CHECK(format_number(1e-8) == "1e-08");
}

TEST_CASE("exponents csv header") {
  CHECK(exponents_csv_header(1) == "E,gamma_1,gamma_2,se_1,se_2,lie_rank,separable");
  CHECK(exponents_csv_header(2) ==
        "E,gamma_1,gamma_2,gamma_3,gamma_4,se_1,se_2,se_3,se_4,lie_rank,separable");
}

TEST_CASE("run writes all artifacts and exits zero on a separable scan") {
  const RunConfig config = small_run_config("lyapsep_test_run");
  CHECK(run(config) == 0);

  const fs::path dir(config.output_path);
  CHECK(fs::exists(dir / "interval.csv"));
  CHECK(fs::exists(dir / "exponents.csv"));
  CHECK(fs::exists(dir / "summary.txt"));

  const std::string interval = slurp(dir / "interval.csv");
  CHECK(interval.rfind("lambda_min,lambda_max,delta,ell_c,r_ell,lower,upper\n", 0) == 0);

  std::istringstream exponents(slurp(dir / "exponents.csv"));
  std::string line;
  std::getline(exponents, line);
  CHECK(line == exponents_csv_header(1));
  int rows = 0;
  while (std::getline(exponents, line))
    if (!line.empty()) ++rows;
  CHECK(rows == config.grid_points);

  const std::string summary = slurp(dir / "summary.txt");
  CHECK(summary.find("separable: 3/3") != std::string::npos);
  CHECK(summary.find("exit status: 0") != std::string::npos);
}

TEST_CASE("a full-width grid run stays separable for one channel") {
  RunConfig config = small_run_config("lyapsep_test_grid21");
  config.grid_points = 21;
  config.steps = 20000;
  config.seeds = {1, 2, 3};
  CHECK(run(config) == 0);

  std::istringstream exponents(
      slurp(fs::path(config.output_path) / "exponents.csv"));
  std::string line;
  std::getline(exponents, line);
  int rows = 0;
  while (std::getline(exponents, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 21);
}

TEST_CASE("identical configurations produce byte-identical csv output") {
  RunConfig first = small_run_config("lyapsep_test_repro_a");
  RunConfig second = small_run_config("lyapsep_test_repro_b");
  second.seeds = first.seeds;
  CHECK(run(first) == 0);
  CHECK(run(second) == 0);
  CHECK(slurp(fs::path(first.output_path) / "exponents.csv") ==
        slurp(fs::path(second.output_path) / "exponents.csv"));
  CHECK(slurp(fs::path(first.output_path) / "interval.csv") ==
        slurp(fs::path(second.output_path) / "interval.csv"));
}

TEST_CASE("emit_csv off leaves only the summary") {
  RunConfig config = small_run_config("lyapsep_test_nocsv");
  config.emit_csv = false;
  CHECK(run(config) == 0);
  const fs::path dir(config.output_path);
  CHECK_FALSE(fs::exists(dir / "interval.csv"));
  CHECK_FALSE(fs::exists(dir / "exponents.csv"));
  CHECK(fs::exists(dir / "summary.txt"));
}

TEST_CASE("an over-critical ell exits one and reports the critical length") {
  RunConfig config = small_run_config("lyapsep_test_empty");
  config.model.n = 2;
  config.model.couplings = {1.0, 1.0};
  config.model.ell = 0.9;  // ell_c = 2/3
  CHECK(run(config) == 1);
  const std::string summary = slurp(fs::path(config.output_path) / "summary.txt");
  CHECK(summary.find("ell_c=0.666") != std::string::npos);
}

TEST_CASE("inconclusive verdicts exit two") {
  RunConfig config = small_run_config("lyapsep_test_inconclusive");
  config.significance = 1e9;
  CHECK(run(config) == 2);
  const std::string summary = slurp(fs::path(config.output_path) / "summary.txt");
  CHECK(summary.find("separable: 0/3") != std::string::npos);
}

TEST_CASE("run config validation") {
  RunConfig config = small_run_config("lyapsep_test_validate");
  config.seeds.clear();
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config = small_run_config("lyapsep_test_validate");
  config.grid_points = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("config files load through the same parser") {
  const fs::path dir = fresh_dir("lyapsep_test_cfgfile");
  fs::create_directories(dir);
  const fs::path file = dir / "run.json";
  {
    std::ofstream out(file);
    out << R"({"n": 2, "ell": 0.25, "couplings": [1, -2], "steps": 777})";
  }
  const RunConfig config = load_config_file(file.string());
  CHECK(config.model.n == 2);
  CHECK(config.model.couplings == std::vector<double>{1.0, -2.0});
  CHECK(config.steps == 777);

  CHECK_THROWS_AS(load_config_file((dir / "missing.json").string()),
                  std::runtime_error);
}

}  // TEST_SUITE
