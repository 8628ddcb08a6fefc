#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "stopping/distribution.hpp"
#include "stopping/error.hpp"
#include "stopping/io.hpp"
#include "stopping/policy.hpp"

using namespace stopping;

namespace {

errc thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a stopping::Error");
  return errc::invalid_argument;  // unreachable
}

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr combined
};

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("RSTOP_BIN");
  REQUIRE(bin != nullptr);
  const std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0)
    r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const char* kFrechetJson = "{\"family\":\"frechet\",\"shape\":2.197,\"scale\":0.613}";
const char* kExpJson = "{\"family\":\"exponential\",\"rate\":1.0}";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string tok;
  std::istringstream in(line);
  while (std::getline(in, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

TEST_CASE("parse_distribution: every family from inline JSON") {
  CHECK(parse_distribution(kExpJson)->survival(1.0) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(parse_distribution(kFrechetJson)->mean() ==
        doctest::Approx(0.9996651239).epsilon(1e-8));
  CHECK(parse_distribution(
            "{\"family\":\"pointmasses\",\"atoms\":[[1,0.5],[2,0.5]]}")
            ->mean() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(parse_distribution(
            "{\"family\":\"truncated_pareto\",\"lo\":0.3,\"top\":2.0}")
            ->survival(1.0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(parse_distribution(
            "{\"family\":\"scaled\",\"factor\":2.0,"
            "\"base\":{\"family\":\"exponential\",\"rate\":1.0}}")
            ->mean() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("parse_distribution: file input") {
  const std::string path = "/tmp/rstop_test_dist.json";
  {
    std::ofstream out(path);
    out << kFrechetJson << "\n";
  }
  CHECK(parse_distribution(path)->mean() ==
        doctest::Approx(0.9996651239).epsilon(1e-8));
}

TEST_CASE("parse_distribution: rejection paths") {
  CHECK(thrown_code([] { parse_distribution("{oops"); }) ==
        errc::parse_error);
  CHECK(thrown_code([] {
          parse_distribution("{\"family\":\"mystery\",\"rate\":1}");
        }) == errc::parse_error);
  CHECK(thrown_code([] {
          parse_distribution("{\"family\":\"exponential\"}");
        }) == errc::parse_error);
  CHECK(thrown_code([] {
          parse_distribution("{\"family\":\"exponential\",\"rate\":\"x\"}");
        }) == errc::parse_error);
  CHECK(thrown_code([] {
          parse_distribution("/tmp/rstop_no_such_file.json");
        }) == errc::parse_error);
  // Well-formed JSON, invalid parameter: library validation, not parsing.
  CHECK(thrown_code([] {
          parse_distribution("{\"family\":\"exponential\",\"rate\":-1}");
        }) == errc::invalid_argument);
}

TEST_CASE("parse_policy: all kinds, validation included") {
  const ThresholdPolicy det =
      parse_policy("{\"kind\":\"deterministic\",\"t\":1.0}");
  CHECK(std::get<Deterministic>(det).t == 1.0);

  const ThresholdPolicy fin = parse_policy(
      "{\"kind\":\"finite\",\"thresholds\":[0.9,1.0],\"probs\":[0.5,0.5]}");
  CHECK(std::get<FiniteRandom>(fin).thresholds.size() == 2);

  const ThresholdPolicy uni =
      parse_policy("{\"kind\":\"uniform\",\"lo\":0.4,\"hi\":0.6}");
  CHECK(std::get<UniformRandom>(uni).hi == 0.6);

  CHECK(thrown_code([] { parse_policy("{\"kind\":\"psychic\"}"); }) ==
        errc::parse_error);
  CHECK(thrown_code([] {
          parse_policy("{\"kind\":\"finite\",\"thresholds\":[1,2],"
                       "\"probs\":[0.5,0.4]}");
        }) == errc::invalid_argument);
  CHECK(thrown_code([] {
          parse_policy("{\"kind\":\"uniform\",\"lo\":0.9,\"hi\":0.6}");
        }) == errc::invalid_argument);
}

TEST_CASE("parse_n_list") {
  CHECK(parse_n_list("2,4,8") == std::vector<int>{2, 4, 8});
  CHECK(parse_n_list("5") == std::vector<int>{5});
  CHECK(thrown_code([] { parse_n_list("2,x"); }) == errc::parse_error);
  CHECK(thrown_code([] { parse_n_list("2,3junk"); }) == errc::parse_error);
  CHECK(thrown_code([] { parse_n_list("0"); }) == errc::invalid_argument);
  CHECK(thrown_code([] { parse_n_list(""); }) == errc::invalid_argument);
  CHECK(thrown_code([] { parse_n_list("4,2"); }) == errc::invalid_argument);
  CHECK(thrown_code([] { parse_n_list("3,3"); }) == errc::invalid_argument);
}

TEST_CASE("format_g9: nine significant digits, no trailing cruft") {
  CHECK(format_g9(0.1) == "0.1");
  CHECK(format_g9(1.0 / 3.0) == "0.333333333");
  CHECK(format_g9(2.0) == "2");
}

TEST_CASE("compute_bounds_rows: per-row completion semantics") {
  const DistPtr exp1 = parse_distribution(kExpJson);
  const auto rows = compute_bounds_rows(exp1, {2, 4}, Scaling::none);
  REQUIRE(rows.size() == 2);

  const BoundsRow& r2 = rows[0];
  CHECK(r2.n == 2);
  REQUIRE(r2.lower_det.has_value());
  CHECK(*r2.lower_det == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
  CHECK_FALSE(r2.lower_uniform.has_value());
  CHECK_FALSE(r2.const_lower_uniform.has_value());
  CHECK_FALSE(r2.complete);
  bool found = false;
  for (const auto& s : r2.issues)
    found = found || s == "lower_uniform:precondition-failed";
  CHECK(found);
  REQUIRE(r2.upper_partition.has_value());
  CHECK(*r2.upper_partition == doctest::Approx(2.14619322).epsilon(1e-5));
  REQUIRE(r2.const_upper_partition.has_value());
  CHECK(*r2.const_upper_partition ==
        doctest::Approx(4.0 * (2.14619322 - std::exp(-1.0))).epsilon(1e-4));

  const BoundsRow& r4 = rows[1];
  CHECK(r4.n == 4);
  CHECK(r4.complete);
  REQUIRE(r4.lower_uniform.has_value());
  REQUIRE(r4.const_lower_uniform.has_value());
  CHECK(*r4.const_lower_uniform > 0.0);
  CHECK(r4.issues.empty());
}

TEST_CASE("sqrt_n scaling multiplies bounds, leaves constants alone") {
  const DistPtr fr = parse_distribution(kFrechetJson);
  const auto base = compute_bounds_rows(fr, {4}, Scaling::none);
  const auto scaled = compute_bounds_rows(fr, {4}, Scaling::sqrt_n);
  REQUIRE(base.size() == 1);
  REQUIRE(scaled.size() == 1);
  // sqrt(4) = 2 exactly, and both runs are deterministic.
  CHECK(*scaled[0].lower_det == 2.0 * *base[0].lower_det);
  CHECK(*scaled[0].lower_uniform == 2.0 * *base[0].lower_uniform);
  CHECK(*scaled[0].upper_universal == 2.0 * *base[0].upper_universal);
  CHECK(*scaled[0].upper_partition == 2.0 * *base[0].upper_partition);
  // Rescaled constants come from the unscaled values in both modes.
  CHECK(*scaled[0].const_lower_uniform == *base[0].const_lower_uniform);
  CHECK(*scaled[0].const_upper_partition == *base[0].const_upper_partition);
}

TEST_CASE("bounds_csv: header, nan cells, bit stability") {
  const DistPtr exp1 = parse_distribution(kExpJson);
  const std::string csv = bounds_csv(compute_bounds_rows(exp1, {2},
                                                         Scaling::none));
  std::istringstream in(csv);
  std::string header, row;
  REQUIRE(std::getline(in, header));
  CHECK(header ==
        "n,lower_det,lower_uniform,upper_universal,upper_partition,"
        "const_lower_uniform,const_upper_partition,status");
  REQUIRE(std::getline(in, row));
  const auto cells = split(row, ',');
  REQUIRE(cells.size() == 8);
  CHECK(cells[0] == "2");
  CHECK(cells[2] == "nan");
  CHECK(cells[5] == "nan");
  CHECK(cells[7] == "lower_uniform:precondition-failed");

  const std::string again = bounds_csv(compute_bounds_rows(exp1, {2},
                                                           Scaling::none));
  CHECK(csv == again);
}

TEST_CASE("bounds_json: nulls for missing fields, parseable") {
  const DistPtr exp1 = parse_distribution(kExpJson);
  const std::string text = bounds_json(compute_bounds_rows(exp1, {2, 4},
                                                           Scaling::none));
  const nlohmann::json j = nlohmann::json::parse(text);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0]["n"] == 2);
  CHECK(j[0]["lower_uniform"].is_null());
  CHECK(j[0]["status"] == "lower_uniform:precondition-failed");
  CHECK(j[1]["n"] == 4);
  CHECK(j[1]["status"] == "ok");
  CHECK(j[1]["lower_uniform"].get<double>() > std::exp(-1.0));
}

TEST_CASE("cli: monopoly subcommand") {
  const CliResult r = run_cli(std::string("monopoly --dist '") +
                              kFrechetJson + "'");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["p_star"].get<double>() ==
        doctest::Approx(0.5240916043).epsilon(2e-4));
  CHECK(j["pi_star"].get<double>() ==
        doctest::Approx(0.3962602449).epsilon(1e-6));
  CHECK(j["c"].get<double>() == doctest::Approx(0.2082437680).epsilon(1e-3));
  CHECK(j["unique"].get<bool>());
}

TEST_CASE("cli: bounds with sqrt_n scaling, complete table exits 0") {
  const CliResult r = run_cli(std::string("bounds --dist '") + kFrechetJson +
                              "' --n 2,10,45 --scaling sqrt_n --format json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  REQUIRE(j.size() == 3);
  CHECK(j[0]["lower_uniform"].get<double>() ==
        doctest::Approx(0.6942).epsilon(2e-3 / 0.6942));
  CHECK(j[0]["upper_partition"].get<double>() ==
        doctest::Approx(1.9776).epsilon(5e-3 / 1.9776));
  CHECK(j[2]["lower_uniform"].get<double>() ==
        doctest::Approx(2.6593).epsilon(3e-3 / 2.6593));
  CHECK(j[2]["upper_partition"].get<double>() ==
        doctest::Approx(2.6710).epsilon(5e-3 / 2.6710));
  for (const auto& row : j) CHECK(row["status"] == "ok");
}

TEST_CASE("cli: bounds with an incomplete row exits 2") {
  const CliResult r = run_cli(std::string("bounds --dist '") + kExpJson +
                              "' --n 2 --format csv");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("lower_uniform:precondition-failed") !=
        std::string::npos);
  CHECK(r.output.find(",nan,") != std::string::npos);
}

TEST_CASE("cli: prophet subcommand") {
  const CliResult r = run_cli("prophet --mu 1 --sigma2 3");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["z"].get<double>() == doctest::Approx(0.20535153).epsilon(1e-6));
  CHECK(std::abs(j["residual"].get<double>()) <= 1e-10);
  CHECK(j["beta_used"].get<double>() > 1.0);
  CHECK(j["explicit_bound"].get<double>() <= j["z"].get<double>() + 1e-10);
}

TEST_CASE("cli: simulate agrees with the analytic value") {
  const CliResult r = run_cli(
      std::string("simulate --dist '") + kExpJson +
      "' --policy '{\"kind\":\"deterministic\",\"t\":1.0}'"
      " --n 3 --samples 200000 --seed 7");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["family"] == "deterministic-threshold");
  CHECK(j["analytic"].get<double>() ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
  CHECK(std::abs(j["z_score"].get<double>()) <= 4.0);
  CHECK(j["samples"].get<long long>() == 200000);
}

TEST_CASE("cli: simulate needs at least two offers") {
  const CliResult r = run_cli(
      std::string("simulate --dist '") + kExpJson +
      "' --policy '{\"kind\":\"deterministic\",\"t\":1.0}' --n 1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("no-worst-case-family") != std::string::npos);
}

TEST_CASE("cli: figure2 writes the fixed 101-row table") {
  const std::string path = "/tmp/rstop_test_figure2.csv";
  const CliResult r = run_cli("figure2 --format csv --out " + path);
  REQUIRE(r.exit_code == 0);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  REQUIRE(lines.size() == 102);  // header + 101 rows

  const auto first = split(lines[1], ',');
  REQUIRE(first.size() == 8);
  CHECK(first[0] == "2");
  CHECK(std::stod(first[2]) == doctest::Approx(0.6942).epsilon(2e-3 / 0.6942));
  CHECK(std::stod(first[4]) == doctest::Approx(1.9776).epsilon(5e-3 / 1.9776));

  const auto last = split(lines[101], ',');
  REQUIRE(last.size() == 8);
  CHECK(last[0] == "900");
  // Rescaled constants approach (3/2)C and ~2 pi^2 C.
  CHECK(std::stod(last[5]) == doctest::Approx(0.31269).epsilon(0.01));
  CHECK(std::stod(last[6]) == doctest::Approx(4.0973).epsilon(0.02));
  CHECK(last[7] == "ok");
}

TEST_CASE("cli: malformed invocations fail loudly") {
  CHECK(run_cli("bounds --n 2").exit_code != 0);  // missing --dist
  CHECK(run_cli("frobnicate").exit_code != 0);    // unknown subcommand
  const CliResult bad = run_cli(
      "monopoly --dist '{\"family\":\"mystery\"}'");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("parse-error") != std::string::npos);
}
