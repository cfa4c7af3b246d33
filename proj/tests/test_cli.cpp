#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "qladder/run.hpp"

using namespace qladder;
using nlohmann::json;

namespace {

#ifndef QLADDER_CLI_PATH
#error "QLADDER_CLI_PATH must point at the command-line binary"
#endif

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const std::string& log) {
  const std::string cmd =
      std::string(QLADDER_CLI_PATH) + " " + args + " >" + log + " 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

std::string write_config(const std::string& path, const json& j) {
  std::ofstream f(path);
  f << j.dump(2);
  return path;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

TEST_CASE("config parsing rejects malformed inputs") {
  json bad = {{"system", {{"family", "krawtchouk"}, {"N", 4}, {"epsilon", 0.0}}},
              {"time", {{"start", 2.0}, {"stop", 1.0}}}};
  CHECK_THROWS_AS(cli::parse_run_config(bad), cli::ConfigError);

  json nofam = json::object();
  CHECK_THROWS_AS(cli::build_system(nofam), cli::ConfigError);
  json unknown = {{"family", "pollaczek"}};
  CHECK_THROWS_AS(cli::build_system(unknown), cli::ConfigError);
  json badparam = {{"family", "jacobi"}, {"alpha", -2.0}, {"beta", 0.0}, {"n_max", 5}};
  CHECK_THROWS_AS(cli::build_system(badparam), cli::ConfigError);
  json badmethod = {{"method", "magic"}};
  CHECK_THROWS_AS(cli::parse_run_config(badmethod), cli::ConfigError);
}

TEST_CASE("build_system constructs every family") {
  CHECK(cli::build_system({{"family", "krawtchouk"}, {"N", 3}, {"epsilon", 0.5}})
            .ladder->closed);
  CHECK(cli::build_system({{"family", "jacobi"},
                           {"alpha", 0.0},
                           {"beta", 0.0},
                           {"n_max", 10}})
            .ladder.has_value());
  CHECK(cli::build_system({{"family", "gegenbauer"}, {"lambda", 1.0}, {"n_max", 6}})
            .ladder->couplings[0] == doctest::Approx(1.0));
  CHECK(cli::build_system(
            {{"family", "jacobi-antisymmetric"}, {"alpha", 0.5}, {"n_max", 6}})
            .ladder.has_value());
  CHECK(cli::build_system(
            {{"family", "christoffel-legendre"}, {"b", 1.0}, {"n_max", 6}})
            .ladder.has_value());
  CHECK(cli::build_system(
            {{"family", "legendre-function"}, {"lambda", -6.0}, {"N", 5}})
            .ladder->closed);
  CHECK(cli::build_system({{"family", "custom"},
                           {"couplings", {1.0, 1.0}},
                           {"detunings", {0.0, 0.0}},
                           {"closed", true}})
            .ladder.has_value());
  CHECK(cli::build_system({{"family", "degenerate-krawtchouk"},
                           {"N", 2},
                           {"M", 1},
                           {"omega", 1.0},
                           {"omega_prime", 0.5}})
            .degenerate.has_value());
}

TEST_CASE("simulate writes a well-formed CSV trajectory") {
  json cfg = {{"system", {{"family", "krawtchouk"}, {"N", 4}, {"epsilon", 0.0}}},
              {"time", {{"start", 0.0}, {"stop", M_PI}, {"num_points", 101}}},
              {"method", "analytic"},
              {"output", {{"path", "sim_test.csv"}}}};
  std::ostringstream diag;
  REQUIRE(cli::run_simulate(cfg, diag) == 0);

  const std::string text = slurp("sim_test.csv");
  CHECK(text.find('\r') == std::string::npos);
  auto lines = split(text, '\n');
  REQUIRE(lines.size() >= 102);
  CHECK(lines[0] == "t,rho_0,rho_1,rho_2,rho_3,rho_4,mean_n,norm");

  auto first = split(lines[1], ',');
  REQUIRE(first.size() == 8);
  CHECK(std::stod(first[0]) == 0.0);
  CHECK(std::stod(first[1]) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::stod(first[6]) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(std::stod(first[7]) == doctest::Approx(1.0).epsilon(1e-15));

  // full inversion at t = (pi/2) sqrt(4)
  auto last = split(lines[101], ',');
  REQUIRE(last.size() == 8);
  CHECK(std::stod(last[5]) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::stod(last[6]) == doctest::Approx(4.0).epsilon(1e-9));

  // norm column is the row sum at full precision
  for (std::size_t li = 1; li <= 101; ++li) {
    auto row = split(lines[li], ',');
    double s = 0.0;
    for (int n = 1; n <= 5; ++n) s += std::stod(row[n]);
    CHECK(std::abs(s - std::stod(row[7])) < 1e-14);
  }

  // byte-identical on reruns
  json cfg2 = cfg;
  cfg2["output"]["path"] = "sim_test2.csv";
  REQUIRE(cli::run_simulate(cfg2, diag) == 0);
  CHECK(slurp("sim_test2.csv") == text);
  std::remove("sim_test.csv");
  std::remove("sim_test2.csv");
}

TEST_CASE("subprocess: families listing") {
  REQUIRE(run_cli("families", "cli_fam.log") == 0);
  const std::string out = slurp("cli_fam.log");
  for (const char* fam :
       {"krawtchouk", "jacobi", "jacobi-antisymmetric", "gegenbauer",
        "christoffel-legendre", "legendre-function", "custom",
        "degenerate-krawtchouk"})
    CHECK(out.find(fam) != std::string::npos);
  std::remove("cli_fam.log");
}

TEST_CASE("subprocess: unknown family exits 2 and names the options") {
  write_config("cli_bad.json",
               {{"system", {{"family", "pollaczek"}, {"n_max", 4}}}});
  CHECK(run_cli("simulate --config cli_bad.json", "cli_bad.log") == 2);
  const std::string out = slurp("cli_bad.log");
  CHECK(out.find("pollaczek") != std::string::npos);
  CHECK(out.find("krawtchouk") != std::string::npos);
  CHECK(run_cli("simulate --config does_not_exist.json", "cli_bad.log") == 2);
  CHECK(run_cli("simulate", "cli_bad.log") == 2);
  std::remove("cli_bad.json");
  std::remove("cli_bad.log");
}

TEST_CASE("subprocess: verify passes at default thresholds, fails at absurd ones") {
  json cfg = {{"system", {{"family", "krawtchouk"}, {"N", 5}, {"epsilon", 0.3}}},
              {"time", {{"start", 0.0}, {"stop", 6.0}, {"num_points", 61}}},
              {"output", {{"path", "cli_verify.json"}}}};
  write_config("cli_verify_cfg.json", cfg);
  CHECK(run_cli("verify --config cli_verify_cfg.json", "cli_verify.log") == 0);
  auto report = json::parse(slurp("cli_verify.json"));
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("checks").contains("analytic_vs_oracle.max_amp_residual"));

  cfg["thresholds"] = {{"max_pop_residual", 1e-300},
                       {"max_amp_residual", 1e-300},
                       {"norm_drift", 1e-300}};
  write_config("cli_verify_cfg.json", cfg);
  CHECK(run_cli("verify --config cli_verify_cfg.json", "cli_verify.log") == 1);
  std::remove("cli_verify_cfg.json");
  std::remove("cli_verify.json");
  std::remove("cli_verify.log");
}

TEST_CASE("subprocess: spectral decomposition output") {
  {
    json cfg = {{"system",
                 {{"family", "custom"},
                  {"couplings", {1.0, 1.0, 1.0}},
                  {"detunings", {0.0, 0.0, 0.0}},
                  {"closed", true}}},
                {"time", {{"start", 0.0}, {"stop", 2.0}, {"num_points", 11}}},
                {"output", {{"path", "cli_spec.json"}}}};
    write_config("cli_spec_cfg.json", cfg);
    REQUIRE(run_cli("spectral --config cli_spec_cfg.json", "cli_spec.log") == 0);
    auto doc = json::parse(slurp("cli_spec.json"));
    auto ev = doc.at("eigenvalues").get<std::vector<double>>();
    REQUIRE(ev.size() == 4);
    for (int k = 1; k <= 4; ++k)
      CHECK(ev[4 - static_cast<std::size_t>(k)] ==
            doctest::Approx(2.0 * std::cos(k * M_PI / 5.0)).epsilon(1e-10));
    CHECK(doc.at("v8_route").get<std::string>() == "chebyshev-u");
    const std::string traj = slurp("cli_spec.json.trajectory.csv");
    CHECK(traj.rfind("t,rho_0,", 0) == 0);
    std::remove("cli_spec.json.trajectory.csv");
  }
  {
    json cfg = {{"system", {{"family", "krawtchouk"}, {"N", 3}, {"epsilon", 0.2}}},
                {"output", {{"path", "cli_spec.json"}}}};
    write_config("cli_spec_cfg.json", cfg);
    REQUIRE(run_cli("spectral --config cli_spec_cfg.json", "cli_spec.log") == 0);
    auto doc = json::parse(slurp("cli_spec.json"));
    CHECK(doc.at("v8_route").get<std::string>() == "recurrence-roots");
    CHECK(doc.at("v8_residual").get<double>() < 1e-10);
    auto w = doc.at("weights").get<std::vector<double>>();
    double sum = 0.0;
    for (double x : w) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    std::remove("cli_spec.json.trajectory.csv");
  }
  std::remove("cli_spec_cfg.json");
  std::remove("cli_spec.json");
  std::remove("cli_spec.log");
}
