#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "elsos/cli.hpp"

using namespace elsos;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::filesystem::path tmp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("elsos_cli_test_" + name);
}

}  // namespace

TEST_CASE("exit codes", "[cli]") {
  CHECK(run({"verify", "bz", "--qmax", "20", "--lambda", "2", "--tol", "1e-9"}).code == 0);
  const auto fail = run({"verify", "smalltheta", "--theta0", "0.5", "--qmax", "8"});
  CHECK(fail.code == 2);
  CHECK(fail.out.find("FAIL") != std::string::npos);
  CHECK(run({"graded", "dims", "--max", "8"}).code == 0);
  CHECK(run({}).code == 1);
  CHECK(run({"verify"}).code == 1);
  CHECK(run({"verify", "bz", "--bogus"}).code == 1);
  CHECK(run({"verify", "bz", "--qmax", "0"}).code == 1);
  CHECK(run({"verify", "zzz", "--R", "0.5"}).code == 1);
  CHECK(run({"verify", "bz", "--format", "xml"}).code == 1);
  CHECK(run({"expander", "run", "--q", "4", "--p", "2"}).code == 1);
  CHECK(run({"symmetry", "threshold", "--R", "six"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("rational parsing", "[cli]") {
  CHECK(cli::parse_rational("6") == 6);
  CHECK(cli::parse_rational("-1/2") == make_rational(-1, 2));
  CHECK(cli::parse_rational("0.25") == make_rational(1, 4));
  CHECK(cli::parse_rational("-0.5") == make_rational(-1, 2));
  CHECK(cli::parse_rational("010") == 10);
  CHECK(cli::parse_rational("1/-2") == make_rational(-1, 2));
  CHECK_THROWS_AS(cli::parse_rational("0x10"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_rational(""), std::invalid_argument);
}

TEST_CASE("reports are byte-identical across runs and worker counts", "[cli][property]") {
  const auto a = tmp("a.json"), b = tmp("b.json");
  REQUIRE(run({"verify", "xyz2", "--qmax", "25", "--out", a.string(), "--jobs", "1"}).code == 0);
  REQUIRE(run({"verify", "xyz2", "--qmax", "25", "--out", b.string(), "--jobs", "3"}).code == 0);
  CHECK(slurp(a) == slurp(b));
  const auto c = tmp("c.csv"), d = tmp("d.csv");
  REQUIRE(run({"symmetry", "threshold", "--format", "csv", "--out", c.string()}).code == 0);
  REQUIRE(run({"symmetry", "threshold", "--format", "csv", "--out", d.string()}).code == 0);
  CHECK(slurp(c) == slurp(d));
  for (const auto& p : {a, b, c, d}) std::filesystem::remove(p);
}

TEST_CASE("json envelope", "[cli]") {
  const auto p = tmp("env.json");
  REQUIRE(run({"verify", "xyz1", "--qmax", "12", "--out", p.string()}).code == 0);
  auto j = nlohmann::ordered_json::parse(slurp(p));
  CHECK(j["command"] == "verify xyz1");
  CHECK(j["pass"] == true);
  CHECK(j.contains("params"));
  CHECK(j.contains("min_margin"));
  CHECK(j["witnesses"].is_array());
  CHECK_FALSE(j.contains("runtime_ms"));

  REQUIRE(run({"verify", "xyz1", "--qmax", "12", "--out", p.string(), "--timing"}).code == 0);
  j = nlohmann::ordered_json::parse(slurp(p));
  CHECK(j.contains("runtime_ms"));

  REQUIRE(run({"verify", "smalltheta", "--theta0", "0.5", "--qmax", "8", "--out", p.string()}).code == 2);
  j = nlohmann::ordered_json::parse(slurp(p));
  CHECK(j["pass"] == false);
  REQUIRE_FALSE(j["witnesses"].empty());
  CHECK(j["witnesses"][0]["theta"] == "1/2");

  REQUIRE(run({"graded", "sos-identity", "--out", p.string()}).code == 0);
  j = nlohmann::ordered_json::parse(slurp(p));
  CHECK(j["exact_match"] == true);
  CHECK(j["numeric_points"].size() == 10);
  std::filesystem::remove(p);
}

TEST_CASE("other subcommands", "[cli]") {
  CHECK(run({"symmetry", "orbit", "--m", "4", "--n", "5", "--d", "1"}).code == 0);
  const auto census = run({"symmetry", "census", "--m", "4"});
  CHECK(census.code == 0);
  CHECK(census.out.find("neither") != std::string::npos);
  CHECK(run({"symmetry", "spade", "--m", "4"}).code == 0);
  const auto th = run({"symmetry", "threshold", "--m", "5", "--R", "6", "--eps", "1"});
  CHECK(th.out.find("applies from n=15") != std::string::npos);
  CHECK(run({"symmetry", "el5", "--q", "5"}).code == 0);
  CHECK(run({"graded", "phi"}).code == 0);
  CHECK(run({"graded", "gram"}).code == 0);
  CHECK(run({"expander", "run", "--n", "2", "--q", "3,5,7", "--p", "coprime"}).code == 0);
}
