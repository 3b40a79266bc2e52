// End-to-end tests of the command-line binary. The path of the built
// executable arrives in the WILLMORE_CLI environment variable (set by the
// test harness).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "willmore/io.hpp"
#include "willmore/representation.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path temp_path(const std::string& stem) {
  static int counter = 0;
  return std::filesystem::temp_directory_path() /
         (stem + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("WILLMORE_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "WILLMORE_CLI must point at the built binary");
  std::filesystem::path out = temp_path("cli-out");
  std::filesystem::path err = temp_path("cli-err");
  std::string cmd = "\"" + std::string(bin) + "\" " + args + " > " + out.string() + " 2> " +
                    err.string();
  int raw = std::system(cmd.c_str());
  RunResult result;
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  std::filesystem::remove(out);
  std::filesystem::remove(err);
  return result;
}

}  // namespace

TEST_CASE("eval reports the Veronese minimal orbit") {
  RunResult r = run_cli("eval --family veronese --param 0");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["orbit_dim"] == 3);
  CHECK(j["isotropy_dim"] == 0);
  CHECK(std::abs(j["H2"].get<double>()) <= 1e-8);
}

TEST_CASE("eval lands on the boundary stratum near the domain endpoint") {
  RunResult r = run_cli("eval --family veronese --param 0.40824829");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["orbit_dim"] == 2);
  CHECK(j["isotropy_dim"] == 1);
}

TEST_CASE("eval computes the Clifford torus energy") {
  RunResult r = run_cli("eval --family product-spheres --dims 1,1 --t 1,1");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  double w = j["W"].get<double>();
  double expected = 4.0 * M_PI * M_PI;
  CHECK(std::abs(w - expected) / expected <= 1e-12);
  CHECK(j["orbit_dim"] == 2);
  CHECK(j["isotropy_dim"] == 0);
}

TEST_CASE("eval with a representation and point file") {
  namespace reps = willmore::representations;
  std::filesystem::path rep_path = temp_path("rep.json");
  std::filesystem::path point_path = temp_path("point.json");
  {
    std::ofstream f(rep_path);
    f << willmore::io::to_json(reps::build_so_block_rep({1, 1}));
    std::ofstream g(point_path);
    g << json{{"point", {M_SQRT1_2, 0.0, M_SQRT1_2, 0.0}}};
  }
  RunResult r = run_cli("eval --rep " + rep_path.string() + " --point " + point_path.string());
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(std::abs(j["relW"].get<double>() - 1.0) <= 1e-12);
  std::filesystem::remove(rep_path);
  std::filesystem::remove(point_path);
}

TEST_CASE("scan writes the documented CSV") {
  std::filesystem::path out = temp_path("scan.csv");
  RunResult r = run_cli("scan --family product-line --dims 1,1 --steps 9 --out " + out.string());
  REQUIRE(r.status == 0);
  std::string csv = slurp(out);
  CHECK(csv.rfind("param,value,orbit_dim,isotropy_dim\n", 0) == 0);
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 10);  // header + 9 rows
  std::vector<willmore::critical_search::ScanPoint> scan = willmore::io::read_scan_csv(out.string());
  CHECK(scan.size() == 9);
  std::filesystem::remove(out);
}

TEST_CASE("optimize locates the product-line critical point") {
  RunResult r = run_cli("optimize --family product-line --dims 2,3");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(std::abs(j[0]["param"].get<double>() - std::sqrt(0.6)) <= 1e-8);
  CHECK(j[0]["kind"] == "min");
}

TEST_CASE("optimize solves the radius simplex") {
  RunResult r = run_cli("optimize --family product-spheres --dims 1,2,3");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  REQUIRE(j.size() == 1);
  std::vector<double> t = j[0]["t"].get<std::vector<double>>();
  REQUIRE(t.size() == 3);
  double n = 6.0;
  for (size_t i = 0; i < 3; ++i) {
    double expected = std::sqrt((n - (1.0 + i)) / (n * 2.0));
    CHECK(std::abs(t[i] - expected) <= 1e-7);
  }
}

TEST_CASE("collapse reports a clean power law") {
  RunResult r = run_cli("collapse --family product-line --dims 1,1 --boundary lo");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["accepted"] == true);
  CHECK(std::abs(j["exponent"].get<double>() + 1.0) <= 0.05);
}

TEST_CASE("fingerprint subcommand") {
  RunResult r = run_cli("fingerprint --family so5-adjoint --param 0.3");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["orbit_dim"] == 8);
  CHECK(j["isotropy_dim"] == 2);
}

TEST_CASE("families lists the built-ins") {
  RunResult r = run_cli("families");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 4);
}

TEST_CASE("usage errors exit 2 with machine-readable stderr") {
  RunResult r = run_cli("scan --no-such-flag");
  CHECK(r.status == 2);
  json err = json::parse(r.err);
  CHECK(err["kind"] == "usage");
  CHECK(err.contains("error"));
}

TEST_CASE("validation errors exit 2") {
  RunResult r = run_cli("eval --family veronese --param 9");
  CHECK(r.status == 2);
  json err = json::parse(r.err);
  CHECK(err["kind"] == "validation");
}

TEST_CASE("numerical failures exit 1") {
  RunResult r = run_cli("optimize --family product-spheres --dims 1,1 --init 1e-9,1");
  CHECK(r.status == 1);
  json err = json::parse(r.err);
  CHECK(err["kind"] == "numerical");
}

TEST_CASE("eval rejects an off-sphere point with the documented message") {
  namespace reps = willmore::representations;
  std::filesystem::path rep_path = temp_path("rep2.json");
  std::filesystem::path point_path = temp_path("bad-point.json");
  {
    std::ofstream f(rep_path);
    f << willmore::io::to_json(reps::build_so_block_rep({1, 1}));
    std::ofstream g(point_path);
    g << json{{"point", {1.0, 0.1, 0.0, 0.0}}};
  }
  RunResult r = run_cli("eval --rep " + rep_path.string() + " --point " + point_path.string());
  CHECK(r.status == 2);
  json err = json::parse(r.err);
  CHECK(err["error"] == "point not on unit sphere");
  CHECK(err["kind"] == "validation");
  std::filesystem::remove(rep_path);
  std::filesystem::remove(point_path);
}

TEST_CASE("output does not depend on the thread budget") {
  RunResult par = run_cli("scan --family veronese --steps 33");
  const char* bin = std::getenv("WILLMORE_CLI");
  std::filesystem::path out = temp_path("ser-out");
  std::string cmd = "WILLMORE_THREADS=1 \"" + std::string(bin) +
                    "\" scan --family veronese --steps 33 > " + out.string() + " 2>/dev/null";
  int raw = std::system(cmd.c_str());
  REQUIRE(par.status == 0);
  REQUIRE((WIFEXITED(raw) && WEXITSTATUS(raw) == 0));
  CHECK(par.out == slurp(out));  // bit-identical CSV
  std::filesystem::remove(out);
}

TEST_CASE("verify flags a corrupted representation and exits 1") {
  namespace reps = willmore::representations;
  json j = willmore::io::to_json(reps::build_so3_conjugation_rep());
  j["generators"][0][0] = j["generators"][0][0].get<double>() + 1e-3;  // breaks skewness
  std::filesystem::path rep_path = temp_path("bad-rep.json");
  {
    std::ofstream f(rep_path);
    f << j;
  }
  RunResult r = run_cli("verify --rep " + rep_path.string() + " --only rep-validation");
  CHECK(r.status == 1);
  CHECK(r.out.find("rep-validation") != std::string::npos);
  CHECK(r.out.find("FAIL") != std::string::npos);
  std::filesystem::remove(rep_path);
}

TEST_CASE("verify passes a clean representation check") {
  namespace reps = willmore::representations;
  std::filesystem::path rep_path = temp_path("good-rep.json");
  {
    std::ofstream f(rep_path);
    f << willmore::io::to_json(reps::build_so5_adjoint_rep());
  }
  RunResult r = run_cli("verify --rep " + rep_path.string() + " --only rep-validation");
  CHECK(r.status == 0);
  CHECK(r.out.find("pass") != std::string::npos);
  std::filesystem::remove(rep_path);
}
