#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "run_config.hpp"

using namespace parabolic::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "parabolic");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fresh_dir(const std::string& name) {
  const fs::path p = fs::path("cli_out") / name;
  fs::remove_all(p);
  return p.string();
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config text parsing") {
  const auto entries = parse_config_text("# run\nproblem = arctan\n\n  alpha=0.25   # inline\ngrid-n = 32\n");
  REQUIRE(entries.size() == 3);
  CHECK(entries[0] == std::pair<std::string, std::string>{"problem", "arctan"});
  CHECK(entries[1].second == "0.25");
  RunConfig c;
  for (const auto& [k, v] : entries) apply_setting(c, k, v);
  CHECK(c.problem == "arctan");
  CHECK(c.alpha == 0.25);
  CHECK(c.grid_n == 32);
  CHECK_THROWS_AS(parse_config_text("alpha 0.5\n"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "colour", "red"), ConfigError);
  CHECK_THROWS_AS(apply_setting(c, "dt", "1e-4x"), ConfigError);
  CHECK_THROWS_AS(read_config_file("cli_out/does-not-exist.cfg"), ConfigError);
}

TEST_CASE("config invariants") {
  RunConfig c;
  CHECK_NOTHROW(validate(c));
  c.alpha = 1.5;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.grid_n = 33;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.tol = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = {};
  c.dim = 3;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("argument errors exit 64") {
  CHECK(cli({}).code == 64);
  CHECK(cli({"frobnicate"}).code == 64);
  CHECK(cli({"solve", "--alpha", "1.5", "--out", fresh_dir("alpha")}).code == 64);
  CHECK(cli({"solve", "--grid-n", "abc"}).code == 64);
  CHECK(cli({"verify", "--suite", "nope", "--out", fresh_dir("nosuite")}).code == 64);
  CHECK(cli({"holder-norm", "--out", fresh_dir("noinput")}).code == 64);
  const Run unknown = cli({"check-ellipticity", "--problem", "nope", "--out", fresh_dir("unknown")});
  CHECK(unknown.code == 64);
  CHECK(unknown.err.find("unknown problem") != std::string::npos);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("check-ellipticity") {
  const std::string heat = fresh_dir("ell_heat");
  CHECK(cli({"check-ellipticity", "--problem", "heat", "--out", heat}).code == 0);
  const auto j = read_json(fs::path(heat) / "ellipticity.json");
  CHECK(j["lambda"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["elliptic"].get<bool>());

  const std::string back = fresh_dir("ell_back");
  CHECK(cli({"check-ellipticity", "--problem", "backward_heat", "--out", back}).code == 1);
  CHECK(read_json(fs::path(back) / "ellipticity.json")["lambda"].get<double>() < 0);

  const std::string arctan = fresh_dir("ell_arctan");
  CHECK(cli({"check-ellipticity", "--problem", "arctan", "--out", arctan}).code == 0);
  const double lambda = read_json(fs::path(arctan) / "ellipticity.json")["lambda"].get<double>();
  CHECK(lambda > 0.0);
  CHECK(lambda <= 1.0);

  CHECK(cli({"check-ellipticity", "--problem", "heat", "--n", "2", "--out", fresh_dir("ell_2d")}).code == 0);
}

TEST_CASE("solve writes trajectory, trace and summary") {
  const std::string dir = fresh_dir("solve_heat");
  const Run r = cli({"solve", "--problem", "heat", "--out", dir});
  CHECK(r.code == 0);
  const auto s = read_json(fs::path(dir) / "summary.json");
  CHECK(s["converged"].get<bool>());
  CHECK(s["residual"].get<double>() <= 1e-3);
  CHECK(s["error_vs_exact"].get<double>() <= 1e-3);
  CHECK(s.contains("delta_final"));
  CHECK(s.contains("R"));
  CHECK(first_line(fs::path(dir) / "trajectory.csv") == "t,x,u_1");
  CHECK(first_line(fs::path(dir) / "trace.csv") == "iter,distance,factor,cond31,cond33,cond37,delta");

  const std::string arctan = fresh_dir("solve_arctan");
  CHECK(cli({"solve", "--problem", "arctan", "--out", arctan}).code == 0);
  CHECK(read_json(fs::path(arctan) / "summary.json")["error_vs_exact"].get<double>() <= 1e-3);
}

TEST_CASE("identical config and seed give byte-identical CSV") {
  const std::string a = fresh_dir("repeat_a");
  const std::string b = fresh_dir("repeat_b");
  for (const auto& dir : {a, b}) {
    REQUIRE(cli({"solve", "--problem", "semilinear", "--grid-n", "32", "--seed", "7", "--out", dir}).code == 0);
  }
  for (const char* file : {"trajectory.csv", "trace.csv"}) {
    CHECK(slurp(fs::path(a) / file) == slurp(fs::path(b) / file));
  }
}

TEST_CASE("flags override config file keys") {
  fs::create_directories("cli_out");
  {
    std::ofstream cfg("cli_out/override.cfg");
    cfg << "# coarse run\nproblem = semilinear\ngrid_n = 32\nalpha = 0.3\n";
  }
  const std::string dir = fresh_dir("override");
  REQUIRE(cli({"solve", "--config", "cli_out/override.cfg", "--alpha", "0.4", "--out", dir}).code == 0);
  const auto s = read_json(fs::path(dir) / "summary.json");
  CHECK(s["problem"] == "semilinear");
  CHECK(s["grid_n"] == 32);
  CHECK(s["alpha"].get<double>() == 0.4);
}

TEST_CASE("exhausted horizon exits 2") {
  fs::create_directories("cli_out");
  {
    std::ofstream cfg("cli_out/starved.cfg");
    cfg << "max_iter = 1\nmax_halvings = 0\n";
  }
  const Run r = cli({"solve", "--config", "cli_out/starved.cfg", "--problem", "semilinear", "--grid-n", "32",
                     "--out", fresh_dir("starved")});
  CHECK(r.code == 2);
  CHECK(r.err.find("no contraction horizon") != std::string::npos);
  CHECK(cli({"solve", "--problem", "backward_heat", "--grid-n", "32", "--out", fresh_dir("backward")}).code == 1);
}

TEST_CASE("verify suites") {
  const Run garding = cli({"verify", "--suite", "garding", "--problem", "heat", "--out", fresh_dir("v_garding")});
  CHECK(garding.code == 0);
  CHECK(garding.out.find("C = 0.5") != std::string::npos);
  CHECK(garding.out.find("FAIL") == std::string::npos);

  const std::string t = fresh_dir("v_transport");
  CHECK(cli({"verify", "--suite", "transport", "--out", t}).code == 0);
  const auto rows = read_json(fs::path(t) / "verify.json");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1]["value"].get<double>() <= 1e-8);

  CHECK(cli({"verify", "--suite", "uniqueness", "--problem", "arctan", "--out", fresh_dir("v_unique")}).code == 0);
  CHECK(cli({"verify", "--suite", "ellipticity", "--problem", "backward_heat", "--out", fresh_dir("v_back")}).code == 1);
}

TEST_CASE("verify all keeps suite order") {
  const Run r = cli({"verify", "--suite", "all", "--problem", "semilinear", "--grid-n", "32", "--out", fresh_dir("v_all")});
  std::size_t last = 0;
  for (const std::string& suite : suite_names()) {
    const std::size_t at = r.out.find("\n" + suite + " ");
    CAPTURE(suite);
    REQUIRE(at != std::string::npos);
    CHECK(at >= last);
    last = at;
  }
}

TEST_CASE("holder-norm reads a trajectory") {
  const std::string dir = fresh_dir("holder");
  REQUIRE(cli({"solve", "--problem", "heat", "--grid-n", "16", "--out", dir}).code == 0);
  const Run r = cli({"holder-norm", "--input", dir + "/trajectory.csv", "--out", dir});
  CHECK(r.code == 0);
  CHECK(r.out.find("total ") != std::string::npos);
  CHECK(read_json(fs::path(dir) / "holder_norm.json")["norm"]["total"].get<double>() > 0.0);
  CHECK(cli({"holder-norm", "--input", dir + "/missing.csv", "--out", dir}).code == 64);
}

}  // TEST_SUITE
