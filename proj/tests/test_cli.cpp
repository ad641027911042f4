#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "curved_mie/cli/commands.hpp"
#include "curved_mie/cli/config.hpp"
#include "curved_mie/cli/format.hpp"
#include "curved_mie/cli/verify.hpp"

using namespace curved_mie;
using namespace curved_mie::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(CURVED_MIE_EXE) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("curved_mie_test_" + name);
  std::ofstream(p) << content;
  return p;
}

RunConfig small_config() {
  RunConfig cfg;
  cfg.N = 2048;
  return cfg;
}

int column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return int(i);
  FAIL("missing column " << name);
  return -1;
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(NAN) == "nan");
  CHECK(format_double(INFINITY) == "inf");
  CHECK(format_double(-INFINITY) == "-inf");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("csv and json rendering") {
  Table t;
  t.header = {"a", "b", "c"};
  t.add_row({1, 0.25, "x,y"});
  t.add_row({nullptr, NAN, "plain"});
  CHECK(to_csv(t) == "a,b,c\n1,0.25,\"x,y\"\n,nan,plain\n");
  const json j = to_json(t);
  CHECK(j.size() == 2);
  CHECK(j[0]["b"] == 0.25);
  CHECK(j[1]["b"] == "nan");
  CHECK_THROWS(t.add_row({1, 2}));
}

TEST_CASE("config: round trip, unknown keys, units") {
  RunConfig cfg;
  cfg.params.R = 3.0;
  cfg.modes = {SolvabilityMode::rederived, SolvabilityMode::direct};
  cfg.N = 1024;
  cfg.molecules["X"] = Molecule{0.5, 1.2, 0.9, "test"};
  const RunConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.params.R == 3.0);
  CHECK(back.modes == cfg.modes);
  CHECK(back.N == 1024);
  CHECK(back.molecules.at("X").a == 1.2);
  CHECK(config_to_json(back) == config_to_json(cfg));

  try {
    config_from_json(json{{"params", {{"Rr", 1.0}}}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("Rr") != std::string::npos);
  }
  CHECK_THROWS_AS(config_from_json(json{{"bogus", 1}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(json{{"grid", {{"N", 63}}}}), ConfigError);

  const RunConfig scaled =
      config_from_json(json{{"params", {{"R", 2.0}, {"V0", 3.0}}}, {"units", {{"length", 10.0}, {"energy", 0.5}}}});
  CHECK(scaled.params.R == 20.0);
  CHECK(scaled.params.V0 == 1.5);

  CHECK(parse_modes("both").size() == 3);
  CHECK_THROWS_AS(parse_modes("nope"), ConfigError);
}

TEST_CASE("missing config is a usage error naming the path") {
  try {
    load_config("/nonexistent/cfg.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/cfg.json") != std::string::npos);
  }
  CHECK(run("--config /nonexistent/cfg.json spectrum").code == 2);
  const fs::path bad = temp_file("bad.json", "{ not json");
  CHECK(run("--config " + bad.string() + " spectrum").code == 2);
}

TEST_CASE("example config loads") {
  const RunConfig cfg = load_config(fs::path(CURVED_MIE_SOURCE_DIR) / "configs/molecules.example.json");
  CHECK(cfg.molecules.size() >= 3);
}

TEST_CASE("spectrum: free particle with oracle") {
  RunConfig cfg = small_config();
  cfg.params.V0 = 0.0;
  const Table t = cmd_spectrum(cfg, {3, 0, true});
  REQUIRE(t.rows.size() == 3);
  const double expect[] = {0.0, 1.5, 4.0};
  const int eo = column(t, "E_oracle"), ea = column(t, "E_analytic");
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(t.rows[i][eo].get<double>() - expect[i]) < 1e-6);
    CHECK(std::abs(t.rows[i][ea].get<double>() - expect[i]) < 1e-14);
  }
  const Table none = cmd_spectrum(cfg, {2, 0, false});
  CHECK(none.rows[0][eo].is_null());
}

TEST_CASE("spectrum: every mode gives its own j") {
  RunConfig cfg = small_config();
  cfg.modes = parse_modes("all");
  const Table t = cmd_spectrum(cfg, {1, 0, false});
  REQUIRE(t.rows.size() == 3);
  const int jc = column(t, "j");
  CHECK(t.rows[0][jc] != t.rows[1][jc]);
  CHECK(t.rows[1][jc] != t.rows[2][jc]);
}

TEST_CASE("potential") {
  RunConfig cfg = small_config();
  const Table flat = cmd_potential(cfg, {Space::flat, "", 1000, 10.0});
  double best = INFINITY, at = 0.0;
  for (const auto& row : flat.rows)
    if (row[1].get<double>() < best) {
      best = row[1].get<double>();
      at = row[0].get<double>();
    }
  CHECK(at == doctest::Approx(1.0).epsilon(0.02));
  CHECK(best == doctest::Approx(-0.5).epsilon(1e-3));

  const Table curved = cmd_potential(cfg, {Space::curved, "", 1000, 10.0});
  bool saw_equator = false;
  for (const auto& row : curved.rows)
    if (std::abs(row[0].get<double>() - M_PI / 2) < 1e-12) {
      saw_equator = true;
      CHECK(std::abs(row[1].get<double>()) < 1e-15);
    }
  CHECK(saw_equator);

  CHECK_THROWS_AS(cmd_potential(cfg, {Space::flat, "H2O", 100, 10.0}), ConfigError);
  CHECK(run("potential --molecule H2O").code == 2);
}

TEST_CASE("wavefunction output") {
  const RunConfig cfg = small_config();
  const Table t = cmd_wavefunction(cfg, {2, 1, true});
  const int pc = column(t, "psi"), ac = column(t, "abs2"), dc = column(t, "abs_diff");
  CHECK(t.rows.size() == std::size_t(cfg.N - 1));
  CHECK(t.rows.front()[pc].get<double>() > 0.0);
  CHECK(t.rows.back()[pc].get<double>() < M_PI);
  Eigen::ArrayXd w(t.rows.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double psi = t.rows[i][pc].get<double>();
    w(i) = t.rows[i][ac].get<double>() * std::sin(psi) * std::sin(psi);
    worst = std::max(worst, t.rows[i][dc].get<double>());
  }
  CHECK(simpson(w, M_PI / cfg.N) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(worst < 1e-3);

  RunConfig two = cfg;
  two.modes = parse_modes("both");
  CHECK_THROWS_AS(cmd_wavefunction(two, {1, 0, false}), ConfigError);
}

TEST_CASE("parse_range") {
  const auto [name, values] = parse_range("R=10,20,40");
  CHECK(name == "R");
  CHECK(values == std::vector<double>{10, 20, 40});
  CHECK_THROWS_AS(parse_range("Z=1"), ConfigError);
  CHECK_THROWS_AS(parse_range("R"), ConfigError);
  CHECK_THROWS_AS(parse_range("m=0.5"), ConfigError);
  CHECK_THROWS_AS(parse_range("R=1,nan"), ConfigError);
}

TEST_CASE("sweep: serial equals parallel and matches spectrum") {
  RunConfig cfg;
  cfg.N = 1024;
  SweepOptions opt;
  opt.ranges = {{"R", {1.0, 2.0}}, {"V0", {0.5, 1.0}}, {"m", {0, 1}}};
  opt.n_max = 2;
  const std::string par = to_csv(cmd_sweep(cfg, opt));
  opt.serial = true;
  const std::string ser = to_csv(cmd_sweep(cfg, opt));
  CHECK(par == ser);
  CHECK(std::count(par.begin(), par.end(), '\n') == 1 + 8 * 2);

  SweepOptions one;
  one.ranges = {{"R", {2.0}}};
  const Table sw = cmd_sweep(cfg, one);
  RunConfig c2 = cfg;
  c2.params.R = 2.0;
  const Table sp = cmd_spectrum(c2, {1, 0, true});
  CHECK(sw.rows[0][column(sw, "E_analytic")] == sp.rows[0][column(sp, "E_analytic")]);
  CHECK(sw.rows[0][column(sw, "E_oracle")] == sp.rows[0][column(sp, "E_oracle")]);

  SweepOptions bad;
  bad.ranges = {{"R", {-1.0}}};
  bad.with_oracle = false;
  const Table err = cmd_sweep(cfg, bad);
  CHECK_FALSE(err.rows[0][column(err, "error")].get<std::string>().empty());
}

TEST_CASE("algebra table") {
  RunConfig cfg;
  cfg.N = 2048;
  const Table t = cmd_algebra(cfg, {});
  CHECK(t.rows.size() > 8);
  for (const auto& row : t.rows) {
    const std::string id = row[0].get<std::string>();
    if (id == "matching_sum_squared") continue;
    if (id.rfind("matching", 0) == 0 || id == "epsilon_equated") CHECK(row[2].get<double>() < 1e-12);
  }
}

TEST_CASE("verify: suite filter and exit codes") {
  RunConfig cfg;
  const VerifyReport rep = run_verify(cfg, parse_suites("geometry,specfun"));
  CHECK(rep.passed());
  for (const Check& c : rep.checks) CHECK((c.suite == "geometry" || c.suite == "specfun"));
  CHECK_THROWS_AS(parse_suites("geometry,bogus"), ConfigError);

  CHECK(run("verify --suites geometry").code == 0);
  const fs::path tight = temp_file("tight.json", R"({"tolerances": {"verify_tol": 1e-20}})");
  CHECK(run("--config " + tight.string() + " --grid-points 1024 verify --suites spectrum").code == 1);
  CHECK(run("spectrum --bogus").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("binary output is deterministic") {
  const RunResult a = run("--format json spectrum --n-max 3");
  const RunResult b = run("--format json spectrum --n-max 3");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const json j = json::parse(a.out);
  CHECK(j.size() == 3);
}
