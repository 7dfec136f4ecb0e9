#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "vex/runner.hpp"
#include "vex/spaces.hpp"

using namespace vex;

namespace {

Config sweep_config() {
  Config cfg;
  cfg.set("experiment", "embedding_sweep");
  cfg.set("J.min", "0");
  cfg.set("J.max", "2");
  cfg.set("trials", "2");
  cfg.set("seed", "5");
  cfg.set("case.source.kind", "besov");
  cfg.set("case.source.p.family", "constant");
  cfg.set("case.source.p.value", "2");
  cfg.set("case.source.q.family", "constant");
  cfg.set("case.source.q.value", "1.5");
  cfg.set("case.source.s.family", "constant");
  cfg.set("case.source.s.value", "0.5");
  cfg.set("case.target.kind", "besov");
  cfg.set("case.target.p.family", "constant");
  cfg.set("case.target.p.value", "2");
  cfg.set("case.target.q.family", "constant");
  cfg.set("case.target.q.value", "1.5");
  cfg.set("case.target.s.family", "constant");
  cfg.set("case.target.s.value", "0.5");
  return cfg;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::ofstream os(name);
  os << content;
  return name;
}

}  // namespace

TEST_CASE("config parsing: comments, quotes, errors") {
  std::stringstream ss(
      "# a comment\n"
      "experiment = norm\n"
      "space.s.value = 0.5   # trailing comment\n"
      "label = \"two words\"\n"
      "\n"
      "J.max = 4\n");
  const Config cfg = Config::parse(ss);
  CHECK(cfg.str("experiment") == "norm");
  CHECK(cfg.num("space.s.value") == doctest::Approx(0.5));
  CHECK(cfg.str("label") == "two words");
  CHECK(cfg.integer("J.max") == 4);
  CHECK(cfg.integer_or("J.min", 7) == 7);
  CHECK_FALSE(cfg.has("missing"));
  CHECK_THROWS_AS(cfg.str("missing"), ConfigError);
  try {
    cfg.str("missing");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("missing") != std::string::npos);
  }

  std::stringstream bad("key value without equals\n");
  CHECK_THROWS_AS(Config::parse(bad), ConfigError);
  std::stringstream nan("x = notanumber\n");
  CHECK_THROWS_AS(Config::parse(nan).num("x"), ConfigError);
}

TEST_CASE("config lists and infinity values") {
  std::stringstream ss("families = single_coefficient, flat_row\nq = inf\n");
  const Config cfg = Config::parse(ss);
  const auto fams = cfg.list("families");
  REQUIRE(fams.size() == 2);
  CHECK(fams[0] == "single_coefficient");
  CHECK(fams[1] == "flat_row");
  CHECK(std::isinf(cfg.num("q")));
}

TEST_CASE("config digest is canonical") {
  std::stringstream a("x = 1\ny = 2\n");
  std::stringstream b("y = 2\nx = 1\n");
  std::stringstream c("x = 1\ny = 3\n");
  CHECK(Config::parse(a).digest() == Config::parse(b).digest());
  CHECK(Config::parse(a).digest() != Config::parse(c).digest());
}

TEST_CASE("config file loading maps to IoError") {
  CHECK_THROWS_AS(Config::load("/nonexistent/path.cfg"), IoError);
}

TEST_CASE("norm experiment: closed-form single coefficient") {
  Config cfg;
  cfg.set("experiment", "norm");
  cfg.set("gamma.family", "single_coefficient");
  cfg.set("gamma.J", "3");
  cfg.set("space.kind", "besov");
  cfg.set("space.p.family", "constant");
  cfg.set("space.p.value", "2");
  cfg.set("space.q.family", "constant");
  cfg.set("space.q.value", "2");
  cfg.set("space.s.family", "constant");
  cfg.set("space.s.value", "1");
  const RunOutput out = run_experiment(cfg);
  // norm = 2^{3 (1 - 1/2)}
  const double want = std::pow(2.0, 1.5);
  CHECK(out.csv.find("norm,3,single_coefficient,0,") != std::string::npos);
  const auto j = out.json;
  CHECK(j.find("\"norm\"") != std::string::npos);
  std::stringstream csv(out.csv);
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  const auto p0 = row.find(",0,") + 3;
  const double norm = std::stod(row.substr(p0));
  CHECK(norm == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("embedding sweep: identity case is bounded and the CSV is deterministic") {
  const Config cfg = sweep_config();
  const RunOutput a = run_experiment(cfg);
  const RunOutput b = run_experiment(cfg);
  CHECK(a.csv == b.csv);  // wall time lives only in the JSON
  CHECK(a.csv.find("case,J,generator,trial,source_norm,target_norm,ratio") == 0);
  CHECK(a.json.find("\"verdict\": \"bounded\"") != std::string::npos);
  CHECK(a.json.find("\"config_digest\"") != std::string::npos);
  CHECK(a.json.find("wall_time_ms") != std::string::npos);
  CHECK(a.csv.find("wall_time") == std::string::npos);
  // rows sorted by (J, family, trial): first data row is J = 0, first family
  std::stringstream ss(a.csv);
  std::string header, first;
  std::getline(ss, header);
  std::getline(ss, first);
  CHECK(first.rfind("case0,0,flat_row,0,", 0) == 0);
}

TEST_CASE("worker count from the environment does not change results") {
  const Config cfg = sweep_config();
  unsetenv(kWorkersEnvVar);
  const RunOutput a = run_experiment(cfg);
  setenv(kWorkersEnvVar, "4", 1);
  CHECK(worker_count() == 4);
  const RunOutput b = run_experiment(cfg);
  unsetenv(kWorkersEnvVar);
  CHECK(worker_count() == 1);
  CHECK(a.csv == b.csv);
}

TEST_CASE("proof_check experiment emits term columns") {
  Config cfg;
  cfg.set("experiment", "proof_check");
  cfg.set("J.min", "1");
  cfg.set("J.max", "3");
  cfg.set("proof.p0", "1");
  cfg.set("proof.p1", "2");
  cfg.set("proof.q", "1");
  cfg.set("families", "single_coefficient, lacunary_diagonal");
  const RunOutput out = run_experiment(cfg);
  CHECK(out.json.find("max_f_norm_over_terms") != std::string::npos);

  const std::string path = write_temp("proof_rows.csv", out.csv);
  const std::string plot = emit_plot_data(path, "term_decomposition");
  CHECK(plot.rfind("J,I,II,III,f_norm,b_norm\n", 0) == 0);
  // 3 J values x 2 families with term data
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 7);
  std::remove(path.c_str());
}

TEST_CASE("plot ratio_vs_J from the JSON summary") {
  const RunOutput out = run_experiment(sweep_config());
  const std::string path = write_temp("sweep.json", out.json);
  const std::string plot = emit_plot_data(path, "ratio_vs_J");
  CHECK(plot.rfind("J,sup_ratio,family_id\n", 0) == 0);
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 4);  // header + J = 0,1,2
  std::remove(path.c_str());
}

TEST_CASE("plot profile from a grid function file") {
  GridFunction f(Box::cube(1, 0, 1), 0);
  f.values[0] = 1.0;
  std::ofstream os("prof.grid");
  write_grid_function(os, f);
  os.close();
  const std::string plot = emit_plot_data("prof.grid", "profile");
  CHECK(plot == "t,value\n0,1\n1,0\n");
  std::remove("prof.grid");
}

TEST_CASE("plot errors: unknown kind, missing file, wrong record") {
  CHECK_THROWS_AS(emit_plot_data("/nonexistent", "profile"), IoError);
  const std::string path = write_temp("empty.json", "{}\n");
  CHECK_THROWS_AS(emit_plot_data(path, "spectrogram"), ConfigError);
  CHECK_THROWS_AS(emit_plot_data(path, "ratio_vs_J"), ConfigError);
  CHECK_THROWS_AS(emit_plot_data(path, "term_decomposition"), ConfigError);
  std::remove(path.c_str());
}

TEST_CASE("validate_config accepts good configs and names bad keys") {
  validate_config(sweep_config());

  Config bad = sweep_config();
  bad.set("experiment", "voodoo");
  CHECK_THROWS_AS(validate_config(bad), ConfigError);

  Config missing = sweep_config();
  missing.set("case.source.p.family", "unknown_family");
  CHECK_THROWS_AS(validate_config(missing), ConfigError);

  Config badrange = sweep_config();
  badrange.set("J.min", "5");
  CHECK_THROWS_AS(validate_config(badrange), ConfigError);

  Config badproof;
  badproof.set("experiment", "proof_check");
  badproof.set("proof.p0", "2");
  badproof.set("proof.p1", "1");
  badproof.set("proof.q", "1");
  CHECK_THROWS_AS(validate_config(badproof), ConfigError);

  Config gamma_missing;
  gamma_missing.set("experiment", "norm");
  gamma_missing.set("gamma.file", "/nonexistent/gamma.csv");
  CHECK_THROWS_AS(validate_config(gamma_missing), IoError);
}

TEST_CASE("counterexample experiment rejects separated cases") {
  Config cfg = sweep_config();
  cfg.set("experiment", "counterexample");
  cfg.set("case.source.s.value", "1.0");  // separation 0.5 > 0
  CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
  cfg.set("case.source.s.value", "0.5");
  cfg.set("focus", "0.25");
  const RunOutput out = run_experiment(cfg);
  CHECK(out.json.find("\"experiment\": \"counterexample\"") != std::string::npos);
  CHECK(out.csv.find("gap_chaser") != std::string::npos);
}

TEST_CASE("run_and_persist writes the requested files") {
  Config cfg = sweep_config();
  cfg.set("output.csv", "persist_test.csv");
  cfg.set("output.json", "persist_test.json");
  const RunOutput out = run_and_persist(cfg);
  std::ifstream csv("persist_test.csv"), js("persist_test.json");
  REQUIRE(csv.good());
  REQUIRE(js.good());
  std::stringstream cbuf, jbuf;
  cbuf << csv.rdbuf();
  jbuf << js.rdbuf();
  CHECK(cbuf.str() == out.csv);
  CHECK(jbuf.str() == out.json);
  std::remove("persist_test.csv");
  std::remove("persist_test.json");
}

TEST_CASE("gamma file input round trips through the norm experiment") {
  CoefficientField g(1, 2, Box::cube(1, -2, 2));
  g.set(2, {1}, 0.75);
  std::ofstream os("gamma_in.csv");
  write_coefficients(os, g);
  os.close();
  Config cfg;
  cfg.set("experiment", "norm");
  cfg.set("gamma.file", "gamma_in.csv");
  cfg.set("space.kind", "triebel");
  cfg.set("space.p.family", "constant");
  cfg.set("space.p.value", "2");
  cfg.set("space.q.family", "constant");
  cfg.set("space.q.value", "2");
  cfg.set("space.s.family", "constant");
  cfg.set("space.s.value", "0");
  const RunOutput out = run_experiment(cfg);
  // 0.75 on a cube of measure 1/4
  std::stringstream ss(out.csv);
  std::string header, row;
  std::getline(ss, header);
  std::getline(ss, row);
  const double norm = std::stod(row.substr(row.find(",0,") + 3));
  CHECK(norm == doctest::Approx(0.75 * 0.5).epsilon(1e-8));
  std::remove("gamma_in.csv");
}
