#include "vex/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vex/rearrange.hpp"

namespace vex {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader =
    "case,J,generator,trial,source_norm,target_norm,ratio,I,II,III,f_norm,b_norm\n";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string hex_digest(std::uint64_t d) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

ExponentFunction parse_exponent(const Config& cfg, const std::string& prefix, int n) {
  FamilyParams par;
  par.value = cfg.num_or(prefix + ".value", par.value);
  par.base = cfg.num_or(prefix + ".base", par.base);
  par.amplitude = cfg.num_or(prefix + ".amplitude", par.amplitude);
  par.lo = cfg.num_or(prefix + ".lo", par.lo);
  par.hi = cfg.num_or(prefix + ".hi", par.hi);
  par.width = cfg.num_or(prefix + ".width", par.width);
  par.scale = cfg.num_or(prefix + ".scale", par.scale);
  try {
    return make_standard_exponent(n, exponent_family_from_string(cfg.str(prefix + ".family")),
                                  par);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(prefix + ": " + e.what());
  }
}

SmoothnessFunction parse_smoothness(const Config& cfg, const std::string& prefix, int n) {
  FamilyParams par;
  par.value = cfg.num_or(prefix + ".value", 0.0);
  par.base = cfg.num_or(prefix + ".base", par.base);
  par.amplitude = cfg.num_or(prefix + ".amplitude", par.amplitude);
  par.lo = cfg.num_or(prefix + ".lo", par.lo);
  par.hi = cfg.num_or(prefix + ".hi", par.hi);
  par.width = cfg.num_or(prefix + ".width", par.width);
  par.scale = cfg.num_or(prefix + ".scale", par.scale);
  try {
    return make_standard_smoothness(
        n, exponent_family_from_string(cfg.str(prefix + ".family")), par);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(prefix + ": " + e.what());
  }
}

struct CommonSettings {
  int n;
  Box box;
  double tol;
  std::uint64_t seed;
  int J_lo, J_hi, trials;
  GridLevelPolicy policy;
  VerdictThresholds thresholds;
};

CommonSettings parse_common(const Config& cfg) {
  CommonSettings s{};
  s.n = cfg.integer_or("n", 1);
  if (s.n < 1) throw ConfigError("n must be >= 1");
  const int lo = cfg.integer_or("box.lo", -2), hi = cfg.integer_or("box.hi", 2);
  if (lo >= hi) throw ConfigError("box.lo must be < box.hi");
  s.box = Box::cube(s.n, lo, hi);
  s.tol = cfg.num_or("tol", 1e-10);
  if (!(s.tol > 0.0 && s.tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
  s.seed = static_cast<std::uint64_t>(cfg.num_or("seed", 0));
  s.J_lo = cfg.integer_or("J.min", 0);
  s.J_hi = cfg.integer_or("J.max", s.J_lo);
  if (s.J_lo < 0 || s.J_lo > s.J_hi) throw ConfigError("invalid J range");
  s.trials = cfg.integer_or("trials", 1);
  if (s.trials < 1) throw ConfigError("trials must be >= 1");
  const std::string gp = cfg.str_or("grid.policy", "auto");
  if (gp == "fixed") {
    s.policy.automatic = false;
    s.policy.fixed_level = cfg.integer("grid.level");
  } else if (gp != "auto") {
    throw ConfigError("grid.policy must be auto or fixed");
  }
  s.thresholds.bounded_slope = cfg.num_or("verdict.bounded_slope", 0.02);
  s.thresholds.growing_slope = cfg.num_or("verdict.growing_slope", 0.1);
  return s;
}

SpaceSpec parse_space(const Config& cfg, const std::string& prefix, const CommonSettings& s,
                      int J_max, const SmoothnessFunction& smooth) {
  try {
    return make_space(space_kind_from_string(cfg.str(prefix + ".kind")),
                      parse_exponent(cfg, prefix + ".p", s.n),
                      parse_exponent(cfg, prefix + ".q", s.n), smooth, J_max, s.box);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(prefix + ": " + e.what());
  }
}

EmbeddingCase parse_case(const Config& cfg, const CommonSettings& s) {
  const ExponentFunction p0 = parse_exponent(cfg, "case.source.p", s.n);
  const ExponentFunction q0 = parse_exponent(cfg, "case.source.q", s.n);
  const SmoothnessFunction s0 = parse_smoothness(cfg, "case.source.s", s.n);
  const ExponentFunction p1 = parse_exponent(cfg, "case.target.p", s.n);
  const ExponentFunction q1 = parse_exponent(cfg, "case.target.q", s.n);
  const SmoothnessFunction s1 = cfg.str("case.target.s.family") == "conjugate"
                                    ? conjugate_smoothness(s0, p0, p1, s.box)
                                    : parse_smoothness(cfg, "case.target.s", s.n);
  try {
    return make_embedding_case(space_kind_from_string(cfg.str("case.source.kind")), p0, q0, s0,
                               space_kind_from_string(cfg.str("case.target.kind")), p1, q1, s1,
                               s.box, s.J_hi);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("case: ") + e.what());
  }
}

std::vector<GeneratorFamily> parse_families(const Config& cfg, const CommonSettings& s,
                                            bool with_gap_chaser) {
  std::vector<GeneratorFamily> all = standard_families(s.n, s.box);
  if (with_gap_chaser) {
    Point focus(s.n, 0.0);
    if (cfg.has("focus")) {
      const auto parts = cfg.list("focus");
      if (static_cast<int>(parts.size()) != s.n)
        throw ConfigError("focus must list n coordinates");
      for (int a = 0; a < s.n; ++a) focus[a] = std::stod(parts[a]);
    }
    all.insert(all.begin(), gap_chaser_family(s.n, s.box, focus));
  }
  if (!cfg.has("families")) return all;
  std::vector<GeneratorFamily> picked;
  for (const auto& id : cfg.list("families")) {
    try {
      picked.push_back(find_family(all, id));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  return picked;
}

CoefficientField parse_gamma(const Config& cfg, const CommonSettings& s) {
  if (cfg.has("gamma.file")) {
    const std::string path = cfg.str("gamma.file");
    std::ifstream is(path);
    if (!is) throw IoError("cannot open coefficient file: " + path);
    try {
      return read_coefficients(is, s.box);
    } catch (const std::exception& e) {
      throw IoError("malformed coefficient file " + path + ": " + e.what());
    }
  }
  const auto fam = find_family(standard_families(s.n, s.box), cfg.str("gamma.family"));
  return fam.build(cfg.integer_or("gamma.J", s.J_hi), s.seed);
}

void append_row(std::string& csv, const std::string& cs, int J, const std::string& gen,
                int trial, const std::string& src, const std::string& tgt,
                const std::string& ratio, const std::string& I = "", const std::string& II = "",
                const std::string& III = "", const std::string& f = "",
                const std::string& b = "") {
  csv += cs + "," + std::to_string(J) + "," + gen + "," + std::to_string(trial) + "," + src +
         "," + tgt + "," + ratio + "," + I + "," + II + "," + III + "," + f + "," + b + "\n";
}

json estimate_to_json(const ConstantEstimate& est) {
  json per = json::array();
  for (const auto& r : est.per_J)
    per.push_back({{"J", r.J}, {"sup_ratio", r.sup_ratio}, {"argmax", r.argmax}});
  return {{"per_J", per},
          {"overall_sup", est.overall_sup},
          {"growth_slope", est.growth_slope},
          {"verdict", to_string(est.verdict)},
          {"skipped_samples", est.skipped_samples},
          {"thresholds",
           {{"bounded_slope", est.thresholds.bounded_slope},
            {"growing_slope", est.thresholds.growing_slope}}}};
}

json base_summary(const Config& cfg, const std::string& kind) {
  return {{"experiment", kind},
          {"config_digest", hex_digest(cfg.digest())},
          {"library_version", kVersion},
          {"note", "truncated-box experiment; constants are lower bounds on the embedding "
                   "constant and do not distinguish whole-space from unit-cube behavior"}};
}

RunOutput finish(const Config& cfg, std::string csv, json summary,
                 std::chrono::steady_clock::time_point t0) {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  summary["wall_time_ms"] = static_cast<double>(ms);
  RunOutput out;
  out.csv = std::move(csv);
  out.json = summary.dump(2) + "\n";
  out.csv_path = cfg.str_or("output.csv", "");
  out.json_path = cfg.str_or("output.json", "");
  return out;
}

RunOutput run_norm(const Config& cfg, const CommonSettings& s,
                   std::chrono::steady_clock::time_point t0) {
  const CoefficientField gamma = parse_gamma(cfg, s);
  const SmoothnessFunction smooth = parse_smoothness(cfg, "space.s", s.n);
  const SpaceSpec spec = parse_space(cfg, "space", s, gamma.J_max, smooth);
  const int L = s.policy.automatic ? default_grid_level(gamma, spec)
                                   : std::max(s.policy.fixed_level, gamma.J_max);
  const double norm = space_norm(gamma, spec, L, s.tol);

  std::string csv = kCsvHeader;
  append_row(csv, "norm", gamma.J_max, cfg.str_or("gamma.family", cfg.str_or("gamma.file", "?")),
             0, fmt(norm), "", "");
  json summary = base_summary(cfg, "norm");
  summary["norm"] = norm;
  summary["grid_level"] = L;
  return finish(cfg, std::move(csv), std::move(summary), t0);
}

RunOutput run_sweep(const Config& cfg, const CommonSettings& s, bool counterexample,
                    std::chrono::steady_clock::time_point t0) {
  const EmbeddingCase c = parse_case(cfg, s);
  if (counterexample) {
    if (c.hypothesis.separation > 1e-9)
      throw ConfigError("counterexample: case has positive separation");
    if (c.hypothesis.separation < -1e-9)
      throw ConfigError("counterexample: needs pointwise s0 >= s1");
  }
  const auto fams = parse_families(cfg, s, counterexample);
  int skipped = 0;
  auto samples = sweep_samples(c, fams, s.J_lo, s.J_hi, s.trials, s.policy, s.tol, s.seed,
                               worker_count(), &skipped);
  std::sort(samples.begin(), samples.end(), [](const RatioSample& a, const RatioSample& b) {
    return std::tie(a.J, a.family, a.trial) < std::tie(b.J, b.family, b.trial);
  });
  const ConstantEstimate est = reduce_samples(samples, s.thresholds, skipped);

  std::string csv = kCsvHeader;
  for (const auto& r : samples)
    append_row(csv, "case0", r.J, r.family, r.trial, fmt(r.source_norm), fmt(r.target_norm),
               fmt(r.ratio));
  json summary = base_summary(cfg, counterexample ? "counterexample" : "embedding_sweep");
  summary["estimate"] = estimate_to_json(est);
  summary["hypothesis"] = {{"separation", c.hypothesis.separation},
                           {"conjugacy_defect", c.hypothesis.conjugacy_defect},
                           {"monotone_p", c.hypothesis.monotone_p}};
  return finish(cfg, std::move(csv), std::move(summary), t0);
}

RunOutput run_proof_check(const Config& cfg, const CommonSettings& s,
                          std::chrono::steady_clock::time_point t0) {
  const double p0 = cfg.num("proof.p0"), p1 = cfg.num("proof.p1"), q = cfg.num("proof.q");
  const double beta = cfg.num_or("proof.beta", franke_default_beta(p0, p1, q));
  const double delta = cfg.num_or("proof.delta", franke_default_delta(p0, p1, q));
  const auto fams = parse_families(cfg, s, false);

  std::string csv = kCsvHeader;
  std::vector<RatioSample> samples;
  double worst_term_bound = 0.0;
  for (int J = s.J_lo; J <= s.J_hi; ++J)
    for (const auto& fam : fams)
      for (int t = 0; t < s.trials; ++t) {
        const CoefficientField gamma =
            fam.build(J, s.seed ^ (static_cast<std::uint64_t>(J) << 32) ^
                             static_cast<std::uint64_t>(t));
        if (gamma.is_zero()) continue;
        FrankeTerms ft;
        try {
          ft = franke_terms(gamma, p0, p1, q, beta, delta, s.tol);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("proof_check: ") + e.what());
        }
        const double ratio = ft.b_norm > 0.0 ? ft.f_norm / ft.b_norm : 0.0;
        append_row(csv, "franke", J, fam.id, t, fmt(ft.b_norm), fmt(ft.f_norm), fmt(ratio),
                   fmt(ft.I), fmt(ft.II), fmt(ft.III), fmt(ft.f_norm), fmt(ft.b_norm));
        samples.push_back({J, fam.id, t, ft.b_norm, ft.f_norm, ratio});
        const double sum = ft.I + ft.II + ft.III;
        if (sum > 0.0) worst_term_bound = std::max(worst_term_bound, ft.f_norm / sum);
      }

  json summary = base_summary(cfg, "proof_check");
  summary["estimate"] = estimate_to_json(reduce_samples(samples, s.thresholds));
  summary["proof"] = {{"p0", p0},      {"p1", p1},       {"q", q},
                      {"beta", beta},  {"delta", delta},
                      {"max_f_norm_over_terms", worst_term_bound}};
  return finish(cfg, std::move(csv), std::move(summary), t0);
}

}  // namespace

int worker_count() {
  const char* env = std::getenv(kWorkersEnvVar);
  if (!env) return 1;
  const int v = std::atoi(env);
  return v < 1 ? 1 : v;
}

RunOutput run_experiment(const Config& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const CommonSettings s = parse_common(cfg);
  const std::string kind = cfg.str("experiment");
  if (kind == "norm") return run_norm(cfg, s, t0);
  if (kind == "embedding_sweep") return run_sweep(cfg, s, false, t0);
  if (kind == "counterexample") return run_sweep(cfg, s, true, t0);
  if (kind == "proof_check") return run_proof_check(cfg, s, t0);
  throw ConfigError("unknown experiment kind: " + kind);
}

RunOutput run_and_persist(const Config& cfg) {
  RunOutput out = run_experiment(cfg);
  if (!out.csv_path.empty()) {
    std::ofstream os(out.csv_path);
    if (!os) throw IoError("cannot write " + out.csv_path);
    os << out.csv;
    if (!os) throw IoError("write failed: " + out.csv_path);
  }
  if (!out.json_path.empty()) {
    std::ofstream os(out.json_path);
    if (!os) throw IoError("cannot write " + out.json_path);
    os << out.json;
    if (!os) throw IoError("write failed: " + out.json_path);
  }
  return out;
}

void validate_config(const Config& cfg) {
  const CommonSettings s = parse_common(cfg);
  const std::string kind = cfg.str("experiment");
  if (kind == "norm") {
    const CoefficientField gamma = parse_gamma(cfg, s);
    parse_space(cfg, "space", s, gamma.J_max, parse_smoothness(cfg, "space.s", s.n));
  } else if (kind == "embedding_sweep" || kind == "counterexample") {
    parse_case(cfg, s);
    parse_families(cfg, s, kind == "counterexample");
  } else if (kind == "proof_check") {
    const double p0 = cfg.num("proof.p0"), p1 = cfg.num("proof.p1"), q = cfg.num("proof.q");
    if (!(0.0 < p0 && p0 < p1 && std::isfinite(p1)))
      throw ConfigError("proof_check: need 0 < p0 < p1 < infinity");
    if (!(0.0 < q && q <= std::min(1.0, p0)))
      throw ConfigError("proof_check: need 0 < q <= min(1, p0)");
    parse_families(cfg, s, false);
  } else {
    throw ConfigError("unknown experiment kind: " + kind);
  }
}

std::string emit_plot_data(const std::string& record_path, const std::string& kind) {
  std::ifstream is(record_path);
  if (!is) throw IoError("cannot open record: " + record_path);

  if (kind == "ratio_vs_J") {
    json j;
    try {
      is >> j;
    } catch (const std::exception& e) {
      throw IoError("malformed JSON summary: " + std::string(e.what()));
    }
    if (!j.contains("estimate") || !j["estimate"].contains("per_J"))
      throw ConfigError("record has no per_J estimate data");
    std::string out = "J,sup_ratio,family_id\n";
    for (const auto& r : j["estimate"]["per_J"])
      out += std::to_string(r["J"].get<int>()) + "," + fmt(r["sup_ratio"].get<double>()) + "," +
             r["argmax"].get<std::string>() + "\n";
    return out;
  }

  if (kind == "term_decomposition") {
    std::string line;
    if (!std::getline(is, line) || line + "\n" != kCsvHeader)
      throw ConfigError("record is not a results CSV");
    std::string out = "J,I,II,III,f_norm,b_norm\n";
    while (std::getline(is, line)) {
      std::vector<std::string> cols;
      std::stringstream ss(line);
      std::string c;
      while (std::getline(ss, c, ',')) cols.push_back(c);
      cols.resize(12);
      if (cols[7].empty()) continue;  // row without term data
      out += cols[1] + "," + cols[7] + "," + cols[8] + "," + cols[9] + "," + cols[10] + "," +
             cols[11] + "\n";
    }
    return out;
  }

  if (kind == "profile") {
    GridFunction f;
    try {
      f = read_grid_function(is);
    } catch (const std::exception& e) {
      throw IoError("malformed grid function: " + std::string(e.what()));
    }
    const NonIncreasingProfile prof = rearrange_grid(f);
    std::string out = "t,value\n";
    double t = 0.0;
    for (const auto& st : prof.steps) {
      out += fmt(t) + "," + fmt(st.value) + "\n";
      t += st.measure;
    }
    out += fmt(t) + ",0\n";
    return out;
  }

  throw ConfigError("unknown plot kind: " + kind);
}

}  // namespace vex
