#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vex/rearrange.hpp"
#include "vex/spaces.hpp"

namespace vex {

struct HypothesisReport {
  double separation = 0.0;       // inf (s0 - s1) on the sample grid
  double conjugacy_defect = 0.0; // max |(s0 - n/p0) - (s1 - n/p1)|
  bool monotone_p = false;       // p0 <= p1 pointwise on the grid
  bool conjugate() const { return conjugacy_defect <= 1e-12; }
};

struct EmbeddingCase {
  SpaceSpec source;
  SpaceSpec target;
  ExponentFunction p0, p1;
  SmoothnessFunction s0, s1;
  Box box;
  HypothesisReport hypothesis;
};

EmbeddingCase make_embedding_case(SpaceKind kind0, const ExponentFunction& p0,
                                  const ExponentFunction& q0, const SmoothnessFunction& s0,
                                  SpaceKind kind1, const ExponentFunction& p1,
                                  const ExponentFunction& q1, const SmoothnessFunction& s1,
                                  const Box& box, int J_max);

enum class Verdict { bounded, growing, inconclusive };
std::string to_string(Verdict v);

struct VerdictThresholds {
  double bounded_slope = 0.02;  // log2 slope per level
  double growing_slope = 0.1;
};

struct ConstantEstimate {
  struct PerJ {
    int J;
    double sup_ratio;
    std::string argmax;  // "family#trial" of the maximizing generator
  };
  std::vector<PerJ> per_J;
  double overall_sup = 0.0;
  double growth_slope = 0.0;  // least-squares slope of log2 sup_ratio vs J
  Verdict verdict = Verdict::inconclusive;
  VerdictThresholds thresholds;
  int skipped_samples = 0;
};

struct GeneratorFamily {
  std::string id;
  std::string description;
  std::function<CoefficientField(int J, std::uint64_t seed)> build;
};

/// single_coefficient, flat_row, lacunary_diagonal, random_sparse,
/// rearrangement_extremal. The box must contain [0,2] x [0,1]^{n-1}.
std::vector<GeneratorFamily> standard_families(int n, const Box& box);

/// Concentrates unit mass at level J on the cube containing `focus`
/// (for counterexample search around the point where s0 - s1 degenerates).
GeneratorFamily gap_chaser_family(int n, const Box& box, const Point& focus);

GeneratorFamily find_family(const std::vector<GeneratorFamily>& fams, const std::string& id);

struct GridLevelPolicy {
  bool automatic = true;  // L = J (+2 when any exponent is variable)
  int fixed_level = 0;
  int level_for(const CoefficientField& gamma, const EmbeddingCase& c) const;
};

/// target_norm / source_norm; rejects zero fields and vanishing source norms.
double embedding_ratio(const CoefficientField& gamma, const EmbeddingCase& c, int L, double tol);

struct RatioSample {
  int J;
  std::string family;
  int trial;
  double source_norm;
  double target_norm;
  double ratio;
};

/// One embedding_ratio evaluation per (J, family, trial); failed samples are
/// dropped (count reported via `skipped`). Deterministic under fixed seed for
/// any worker count.
std::vector<RatioSample> sweep_samples(const EmbeddingCase& c,
                                       const std::vector<GeneratorFamily>& families, int J_lo,
                                       int J_hi, int trials, const GridLevelPolicy& policy,
                                       double tol, std::uint64_t seed = 0, int workers = 1,
                                       int* skipped = nullptr);

/// Per-J maximization, slope fit, and verdict over sweep samples.
ConstantEstimate reduce_samples(const std::vector<RatioSample>& samples,
                                VerdictThresholds thresholds = {}, int skipped = 0);

/// Maximizes embedding_ratio over families x trials for each J, fits the
/// growth slope, derives the verdict. Deterministic under fixed seed.
ConstantEstimate estimate_constant(const EmbeddingCase& c,
                                   const std::vector<GeneratorFamily>& families, int J_lo,
                                   int J_hi, int trials, const GridLevelPolicy& policy,
                                   double tol, std::uint64_t seed = 0,
                                   VerdictThresholds thresholds = {}, int workers = 1);

/// Runs estimate_constant on a separation-zero case with the families biased
/// toward the degeneracy (callers prepend gap_chaser_family).
ConstantEstimate counterexample_search(const EmbeddingCase& c,
                                       const std::vector<GeneratorFamily>& families, int J_lo,
                                       int J_hi, int trials, double tol,
                                       std::uint64_t seed = 0, VerdictThresholds thresholds = {});

// ---- proof-term machinery (constant-exponent Franke decomposition) ----

struct FrankeTerms {
  double I, II, III;
  double f_norm;  // || gamma | f^0_{p1,q} ||
  double b_norm;  // || gamma | b^{n(1/p0-1/p1)}_{p0,p1} ||
};

/// Proof-term decomposition over the rearranged rows. Requires
/// 0 < p0 < p1 < inf, 0 < q <= min(1, p0), beta in the admissible range of
/// both Hoelder steps and delta > 0.
FrankeTerms franke_terms(const CoefficientField& gamma, double p0, double p1, double q,
                         double beta, double delta, double tol = 1e-10);

double franke_default_beta(double p0, double p1, double q);
double franke_default_delta(double p0, double p1, double q);

// ---- Jawerth chain ----

struct JawerthChainReport {
  std::array<double, 4> norms;   // f^{s0}_{p0,q}, f^{s0}_{p0,inf}, intermediate b, b^{s1}_{p1,p0}
  std::array<double, 3> ratios;  // consecutive quotients
  double end_to_end;
  double modular_bound;  // left side of the key modular estimate (normalized h)
  double term_I, term_II;
  double aux_norm;  // Luxemburg norm of the auxiliary sup-function h
};

JawerthChainReport jawerth_chain(const CoefficientField& gamma, const ExponentFunction& p0,
                                 const ExponentFunction& p1, const ExponentFunction& q,
                                 const SmoothnessFunction& s0, const SmoothnessFunction& s1,
                                 double eps, int L, double tol = 1e-10);

/// Admissible default eps = p1^- * inf(s0 - s1) / (2n).
double jawerth_default_eps(const ExponentFunction& p1, const SmoothnessFunction& s0,
                           const SmoothnessFunction& s1, const Box& box, int n);

// ---- auxiliary rearrangement inequality ----

struct AuxInequalityReport {
  double lhs;      // truncated dyadic-infimum sum
  double l1_norm;  // || phi | L_1 ||
  double ratio;    // lhs / l1_norm (0 when phi = 0)
};

AuxInequalityReport check_aux_inequality(const GridFunction& phi, double eps, int J_cap);

// ---- variable-exponent Franke reduction ----

struct FrankeVariableReport {
  bool accepted = false;
  double normalization_factor = 1.0;  // divide gamma by this to normalize
  std::vector<double> level_mass;     // per-level modular mass
  std::vector<double> level_bound;    // 2^{-j n eps}
  bool levels_ok = false;
  double term_I = 0.0, term_I_bound = 0.0;
  double beta_f_norm = 0.0, beta_b_norm = 0.0;  // constant-index reduction pair
  double target_norm = 0.0;                     // || gamma | f^0_{p1, p1/r} ||
  double target_lr_value = 0.0;                 // || sum gamma^{p1/r} chi | L_r ||
};

FrankeVariableReport franke_variable_check(const CoefficientField& gamma,
                                           const ExponentFunction& p0,
                                           const ExponentFunction& p1,
                                           const SmoothnessFunction& s0,
                                           const SmoothnessFunction& s1, int r, double eps,
                                           int L, double tol = 1e-10);

int franke_default_r(const ExponentFunction& p0, const ExponentFunction& p1);

/// Sobolev step b^{s0}_{p0,q} -> b^{s1}_{p1,q}: a single embedding ratio.
double sobolev_check(const CoefficientField& gamma, const ExponentFunction& p0,
                     const ExponentFunction& p1, const ExponentFunction& q,
                     const SmoothnessFunction& s0, const SmoothnessFunction& s1, int L,
                     double tol = 1e-10);

}  // namespace vex
