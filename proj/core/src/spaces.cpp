#include "vex/spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace vex {

std::string to_string(SpaceKind k) { return k == SpaceKind::besov ? "besov" : "triebel"; }

SpaceKind space_kind_from_string(const std::string& s) {
  if (s == "besov" || s == "b") return SpaceKind::besov;
  if (s == "triebel" || s == "f") return SpaceKind::triebel;
  throw std::invalid_argument("unknown space kind: " + s);
}

void SpaceSpec::validate() const {
  if (!(p.declared_inf > 0.0)) throw std::invalid_argument("SpaceSpec: p^- must be positive");
  if (!(q.declared_inf > 0.0)) throw std::invalid_argument("SpaceSpec: q^- must be positive");
  if (kind == SpaceKind::triebel) {
    if (std::isinf(p.declared_sup))
      throw std::invalid_argument("SpaceSpec: triebel requires p^+ < infinity");
    if (!q.is_constant() && std::isinf(q.declared_sup))
      throw std::invalid_argument("SpaceSpec: triebel with variable unbounded q is not supported");
  }
  if (!q.is_constant() && std::isinf(q.declared_sup))
    throw std::invalid_argument("SpaceSpec: variable q with q^+ = infinity is not supported");
}

SpaceSpec make_space(SpaceKind kind, const ExponentFunction& p, const ExponentFunction& q,
                     const SmoothnessFunction& s, int J_max, const Box& box) {
  SpaceSpec spec;
  spec.kind = kind;
  spec.p = p;
  spec.q = q;
  spec.weight = weights_from_smoothness(s, J_max, box);
  spec.validate();
  return spec;
}

GridFunction synthesize_level(const CoefficientField& gamma, int j, const WeightSequence& w,
                              int L) {
  if (j < 0 || j > gamma.J_max)
    throw std::invalid_argument("synthesize_level: level out of range");
  if (L < j) throw std::invalid_argument("synthesize_level: grid level L must be >= j");
  if (j > w.J_max()) throw std::invalid_argument("synthesize_level: weight sequence too short");

  const int n = gamma.dim;
  GridFunction g(gamma.box, L);
  const std::size_t span = std::size_t{1} << (L - j);  // cells per axis under one cube

  std::vector<std::size_t> idx(n), rel(n);
  for (const auto& e : gamma.rows[j].entries) {
    if (e.value == 0.0) continue;
    // first grid cell of Q_{j,m}: m * 2^{L-j} - lo * 2^L per axis
    std::vector<long long> start(n);
    for (int a = 0; a < n; ++a)
      start[a] = (static_cast<long long>(e.m[a]) << (L - j)) -
                 (static_cast<long long>(gamma.box.lo[a]) << L);
    std::fill(rel.begin(), rel.end(), 0);
    for (;;) {
      for (int a = 0; a < n; ++a) idx[a] = static_cast<std::size_t>(start[a]) + rel[a];
      const std::size_t flat = g.layout.flatten(idx);
      g.values[flat] = e.value * w(j, g.layout.midpoint(flat));
      int a = n - 1;
      while (a >= 0 && ++rel[a] == span) rel[a--] = 0;
      if (a < 0) break;
    }
  }
  return g;
}

LevelSequence synthesize_all(const CoefficientField& gamma, const WeightSequence& w, int L) {
  std::vector<GridFunction> levels;
  levels.reserve(gamma.J_max + 1);
  for (int j = 0; j <= gamma.J_max; ++j) levels.push_back(synthesize_level(gamma, j, w, L));
  return LevelSequence(std::move(levels));
}

double space_norm(const CoefficientField& gamma, const SpaceSpec& spec, int L, double tol) {
  spec.validate();
  if (L < gamma.J_max) throw std::invalid_argument("space_norm: L must be >= J_max");
  if (gamma.J_max > spec.weight.J_max())
    throw std::invalid_argument("space_norm: weight sequence shorter than J_max");
  const LevelSequence fs = synthesize_all(gamma, spec.weight, L);
  return spec.kind == SpaceKind::besov ? besov_mixed_norm(fs, spec.p, spec.q, tol)
                                       : triebel_mixed_norm(fs, spec.p, spec.q, tol);
}

int default_grid_level(const CoefficientField& gamma, const SpaceSpec& spec) {
  return spec.constant_exponents() ? gamma.J_max : gamma.J_max + 2;
}

}  // namespace vex
