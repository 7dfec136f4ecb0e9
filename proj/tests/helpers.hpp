#pragma once

#include <cmath>
#include <random>

#include "vex/spaces.hpp"

namespace th {

inline vex::GridFunction random_grid(std::mt19937_64& rng, const vex::Box& box, int level,
                                     double zero_prob = 0.3, double max_v = 3.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  vex::GridFunction f(box, level);
  for (auto& v : f.values) v = u(rng) < zero_prob ? 0.0 : u(rng) * max_v;
  return f;
}

/// Sparse random coefficients on cubes inside [0,1]^n.
inline vex::CoefficientField random_field(std::mt19937_64& rng, int n, int J,
                                          const vex::Box& box, int per_level = 6) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  vex::CoefficientField g(n, J, box);
  for (int j = 0; j <= J; ++j) {
    std::uniform_int_distribution<int> pos(0, (1 << j) - 1);
    std::vector<int> m(n);
    for (int t = 0; t < per_level; ++t) {
      for (int a = 0; a < n; ++a) m[a] = pos(rng);
      g.set(j, m, 0.05 + u(rng));
    }
  }
  return g;
}

/// (sum |f_c|^p vol)^{1/p} for constant p; the classical oracle.
inline double lp_closed_form(const vex::GridFunction& f, double p) {
  const double vol = f.layout.cell_volume();
  if (std::isinf(p)) return f.max_value();
  double s = 0.0;
  for (double v : f.values)
    if (v > 0.0) s += std::pow(v, p) * vol;
  return std::pow(s, 1.0 / p);
}

}  // namespace th
