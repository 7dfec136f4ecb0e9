#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vex/exponents.hpp"
#include "vex/geometry.hpp"

namespace vex {

/// 2-microlocal admissible weight sequence (w_j)_{j=0..J_max} with the class
/// parameters alpha >= 0 and alpha1 <= alpha2. The admissibility conditions
/// are checked by validate_weights, not assumed.
struct WeightSequence {
  enum class Provenance { from_smoothness, explicit_weights };

  std::vector<std::function<double(const Point&)>> w;
  double alpha = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  Provenance provenance = Provenance::explicit_weights;

  int J_max() const { return static_cast<int>(w.size()) - 1; }
  double operator()(int j, const Point& x) const { return w[j](x); }
};

/// w_j(x) = 2^{j s(x)}, with alpha1 = s^-, alpha2 = s^+ and alpha estimated as
/// the local log-Hoelder constant of s.
WeightSequence weights_from_smoothness(const SmoothnessFunction& s, int J_max,
                                       const Box& box = Box::cube(1, -2, 2),
                                       int samples = 33);

struct WeightViolation {
  int j;
  Point x;
  std::string detail;
};

struct WeightReport {
  double c_estimate = 0.0;  // best constant in the (1 + 2^j|x-y|)^alpha bound
  std::vector<WeightViolation> violations;
  bool admissible() const { return violations.empty(); }
};

/// Estimates the constant of condition (i) over sampled pairs and checks the
/// level-growth condition (ii) pointwise on the grid. Violations are data.
WeightReport validate_weights(const WeightSequence& w, const Box& box, int samples);

}  // namespace vex
