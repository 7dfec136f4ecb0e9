#pragma once

#include <vector>

#include "vex/coefficients.hpp"
#include "vex/grid.hpp"

namespace vex {

/// Non-increasing rearrangement h* of a step function, as (value, measure)
/// pairs with strictly decreasing values. Represents the right-continuous step
/// function on (0, total_measure).
struct NonIncreasingProfile {
  struct Step {
    double value;
    double measure;
  };
  std::vector<Step> steps;
  double total_measure = 0.0;

  /// || h* | L_p(0, inf) ||; p = infinity gives h*(0+).
  double lp_norm(double p) const;
  double value_at(double t) const;
  /// mu { h* > lambda }
  double measure_above(double lambda) const;
};

NonIncreasingProfile rearrange_grid(const GridFunction& f);

/// Descending sort of row j of the coefficient field. The induced step
/// function uses breakpoints 2^{-jn} l.
std::vector<double> rearrange_row(const CoefficientField& gamma, int j);

NonIncreasingProfile row_profile(const CoefficientField& gamma, int j);

struct SubadditivityReport {
  double lhs;  // || h1 + h2 | L_p ||
  double rhs;  // || h1* + h2* | L_p(0, inf) ||
  bool holds;  // rhs - lhs >= -1e-12
};

/// Lemma-style check || h1 + h2 ||_p <= || h1* + h2* ||_p for p >= 1.
/// Both sides exact for step functions; rejects p < 1.
SubadditivityReport check_subadditivity(const GridFunction& h1, const GridFunction& h2, double p);

}  // namespace vex
