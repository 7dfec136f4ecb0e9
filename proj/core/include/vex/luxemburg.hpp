#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "vex/exponents.hpp"
#include "vex/grid.hpp"

namespace vex {

/// Thrown when a bracket expansion blows past 2^±128 scalings, which points at
/// an invariant violation upstream rather than a tolerance problem.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Compiled form of lambda -> rho(f / lambda):
///   sum_i weight_i * (value_i / lambda)^{p_i}  +  sup_value / lambda.
/// Terms with equal (value, p) are aggregated; zero values are dropped
/// (0^p := 0 for every p, including p = 0).
struct PowerModular {
  struct Term {
    double value;
    double p;
    double weight;
  };
  std::vector<Term> terms;
  double sup_value = 0.0;  // max of f over the p = infinity region

  double eval(double lambda) const;
  bool empty() const { return terms.empty() && sup_value == 0.0; }
  double max_value() const;
};

PowerModular compile_modular(const GridFunction& f, const ExponentFunction& p);

/// rho_{L_p(.)}(f): cell-midpoint sums over the finite-exponent cells plus the
/// exact max over the p = infinity cells.
double lebesgue_modular(const GridFunction& f, const ExponentFunction& p);

/// inf { lambda > 0 : rho(f/lambda) <= 1 } by bracket expansion and bisection
/// on the nonincreasing map lambda -> rho(f/lambda). Returns 0 for f = 0.
double luxemburg_norm(const GridFunction& f, const ExponentFunction& p, double tol = 1e-10);

/// Generic monotone solve used by the mixed modulars as well: rho must be
/// nonincreasing; returns inf { lambda > 0 : rho(lambda) <= 1 }, with 0 when
/// the set is all of (0, inf) and +inf when it is empty. `hint` is a positive
/// starting scale.
double luxemburg_solve(const std::function<double(double)>& rho, double hint, double tol);

/// Replaces p by infinity on the region (the crisp R^n_inf of the modular).
ExponentFunction with_infinity_region(const ExponentFunction& p, InfinityRegion region);

}  // namespace vex
