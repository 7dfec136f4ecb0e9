#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vex/geometry.hpp"

namespace vex {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Variable exponent p : R^n -> (0, inf]. Values are produced by the
/// evaluator; the declared bounds are the essential inf/sup the caller
/// asserts (and the invariant checks sample against).
struct ExponentFunction {
  std::function<double(const Point&)> eval;
  double declared_inf = 0.0;                    // p^-
  double declared_sup = kInf;                   // p^+
  std::optional<double> limit_at_infinity;      // p_inf
  int dim = 1;

  double operator()(const Point& x) const { return eval(x); }
  bool is_constant() const { return declared_inf == declared_sup; }

  static ExponentFunction constant(int n, double v);
};

/// Smoothness function s : R^n -> R.
struct SmoothnessFunction {
  std::function<double(const Point&)> eval;
  double declared_inf = 0.0;  // s^-
  double declared_sup = 0.0;  // s^+
  int dim = 1;

  double operator()(const Point& x) const { return eval(x); }
  bool is_constant() const { return declared_inf == declared_sup; }

  static SmoothnessFunction constant(int n, double v);
};

struct LogHolderReport {
  double c_loc = 0.0;   // sup |g(x)-g(y)| * log(e + 1/|x-y|)
  double c_inf = 0.0;   // sup |g(x)-g_inf| * log(e + |x|), 0 if no limit given
  double g_inf = 0.0;
  std::vector<std::pair<Point, Point>> witness_pairs;
};

double eval_exponent(const ExponentFunction& g, const Point& x);
double eval_exponent(const SmoothnessFunction& g, const Point& x);

/// Estimates the local log-Hoelder constant of g over the box. Pairs are all
/// grid neighbours plus a deterministic quasi-random pool (fixed seed), so the
/// estimate is monotone in `samples`. Throws std::domain_error if g evaluates
/// to infinity at a sampled point (check 1/p instead).
LogHolderReport estimate_log_holder(const std::function<double(const Point&)>& g,
                                    const Box& box, int samples,
                                    std::optional<double> g_inf = std::nullopt);
LogHolderReport estimate_log_holder(const ExponentFunction& g, const Box& box, int samples);
LogHolderReport estimate_log_holder(const SmoothnessFunction& g, const Box& box, int samples);

enum class ExponentFamily { constant, log_perturbed, sigmoid_step, bump };

ExponentFamily exponent_family_from_string(const std::string& name);
std::string to_string(ExponentFamily family);

/// Parameters for the standard families. Meaning per family:
///   constant:      value
///   log_perturbed: base + amplitude / log(e + |x|)
///   sigmoid_step:  lo + (hi-lo) * sigmoid(x_1 / width)
///   bump:          base + amplitude * exp(-|x|^2 / width^2)
/// `scale` multiplies the final value (default 1).
struct FamilyParams {
  double value = 2.0;
  double base = 0.0;
  double amplitude = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double width = 1.0;
  double scale = 1.0;
};

ExponentFunction make_standard_exponent(int n, ExponentFamily family, const FamilyParams& params);
SmoothnessFunction make_standard_smoothness(int n, ExponentFamily family, const FamilyParams& params);

/// s1(x) = s0(x) - n/p0(x) + n/p1(x); the Sobolev trade-off holds pointwise
/// exactly. Bounds of the result are estimated on the given box.
SmoothnessFunction conjugate_smoothness(const SmoothnessFunction& s0,
                                        const ExponentFunction& p0,
                                        const ExponentFunction& p1,
                                        const Box& box, int samples = 129);

/// min over the sample grid of a(x) - b(x).
double separation_inf(const SmoothnessFunction& a, const SmoothnessFunction& b,
                      const Box& box, int samples);

/// Scales an exponent pointwise: x -> c * p(x).
ExponentFunction scale_exponent(const ExponentFunction& p, double c);

}  // namespace vex
