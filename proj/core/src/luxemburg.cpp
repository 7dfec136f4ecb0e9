#include "vex/luxemburg.hpp"

#include <algorithm>
#include <cmath>

namespace vex {

double PowerModular::eval(double lambda) const {
  double s = 0.0;
  for (const Term& t : terms) s += t.weight * std::pow(t.value / lambda, t.p);
  if (sup_value > 0.0) s += sup_value / lambda;
  return s;
}

double PowerModular::max_value() const {
  double m = sup_value;
  for (const Term& t : terms) m = std::max(m, t.value);
  return m;
}

PowerModular compile_modular(const GridFunction& f, const ExponentFunction& p) {
  PowerModular m;
  const double vol = f.layout.cell_volume();
  m.terms.reserve(64);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double v = f.values[i];
    if (v == 0.0) continue;  // 0^p := 0
    const double pe = p(f.layout.midpoint(i));
    if (std::isinf(pe)) {
      m.sup_value = std::max(m.sup_value, v);
      continue;
    }
    if (!(pe > 0.0)) throw std::invalid_argument("compile_modular: exponent must be positive");
    m.terms.push_back({v, pe, vol});
  }
  // aggregate equal (value, exponent) pairs; collapses constant-exponent
  // synthesized fields to a handful of terms
  std::sort(m.terms.begin(), m.terms.end(), [](const auto& a, const auto& b) {
    return a.value != b.value ? a.value < b.value : a.p < b.p;
  });
  std::vector<PowerModular::Term> packed;
  for (const auto& t : m.terms) {
    if (!packed.empty() && packed.back().value == t.value && packed.back().p == t.p)
      packed.back().weight += t.weight;
    else
      packed.push_back(t);
  }
  m.terms = std::move(packed);
  return m;
}

double lebesgue_modular(const GridFunction& f, const ExponentFunction& p) {
  f.check_nonnegative();
  return compile_modular(f, p).eval(1.0);
}

double luxemburg_solve(const std::function<double(double)>& rho, double hint, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("luxemburg_solve: tol in (0,1)");
  if (!(hint > 0.0)) throw std::invalid_argument("luxemburg_solve: hint must be positive");
  if (rho(1e-300) <= 1.0) return 0.0;  // whole ray admissible: infimum 0
  double hi = std::isfinite(hint) ? hint : 1e300;
  int steps = 0;
  while (rho(hi) > 1.0) {
    hi *= 2.0;
    if (!std::isfinite(hi)) return kInf;  // admissible set beyond double range
    if (++steps > 128) {
      if (rho(1e300) > 1.0) return kInf;
      throw NumericError("luxemburg_solve: bracket expansion exceeded 2^128");
    }
  }
  double lo = hi / 2.0;
  if (steps == 0) {
    // hint already admissible: walk down to an inadmissible lambda
    while (rho(lo) <= 1.0) {
      hi = lo;
      lo /= 2.0;
      if (++steps > 128)
        throw NumericError("luxemburg_solve: bracket shrink exceeded 2^-128");
    }
  }
  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (rho(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

double luxemburg_norm(const GridFunction& f, const ExponentFunction& p, double tol) {
  f.check_nonnegative();
  const PowerModular m = compile_modular(f, p);
  if (m.empty()) return 0.0;
  return luxemburg_solve([&m](double lam) { return m.eval(lam); }, m.max_value(), tol);
}

ExponentFunction with_infinity_region(const ExponentFunction& p, InfinityRegion region) {
  ExponentFunction out = p;
  out.eval = [base = p.eval, r = std::move(region)](const Point& x) {
    return r.contains(x) ? kInf : base(x);
  };
  out.declared_sup = kInf;
  return out;
}

}  // namespace vex
