#include "vex/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vex/exponents.hpp"

namespace vex {

double NonIncreasingProfile::lp_norm(double p) const {
  if (std::isinf(p)) return steps.empty() ? 0.0 : steps.front().value;
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm: p must be positive");
  double s = 0.0;
  for (const auto& st : steps)
    if (st.value > 0.0) s += std::pow(st.value, p) * st.measure;
  return std::pow(s, 1.0 / p);
}

double NonIncreasingProfile::value_at(double t) const {
  double acc = 0.0;
  for (const auto& st : steps) {
    acc += st.measure;
    if (t < acc) return st.value;
  }
  return 0.0;
}

double NonIncreasingProfile::measure_above(double lambda) const {
  double acc = 0.0;
  for (const auto& st : steps) {
    if (st.value > lambda)
      acc += st.measure;
    else
      break;
  }
  return acc;
}

namespace {

NonIncreasingProfile profile_from_pairs(std::vector<std::pair<double, double>> vm) {
  std::sort(vm.begin(), vm.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  NonIncreasingProfile prof;
  for (const auto& [v, mu] : vm) {
    prof.total_measure += mu;
    if (!prof.steps.empty() && prof.steps.back().value == v)
      prof.steps.back().measure += mu;
    else
      prof.steps.push_back({v, mu});
  }
  return prof;
}

}  // namespace

NonIncreasingProfile rearrange_grid(const GridFunction& f) {
  f.check_nonnegative();
  const double vol = f.layout.cell_volume();
  std::vector<std::pair<double, double>> vm;
  vm.reserve(f.values.size());
  for (double v : f.values) vm.emplace_back(v, vol);
  return profile_from_pairs(std::move(vm));
}

std::vector<double> rearrange_row(const CoefficientField& gamma, int j) {
  return gamma.row_values(j);
}

NonIncreasingProfile row_profile(const CoefficientField& gamma, int j) {
  const auto vals = gamma.row_values(j);
  const double mu = std::ldexp(1.0, -j * gamma.dim);  // |Q_{j,m}| = 2^{-jn}
  std::vector<std::pair<double, double>> vm;
  vm.reserve(vals.size());
  for (double v : vals) vm.emplace_back(v, mu);
  return profile_from_pairs(std::move(vm));
}

SubadditivityReport check_subadditivity(const GridFunction& h1, const GridFunction& h2, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("check_subadditivity: requires p >= 1");
  if (!(h1.layout == h2.layout))
    throw std::invalid_argument("check_subadditivity: layout mismatch");
  h1.check_nonnegative();
  h2.check_nonnegative();

  const auto p1 = rearrange_grid(h1);
  const auto p2 = rearrange_grid(h2);

  SubadditivityReport rep{};
  if (std::isinf(p)) {
    rep.lhs = (h1 + h2).max_value();
    rep.rhs = p1.lp_norm(kInf) + p2.lp_norm(kInf);
  } else {
    rep.lhs = rearrange_grid(h1 + h2).lp_norm(p);
    // integrate (h1* + h2*)^p over merged breakpoints; both are step functions
    // with finitely many jumps
    std::vector<double> cuts{0.0};
    double acc = 0.0;
    for (const auto& st : p1.steps) cuts.push_back(acc += st.measure);
    acc = 0.0;
    for (const auto& st : p2.steps) cuts.push_back(acc += st.measure);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
      const double v = p1.value_at(mid) + p2.value_at(mid);
      if (v > 0.0) s += std::pow(v, p) * (cuts[i + 1] - cuts[i]);
    }
    rep.rhs = std::pow(s, 1.0 / p);
  }
  rep.holds = rep.rhs - rep.lhs >= -1e-12;
  return rep;
}

}  // namespace vex
