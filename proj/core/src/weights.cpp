#include "vex/weights.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vex {

namespace {

std::vector<Point> grid_points(const Box& box, int per_axis) {
  const int n = box.dim();
  std::vector<std::size_t> idx(n, 0);
  std::vector<Point> pts;
  for (;;) {
    Point x(n);
    for (int a = 0; a < n; ++a)
      x[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * static_cast<double>(idx[a]) / (per_axis - 1);
    pts.push_back(std::move(x));
    int a = n - 1;
    while (a >= 0 && ++idx[a] == static_cast<std::size_t>(per_axis)) idx[a--] = 0;
    if (a < 0) break;
  }
  return pts;
}

double dist(const Point& x, const Point& y) {
  double s = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) s += (x[a] - y[a]) * (x[a] - y[a]);
  return std::sqrt(s);
}

}  // namespace

WeightSequence weights_from_smoothness(const SmoothnessFunction& s, int J_max,
                                       const Box& box, int samples) {
  if (J_max < 0) throw std::invalid_argument("weights_from_smoothness: J_max >= 0 required");
  WeightSequence ws;
  ws.w.reserve(J_max + 1);
  for (int j = 0; j <= J_max; ++j)
    ws.w.push_back([j, f = s.eval](const Point& x) { return std::exp2(j * f(x)); });
  ws.alpha1 = s.declared_inf;
  ws.alpha2 = s.declared_sup;
  ws.alpha = s.is_constant() ? 0.0 : estimate_log_holder(s, box, samples).c_loc;
  ws.provenance = WeightSequence::Provenance::from_smoothness;
  return ws;
}

WeightReport validate_weights(const WeightSequence& w, const Box& box, int samples) {
  if (samples < 2) throw std::invalid_argument("validate_weights: samples >= 2 required");
  WeightReport rep;
  int per_axis = samples;
  while (box.dim() >= 2 && std::pow(static_cast<double>(per_axis), box.dim()) > 2048.0 &&
         per_axis > 2)
    --per_axis;
  const auto pts = grid_points(box, per_axis);

  // (i): c = sup w_j(x) / (w_j(y) (1 + 2^j |x-y|)^alpha), grid pairs plus a
  // seeded random pool
  std::mt19937_64 rng(0x77aa55cc33ee1100ULL);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) pairs.emplace_back(i, i + 1);
  for (int k = 0; k < 512; ++k) pairs.emplace_back(pick(rng), pick(rng));

  for (int j = 0; j <= w.J_max(); ++j) {
    const double twoj = std::exp2(j);
    for (const auto& [ia, ib] : pairs) {
      if (ia == ib) continue;
      const double wx = w(j, pts[ia]);
      const double wy = w(j, pts[ib]);
      if (!(wx > 0.0) || !(wy > 0.0)) {
        rep.violations.push_back({j, pts[ia], "weight not positive"});
        continue;
      }
      const double bound = wy * std::pow(1.0 + twoj * dist(pts[ia], pts[ib]), w.alpha);
      rep.c_estimate = std::max(rep.c_estimate, wx / bound);
    }
  }

  // (ii): 2^{alpha1} w_j <= w_{j+1} <= 2^{alpha2} w_j pointwise
  const double slack = 1e-9;
  for (int j = 0; j + 1 <= w.J_max(); ++j) {
    const double lo = std::exp2(w.alpha1);
    const double hi = std::exp2(w.alpha2);
    for (const auto& x : pts) {
      const double a = w(j, x);
      const double b = w(j + 1, x);
      if (b < lo * a * (1.0 - slack) || b > hi * a * (1.0 + slack)) {
        std::ostringstream msg;
        msg << "level growth out of [2^a1, 2^a2]: w_{j+1}/w_j = " << b / a;
        rep.violations.push_back({j, x, msg.str()});
      }
    }
  }
  return rep;
}

}  // namespace vex
