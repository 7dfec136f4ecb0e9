#include "vex/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace vex {

namespace {

double norm2(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dist(const Point& x, const Point& y) {
  double s = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) s += (x[a] - y[a]) * (x[a] - y[a]);
  return std::sqrt(s);
}

double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

// All sample points of the estimation grid: `samples` per axis, capped so the
// total stays tractable in n >= 2.
std::vector<Point> sample_grid(const Box& box, int samples) {
  const int n = box.dim();
  int per_axis = samples;
  while (n >= 2 && std::pow(static_cast<double>(per_axis), n) > 4096.0 && per_axis > 2)
    --per_axis;
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

}  // namespace

ExponentFunction ExponentFunction::constant(int n, double v) {
  if (v <= 0.0) throw std::invalid_argument("ExponentFunction::constant: need v > 0");
  return ExponentFunction{[v](const Point&) { return v; }, v, v, v, n};
}

SmoothnessFunction SmoothnessFunction::constant(int n, double v) {
  return SmoothnessFunction{[v](const Point&) { return v; }, v, v, n};
}

double eval_exponent(const ExponentFunction& g, const Point& x) { return g.eval(x); }
double eval_exponent(const SmoothnessFunction& g, const Point& x) { return g.eval(x); }

LogHolderReport estimate_log_holder(const std::function<double(const Point&)>& g,
                                    const Box& box, int samples,
                                    std::optional<double> g_inf) {
  if (samples < 2) throw std::invalid_argument("estimate_log_holder: samples >= 2 required");
  const int n = box.dim();
  auto pts = sample_grid(box, samples);

  // quasi-random pair pool, fixed seed
  std::mt19937_64 rng(0x1f2e3d4c5b6a7988ULL);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::pair<Point, Point>> pairs;
  const int pool = std::max(256, samples * samples / 4);
  for (int k = 0; k < pool; ++k) {
    Point x(n), y(n);
    for (int a = 0; a < n; ++a) {
      x[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * u(rng);
      y[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * u(rng);
    }
    pairs.emplace_back(std::move(x), std::move(y));
  }
  // grid-neighbour pairs (consecutive points of the flattened grid are
  // neighbours along the last axis; add axis-0 strides as well)
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) pairs.emplace_back(pts[i], pts[i + 1]);

  LogHolderReport rep;
  const double e = std::exp(1.0);
  double best = -1.0;
  std::pair<Point, Point> best_pair;
  for (const auto& [x, y] : pairs) {
    const double d = dist(x, y);
    if (d <= 0.0) continue;
    const double gx = g(x), gy = g(y);
    if (std::isinf(gx) || std::isinf(gy))
      throw std::domain_error("estimate_log_holder: function evaluates to infinity (check 1/p)");
    const double ratio = std::abs(gx - gy) * std::log(e + 1.0 / d);
    if (ratio > best) {
      best = ratio;
      best_pair = {x, y};
    }
  }
  rep.c_loc = std::max(best, 0.0);
  if (best >= 0.0) rep.witness_pairs.push_back(best_pair);

  if (g_inf) {
    rep.g_inf = *g_inf;
    double ci = 0.0;
    for (const auto& x : pts) {
      const double gx = g(x);
      if (std::isinf(gx))
        throw std::domain_error("estimate_log_holder: function evaluates to infinity (check 1/p)");
      ci = std::max(ci, std::abs(gx - *g_inf) * std::log(e + norm2(x)));
    }
    rep.c_inf = ci;
  }
  return rep;
}

LogHolderReport estimate_log_holder(const ExponentFunction& g, const Box& box, int samples) {
  return estimate_log_holder(g.eval, box, samples, g.limit_at_infinity);
}

LogHolderReport estimate_log_holder(const SmoothnessFunction& g, const Box& box, int samples) {
  return estimate_log_holder(g.eval, box, samples, std::nullopt);
}

ExponentFamily exponent_family_from_string(const std::string& name) {
  if (name == "constant") return ExponentFamily::constant;
  if (name == "log_perturbed") return ExponentFamily::log_perturbed;
  if (name == "sigmoid_step") return ExponentFamily::sigmoid_step;
  if (name == "bump") return ExponentFamily::bump;
  throw std::invalid_argument("unknown exponent family: " + name);
}

std::string to_string(ExponentFamily family) {
  switch (family) {
    case ExponentFamily::constant: return "constant";
    case ExponentFamily::log_perturbed: return "log_perturbed";
    case ExponentFamily::sigmoid_step: return "sigmoid_step";
    case ExponentFamily::bump: return "bump";
  }
  return "?";
}

namespace {

struct FamilyData {
  std::function<double(const Point&)> eval;
  double inf, sup;
  std::optional<double> at_infinity;
};

FamilyData build_family(ExponentFamily family, const FamilyParams& p) {
  const double e = std::exp(1.0);
  const double c = p.scale;
  switch (family) {
    case ExponentFamily::constant:
      return {[v = c * p.value](const Point&) { return v; }, c * p.value, c * p.value,
              c * p.value};
    case ExponentFamily::log_perturbed: {
      // base + amplitude / log(e + |x|): maximum at the origin, tends to base
      auto f = [base = p.base, amp = p.amplitude, c, e](const Point& x) {
        return c * (base + amp / std::log(e + norm2(x)));
      };
      return {f, c * p.base, c * (p.base + p.amplitude), c * p.base};
    }
    case ExponentFamily::sigmoid_step: {
      auto f = [lo = p.lo, hi = p.hi, w = p.width, c](const Point& x) {
        return c * (lo + (hi - lo) * sigmoid(x[0] / w));
      };
      return {f, c * std::min(p.lo, p.hi), c * std::max(p.lo, p.hi), std::nullopt};
    }
    case ExponentFamily::bump: {
      auto f = [base = p.base, amp = p.amplitude, w = p.width, c](const Point& x) {
        const double r = norm2(x);
        return c * (base + amp * std::exp(-r * r / (w * w)));
      };
      return {f, c * std::min(p.base, p.base + p.amplitude),
              c * std::max(p.base, p.base + p.amplitude), c * p.base};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ExponentFunction make_standard_exponent(int n, ExponentFamily family, const FamilyParams& params) {
  auto d = build_family(family, params);
  if (d.inf <= 0.0)
    throw std::invalid_argument("make_standard_exponent: parameters give p^- <= 0");
  return ExponentFunction{std::move(d.eval), d.inf, d.sup, d.at_infinity, n};
}

SmoothnessFunction make_standard_smoothness(int n, ExponentFamily family,
                                            const FamilyParams& params) {
  auto d = build_family(family, params);
  return SmoothnessFunction{std::move(d.eval), d.inf, d.sup, n};
}

SmoothnessFunction conjugate_smoothness(const SmoothnessFunction& s0,
                                        const ExponentFunction& p0,
                                        const ExponentFunction& p1,
                                        const Box& box, int samples) {
  if (std::isinf(p0.declared_sup) || std::isinf(p1.declared_sup))
    throw std::invalid_argument("conjugate_smoothness: p0, p1 must be finite-valued");
  const int n = s0.dim;
  auto eval = [s = s0.eval, a = p0.eval, b = p1.eval, n](const Point& x) {
    return s(x) - n / a(x) + n / b(x);
  };
  double lo = kInf, hi = -kInf;
  for (const auto& x : sample_grid(box, std::max(2, samples))) {
    const double v = eval(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return SmoothnessFunction{std::move(eval), lo, hi, n};
}

double separation_inf(const SmoothnessFunction& a, const SmoothnessFunction& b,
                      const Box& box, int samples) {
  if (a.dim != b.dim) throw std::invalid_argument("separation_inf: dimension mismatch");
  double best = kInf;
  for (const auto& x : sample_grid(box, std::max(2, samples))) best = std::min(best, a(x) - b(x));
  return best;
}

ExponentFunction scale_exponent(const ExponentFunction& p, double c) {
  if (c <= 0.0) throw std::invalid_argument("scale_exponent: need c > 0");
  ExponentFunction out;
  out.eval = [f = p.eval, c](const Point& x) { return c * f(x); };
  out.declared_inf = c * p.declared_inf;
  out.declared_sup = c * p.declared_sup;
  if (p.limit_at_infinity) out.limit_at_infinity = c * *p.limit_at_infinity;
  out.dim = p.dim;
  return out;
}

}  // namespace vex
