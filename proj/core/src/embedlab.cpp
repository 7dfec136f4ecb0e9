#include "vex/embedlab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace vex {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double unit_double(std::uint64_t& state) {
  state = splitmix64(state);
  return static_cast<double>(state >> 11) * 0x1.0p-53;
}

std::vector<Point> sample_grid(const Box& box, int per_axis) {
  const int n = box.dim();
  std::vector<Point> pts;
  std::vector<int> idx(n, 0);
  for (;;) {
    Point x(n);
    for (int a = 0; a < n; ++a)
      x[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * idx[a] / double(per_axis - 1);
    pts.push_back(std::move(x));
    int a = n - 1;
    while (a >= 0 && ++idx[a] == per_axis) idx[a--] = 0;
    if (a < 0) break;
  }
  return pts;
}

// Applies fn(flat_cell_index, midpoint) over the level-L cells of Q_{j,m}.
template <typename Fn>
void for_each_cell_in_cube(const GridLayout& layout, int j, const std::vector<int>& m, Fn&& fn) {
  const int n = layout.dim();
  const int L = layout.level;
  const std::size_t span = std::size_t{1} << (L - j);
  std::vector<long long> start(n);
  for (int a = 0; a < n; ++a)
    start[a] = (static_cast<long long>(m[a]) << (L - j)) -
               (static_cast<long long>(layout.box.lo[a]) << L);
  std::vector<std::size_t> rel(n, 0), idx(n);
  for (;;) {
    for (int a = 0; a < n; ++a) idx[a] = static_cast<std::size_t>(start[a]) + rel[a];
    const std::size_t flat = layout.flatten(idx);
    fn(flat, layout.midpoint(flat));
    int a = n - 1;
    while (a >= 0 && ++rel[a] == span) rel[a--] = 0;
    if (a < 0) break;
  }
}

Point cube_center(int j, const std::vector<int>& m) {
  Point x(m.size());
  for (std::size_t a = 0; a < m.size(); ++a) x[a] = std::ldexp(m[a] + 0.5, -j);
  return x;
}

SmoothnessFunction sampled_smoothness(std::function<double(const Point&)> eval, const Box& box,
                                      int n, int per_axis = 65) {
  double lo = kInf, hi = -kInf;
  for (const auto& x : sample_grid(box, per_axis)) {
    const double v = eval(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  SmoothnessFunction s;
  s.eval = std::move(eval);
  s.declared_inf = lo;
  s.declared_sup = hi;
  s.dim = n;
  return s;
}

}  // namespace

EmbeddingCase make_embedding_case(SpaceKind kind0, const ExponentFunction& p0,
                                  const ExponentFunction& q0, const SmoothnessFunction& s0,
                                  SpaceKind kind1, const ExponentFunction& p1,
                                  const ExponentFunction& q1, const SmoothnessFunction& s1,
                                  const Box& box, int J_max) {
  EmbeddingCase c;
  c.p0 = p0;
  c.p1 = p1;
  c.s0 = s0;
  c.s1 = s1;
  c.box = box;
  c.source = make_space(kind0, p0, q0, s0, J_max, box);
  c.target = make_space(kind1, p1, q1, s1, J_max, box);

  const int n = box.dim();
  double sep = kInf, defect = 0.0;
  bool mono = true;
  for (const auto& x : sample_grid(box, 33)) {
    const double a0 = p0(x), a1 = p1(x);
    sep = std::min(sep, s0(x) - s1(x));
    defect = std::max(defect, std::abs((s0(x) - n / a0) - (s1(x) - n / a1)));
    if (a0 > a1 + 1e-12) mono = false;
  }
  c.hypothesis = {sep, defect, mono};
  return c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::growing: return "growing";
    default: return "inconclusive";
  }
}

std::vector<GeneratorFamily> standard_families(int n, const Box& box) {
  std::vector<GeneratorFamily> fams;

  fams.push_back({"single_coefficient", "one unit coefficient at (J, 0)",
                  [n, box](int J, std::uint64_t) {
                    CoefficientField g(n, J, box);
                    g.set(J, std::vector<int>(n, 0), 1.0);
                    return g;
                  }});

  fams.push_back({"flat_row", "all unit coefficients of level J inside [0,1]^n",
                  [n, box](int J, std::uint64_t) {
                    CoefficientField g(n, J, box);
                    std::vector<int> m(n, 0);
                    for (;;) {
                      g.set(J, m, 1.0);
                      int a = n - 1;
                      while (a >= 0 && ++m[a] == (1 << J)) m[a--] = 0;
                      if (a < 0) break;
                    }
                    return g;
                  }});

  fams.push_back({"lacunary_diagonal", "one unit per level on disjoint columns",
                  [n, box](int J, std::uint64_t) {
                    CoefficientField g(n, J, box);
                    for (int j = 0; j <= J; ++j) {
                      std::vector<int> m(n, 0);
                      m[0] = (1 << (j + 1)) - 2;  // Q_{j,m} = [2-2^{1-j}, 2-2^{-j}) x ...
                      g.set(j, m, 1.0);
                    }
                    return g;
                  }});

  fams.push_back({"random_sparse", "up to 32 random coefficients on one random level in [0,1]^n",
                  [n, box](int J, std::uint64_t seed) {
                    CoefficientField g(n, J, box);
                    std::uint64_t st = seed ? seed : 1;
                    const int j = static_cast<int>(unit_double(st) * (J + 1));
                    const long long side = 1ll << j;
                    const long long cubes = 1ll << (j * n);
                    const int count = static_cast<int>(std::min<long long>(32, cubes));
                    std::vector<int> m(n);
                    for (int t = 0; t < count; ++t) {
                      for (int a = 0; a < n; ++a)
                        m[a] = static_cast<int>(unit_double(st) * side);
                      g.set(j, m, 0.01 + 0.99 * unit_double(st));
                    }
                    return g;
                  }});

  fams.push_back({"rearrangement_extremal",
                  "geometrically decaying row at level J so the dyadic-index "
                  "samples gamma*_{j,2^{ln}} stay active",
                  [n, box](int J, std::uint64_t) {
                    CoefficientField g(n, J, box);
                    const long long row = std::min<long long>(1ll << J, 64);
                    std::vector<int> m(n, 0);
                    for (long long i = 0; i < row; ++i) {
                      m[0] = static_cast<int>(i);
                      g.set(J, m, std::exp2(-0.5 * static_cast<double>(i)));
                    }
                    return g;
                  }});

  return fams;
}

GeneratorFamily gap_chaser_family(int n, const Box& box, const Point& focus) {
  return {"gap_chaser", "unit mass at level J on the cube containing the focus point",
          [n, box, focus](int J, std::uint64_t) {
            CoefficientField g(n, J, box);
            std::vector<int> m(n);
            for (int a = 0; a < n; ++a) {
              const long long lo = static_cast<long long>(box.lo[a]) << J;
              const long long hi = (static_cast<long long>(box.hi[a]) << J) - 1;
              long long i = static_cast<long long>(std::floor(std::ldexp(focus[a], J)));
              m[a] = static_cast<int>(std::clamp(i, lo, hi));
            }
            g.set(J, m, 1.0);
            return g;
          }};
}

GeneratorFamily find_family(const std::vector<GeneratorFamily>& fams, const std::string& id) {
  for (const auto& f : fams)
    if (f.id == id) return f;
  throw std::invalid_argument("unknown generator family: " + id);
}

int GridLevelPolicy::level_for(const CoefficientField& gamma, const EmbeddingCase& c) const {
  if (!automatic) return std::max(fixed_level, gamma.J_max);
  const bool constant = c.source.constant_exponents() && c.target.constant_exponents();
  return constant ? gamma.J_max : gamma.J_max + 2;
}

double embedding_ratio(const CoefficientField& gamma, const EmbeddingCase& c, int L,
                       double tol) {
  if (gamma.is_zero()) throw std::invalid_argument("embedding_ratio: zero coefficient field");
  const double src = space_norm(gamma, c.source, L, tol);
  if (src < 1e-300) throw NumericError("embedding_ratio: source norm vanished");
  return space_norm(gamma, c.target, L, tol) / src;
}

namespace {

double fit_slope(const std::vector<ConstantEstimate::PerJ>& per_J) {
  // least squares of log2(sup_ratio) against J
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (const auto& r : per_J) {
    if (!(r.sup_ratio > 0.0)) continue;
    const double x = r.J, y = std::log2(r.sup_ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  if (k < 2) return 0.0;
  const double den = k * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (k * sxy - sx * sy) / den;
}

}  // namespace

std::vector<RatioSample> sweep_samples(const EmbeddingCase& c,
                                       const std::vector<GeneratorFamily>& families, int J_lo,
                                       int J_hi, int trials, const GridLevelPolicy& policy,
                                       double tol, std::uint64_t seed, int workers,
                                       int* skipped) {
  if (J_lo > J_hi) throw std::invalid_argument("sweep_samples: empty J range");
  if (trials < 1) throw std::invalid_argument("sweep_samples: trials must be >= 1");
  if (families.empty()) throw std::invalid_argument("sweep_samples: no generator families");

  struct Task {
    int J;
    const GeneratorFamily* fam;
    int trial;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int J = J_lo; J <= J_hi; ++J)
    for (const auto& fam : families) {
      const std::uint64_t fam_seed = splitmix64(seed ^ fnv1a(fam.id));
      for (int t = 0; t < trials; ++t)
        tasks.push_back({J, &fam, t,
                         splitmix64(fam_seed ^ (static_cast<std::uint64_t>(J) << 32) ^
                                    static_cast<std::uint64_t>(t))});
    }

  std::vector<RatioSample> slots(tasks.size());
  std::vector<signed char> ok(tasks.size(), 0);
  const auto eval = [&](std::size_t i) {
    const Task& tk = tasks[i];
    try {
      const CoefficientField gamma = tk.fam->build(tk.J, tk.seed);
      if (gamma.is_zero()) {
        ok[i] = -1;  // silently empty, not a failure
        return;
      }
      const int L = policy.level_for(gamma, c);
      const double src = space_norm(gamma, c.source, L, tol);
      if (src < 1e-300) throw NumericError("sweep_samples: source norm vanished");
      const double tgt = space_norm(gamma, c.target, L, tol);
      slots[i] = {tk.J, tk.fam->id, tk.trial, src, tgt, tgt / src};
      ok[i] = 1;
    } catch (const std::exception&) {
      ok[i] = 0;
    }
  };

  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) eval(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<int>(workers, static_cast<int>(tasks.size()));
    for (int w = 0; w < count; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) eval(i);
      });
    for (auto& th : pool) th.join();
  }

  std::vector<RatioSample> out;
  int failures = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (ok[i] == 1)
      out.push_back(std::move(slots[i]));
    else if (ok[i] == 0)
      ++failures;
  }
  if (skipped) *skipped = failures;
  return out;
}

ConstantEstimate reduce_samples(const std::vector<RatioSample>& samples,
                                VerdictThresholds thresholds, int skipped) {
  ConstantEstimate est;
  est.thresholds = thresholds;
  est.skipped_samples = skipped;
  for (const auto& s : samples) {
    if (est.per_J.empty() || est.per_J.back().J != s.J) est.per_J.push_back({s.J, 0.0, ""});
    auto& row = est.per_J.back();
    if (s.ratio > row.sup_ratio) {
      row.sup_ratio = s.ratio;
      row.argmax = s.family + "#" + std::to_string(s.trial);
    }
    est.overall_sup = std::max(est.overall_sup, s.ratio);
  }

  est.growth_slope = fit_slope(est.per_J);
  bool monotone = true;
  for (std::size_t i = 1; i < est.per_J.size(); ++i)
    if (est.per_J[i].sup_ratio < est.per_J[i - 1].sup_ratio * (1.0 - 1e-9)) monotone = false;
  if (est.growth_slope <= thresholds.bounded_slope)
    est.verdict = Verdict::bounded;
  else if (est.growth_slope >= thresholds.growing_slope && monotone)
    est.verdict = Verdict::growing;
  else
    est.verdict = Verdict::inconclusive;
  return est;
}

ConstantEstimate estimate_constant(const EmbeddingCase& c,
                                   const std::vector<GeneratorFamily>& families, int J_lo,
                                   int J_hi, int trials, const GridLevelPolicy& policy,
                                   double tol, std::uint64_t seed, VerdictThresholds thresholds,
                                   int workers) {
  int skipped = 0;
  const auto samples =
      sweep_samples(c, families, J_lo, J_hi, trials, policy, tol, seed, workers, &skipped);
  return reduce_samples(samples, thresholds, skipped);
}

ConstantEstimate counterexample_search(const EmbeddingCase& c,
                                       const std::vector<GeneratorFamily>& families, int J_lo,
                                       int J_hi, int trials, double tol, std::uint64_t seed,
                                       VerdictThresholds thresholds) {
  if (c.hypothesis.separation > 1e-9)
    throw std::invalid_argument("counterexample_search: case has positive separation");
  if (c.hypothesis.separation < -1e-9)
    throw std::invalid_argument("counterexample_search: needs pointwise s0 >= s1");
  return estimate_constant(c, families, J_lo, J_hi, trials, GridLevelPolicy{}, tol, seed,
                           thresholds);
}

// ---- constant-exponent Franke proof terms ----

FrankeTerms franke_terms(const CoefficientField& gamma, double p0, double p1, double q,
                         double beta, double delta, double tol) {
  if (!(0.0 < p0 && p0 < p1 && std::isfinite(p1)))
    throw std::invalid_argument("franke_terms: need 0 < p0 < p1 < infinity");
  if (!(0.0 < q && q <= std::min(1.0, p0)))
    throw std::invalid_argument("franke_terms: need 0 < q <= min(1, p0)");
  const double beta_cap = std::min(q * (1.0 / p0 - 1.0 / p1), q / p1);
  if (!(0.0 < beta && beta < beta_cap))
    throw std::invalid_argument("franke_terms: beta outside the admissible range");
  const double delta_cap = q / p0 - q / p1;
  if (!(0.0 < delta && delta <= delta_cap + 1e-12))
    throw std::invalid_argument("franke_terms: delta outside the admissible range");

  const int n = gamma.dim;
  const int J = gamma.J_max;
  std::vector<std::vector<double>> star(J + 1);
  std::size_t max_row = 0;
  for (int j = 0; j <= J; ++j) {
    star[j] = gamma.row_values(j);
    max_row = std::max(max_row, star[j].size());
  }
  const auto at = [&](int j, long long l) {
    return l < static_cast<long long>(star[j].size()) ? star[j][l] : 0.0;
  };
  // gamma*_{j, 2^{(j-k)n}}; zero once the index overflows the finite support
  const auto at_dyadic = [&](int j, int k) {
    const long long e = static_cast<long long>(j - k) * n;
    if (e > 62) return 0.0;
    return at(j, 1ll << e);
  };

  const double pq = p1 / q;

  // I: k <= 0, truncated where 2^{(j-k)n} clears every row
  double Ip = 0.0;
  for (int k = 0;; --k) {
    double inner = 0.0;
    bool alive = false;
    for (int j = 0; j <= J; ++j) {
      const long long e = static_cast<long long>(j - k) * n;
      if (e <= 62 && (std::size_t{1} << e) < std::max<std::size_t>(max_row, 1)) alive = true;
      const double v = at_dyadic(j, k);
      if (v > 0.0) inner += std::pow(v, q);
    }
    if (inner > 0.0) Ip += std::ldexp(std::pow(inner, pq), -k * n);
    if (!alive) break;
  }

  // II: k = 1..J+1 explicit, then the inner sum saturates and the k-tail is
  // geometric
  double IIp = 0.0;
  double S = 0.0;
  for (int k = 1; k <= J + 1; ++k) {
    const double v = at(k - 1, 0);
    if (v > 0.0) S += std::pow(v, q);
    if (S > 0.0) IIp += std::ldexp(std::pow(S, pq), -k * n);
  }
  if (S > 0.0)
    IIp += std::pow(S, pq) * std::ldexp(1.0, -(J + 2) * n) / (1.0 - std::ldexp(1.0, -n));

  // III: k = 1..J (inner sum over j = k..J is empty afterwards)
  double IIIp = 0.0;
  for (int k = 1; k <= J; ++k) {
    double inner = 0.0;
    for (int j = k; j <= J; ++j) {
      const double v = at_dyadic(j, k);
      if (v > 0.0) inner += std::pow(v, q);
    }
    if (inner > 0.0) IIIp += std::ldexp(std::pow(inner, pq), -k * n);
  }

  FrankeTerms t{};
  t.I = std::pow(Ip, 1.0 / p1);
  t.II = std::pow(IIp, 1.0 / p1);
  t.III = std::pow(IIIp, 1.0 / p1);

  const auto pc = [&](double v) { return ExponentFunction::constant(n, v); };
  const double s_b = n * (1.0 / p0 - 1.0 / p1);
  t.f_norm = space_norm(gamma,
                        make_space(SpaceKind::triebel, pc(p1), pc(q),
                                   SmoothnessFunction::constant(n, 0.0), J, gamma.box),
                        J, tol);
  t.b_norm = space_norm(gamma,
                        make_space(SpaceKind::besov, pc(p0), pc(p1),
                                   SmoothnessFunction::constant(n, s_b), J, gamma.box),
                        J, tol);
  return t;
}

double franke_default_beta(double p0, double p1, double q) {
  return 0.5 * std::min(q * (1.0 / p0 - 1.0 / p1), q / p1);
}

double franke_default_delta(double p0, double p1, double q) { return q / p0 - q / p1; }

// ---- Jawerth chain ----

double jawerth_default_eps(const ExponentFunction& p1, const SmoothnessFunction& s0,
                           const SmoothnessFunction& s1, const Box& box, int n) {
  const double sep = separation_inf(s0, s1, box, 65);
  if (!(sep > 0.0)) throw std::invalid_argument("jawerth_default_eps: needs s0 - s1 > 0");
  return p1.declared_inf * sep / (2.0 * n);
}

JawerthChainReport jawerth_chain(const CoefficientField& gamma, const ExponentFunction& p0,
                                 const ExponentFunction& p1, const ExponentFunction& q,
                                 const SmoothnessFunction& s0, const SmoothnessFunction& s1,
                                 double eps, int L, double tol) {
  if (gamma.is_zero()) throw std::invalid_argument("jawerth_chain: zero coefficient field");
  if (!(eps > 0.0)) throw std::invalid_argument("jawerth_chain: eps must be positive");
  const int n = gamma.dim;
  const Box& box = gamma.box;
  for (const auto& x : sample_grid(box, 33))
    if (!((1.0 + eps) * p0(x) < p1(x)))
      throw std::invalid_argument("jawerth_chain: eps inadmissible, (1+eps)p0 !< p1");

  const int J = gamma.J_max;
  const SmoothnessFunction s_mid = conjugate_smoothness(s0, p0, scale_exponent(p0, 1.0 + eps), box);

  JawerthChainReport rep{};
  const SpaceSpec chain[4] = {
      make_space(SpaceKind::triebel, p0, q, s0, J, box),
      make_space(SpaceKind::triebel, p0, ExponentFunction::constant(n, kInf), s0, J, box),
      make_space(SpaceKind::besov, scale_exponent(p0, 1.0 + eps), p0, s_mid, J, box),
      make_space(SpaceKind::besov, p1, p0, s1, J, box)};
  for (int i = 0; i < 4; ++i) rep.norms[i] = space_norm(gamma, chain[i], L, tol);
  for (int i = 0; i < 3; ++i) rep.ratios[i] = rep.norms[i + 1] / rep.norms[i];
  rep.end_to_end = rep.norms[3] / rep.norms[0];

  // auxiliary h(x) = sup_{j,m} 2^{(jn/p0(x)) eps/(1+eps)} gamma_{j,m} chi_{j,m}
  const SmoothnessFunction s_aux = sampled_smoothness(
      [p0, n, eps](const Point& x) { return (n / p0(x)) * eps / (1.0 + eps); }, box, n);
  const WeightSequence w_aux = weights_from_smoothness(s_aux, J, box);
  const LevelSequence lifted = synthesize_all(gamma, w_aux, L);
  GridFunction h(box, L);
  for (const auto& g : lifted.levels)
    for (std::size_t i = 0; i < h.values.size(); ++i)
      h.values[i] = std::max(h.values[i], g.values[i]);

  rep.aux_norm = luxemburg_norm(h, p0, tol);
  if (rep.aux_norm > 0.0) h.scale(1.0 / rep.aux_norm);

  // cube infima h_{j,m} and the modular-bound split at h_{j,m} = 1
  const double vol = h.layout.cell_volume();
  for (int j = 0; j <= J; ++j) {
    const GridLayout cubes(box, j);
    std::vector<double> inf_c(cubes.total, kInf);
    for (std::size_t i = 0; i < h.values.size(); ++i) {
      auto idx = h.layout.unflatten(i);
      for (int a = 0; a < n; ++a) idx[a] >>= (L - j);
      const std::size_t ci = cubes.flatten(idx);
      inf_c[ci] = std::min(inf_c[ci], h.values[i]);
    }
    double sum_le = 0.0, sum_gt = 0.0;
    for (std::size_t i = 0; i < h.values.size(); ++i) {
      auto idx = h.layout.unflatten(i);
      for (int a = 0; a < n; ++a) idx[a] >>= (L - j);
      const double hc = inf_c[cubes.flatten(idx)];
      if (hc <= 0.0) continue;
      const double term = std::pow(hc, (1.0 + eps) * p0(h.layout.midpoint(i))) * vol;
      (hc <= 1.0 ? sum_le : sum_gt) += term;
    }
    const double scale = std::exp2(-j * n * eps / (1.0 + eps));
    if (sum_le > 0.0) rep.term_I += scale * std::pow(sum_le, 1.0 / (1.0 + eps));
    if (sum_gt > 0.0) rep.term_II += scale * std::pow(sum_gt, 1.0 / (1.0 + eps));
  }
  rep.modular_bound = rep.term_I + rep.term_II;
  return rep;
}

AuxInequalityReport check_aux_inequality(const GridFunction& phi, double eps, int J_cap) {
  if (!(eps > 0.0)) throw std::invalid_argument("check_aux_inequality: eps must be positive");
  if (J_cap < 0) throw std::invalid_argument("check_aux_inequality: negative J cap");
  phi.check_nonnegative();

  const int n = phi.dim();
  const int L = phi.layout.level;
  const double vol = phi.layout.cell_volume();

  AuxInequalityReport rep{};
  for (double v : phi.values) rep.l1_norm += v * vol;

  // for j >= L every cube lies inside one cell, so the braced sum is constant
  double deep_brace = 0.0;
  for (double v : phi.values)
    if (v > 0.0) deep_brace += std::pow(v, 1.0 + eps) * vol;

  for (int j = 0; j <= J_cap; ++j) {
    double brace;
    if (j >= L) {
      brace = deep_brace;
    } else {
      const GridLayout cubes(phi.layout.box, j);
      std::vector<double> inf_c(cubes.total, kInf);
      for (std::size_t i = 0; i < phi.values.size(); ++i) {
        auto idx = phi.layout.unflatten(i);
        for (int a = 0; a < n; ++a) idx[a] >>= (L - j);
        const std::size_t ci = cubes.flatten(idx);
        inf_c[ci] = std::min(inf_c[ci], phi.values[i]);
      }
      brace = 0.0;
      const double cube_vol = std::exp2(-static_cast<double>(j) * n);
      for (double c : inf_c)
        if (c > 0.0) brace += std::pow(c, 1.0 + eps) * cube_vol;
    }
    if (brace > 0.0)
      rep.lhs += std::exp2(-j * n * eps / (1.0 + eps)) * std::pow(brace, 1.0 / (1.0 + eps));
  }
  rep.ratio = rep.l1_norm > 0.0 ? rep.lhs / rep.l1_norm : 0.0;
  return rep;
}

// ---- variable-exponent Franke reduction ----

int franke_default_r(const ExponentFunction& p0, const ExponentFunction& p1) {
  const double cap = std::min(1.0, p0.declared_inf);
  return std::max(2, static_cast<int>(std::ceil(p1.declared_sup / cap)));
}

FrankeVariableReport franke_variable_check(const CoefficientField& gamma,
                                           const ExponentFunction& p0,
                                           const ExponentFunction& p1,
                                           const SmoothnessFunction& s0,
                                           const SmoothnessFunction& s1, int r, double eps,
                                           int L, double tol) {
  const int n = gamma.dim;
  const Box& box = gamma.box;
  if (r < 2) throw std::invalid_argument("franke_variable_check: r must be >= 2");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("franke_variable_check: eps must lie in (0,1)");
  if (std::isinf(p1.declared_sup))
    throw std::invalid_argument("franke_variable_check: requires p1^+ < infinity");
  for (const auto& x : sample_grid(box, 33)) {
    if (!((1.0 - eps) * p1(x) > p0(x)))
      throw std::invalid_argument("franke_variable_check: eps inadmissible, (1-eps)p1 !> p0");
    if (std::abs((s0(x) - n / p0(x)) - (s1(x) - n / p1(x))) > 1e-9)
      throw std::invalid_argument("franke_variable_check: pair is not conjugate");
  }
  if (!(separation_inf(s0, s1, box, 33) > 0.0))
    throw std::invalid_argument("franke_variable_check: needs inf(s0 - s1) > 0");

  const int J = gamma.J_max;
  FrankeVariableReport rep;

  // normalization hypothesis against the (1-eps)-shifted b-space
  const SmoothnessFunction s_eps = sampled_smoothness(
      [p1, n, eps](const Point& x) { return n * eps / ((1.0 - eps) * p1(x)); }, box, n);
  const SpaceSpec src = make_space(SpaceKind::besov, scale_exponent(p1, 1.0 - eps), p1, s_eps,
                                   J, box);
  rep.normalization_factor = space_norm(gamma, src, L, tol);
  rep.accepted = rep.normalization_factor <= 1.0 + 1e-9;
  if (!rep.accepted) return rep;

  // per-level modular inequality
  const GridLayout fine(box, L);
  const double vol = fine.cell_volume();
  rep.levels_ok = true;
  for (int j = 0; j <= J; ++j) {
    double mass = 0.0;
    for (const auto& e : gamma.rows[j].entries) {
      if (e.value == 0.0) continue;
      for_each_cell_in_cube(fine, j, e.m, [&](std::size_t, const Point& x) {
        mass += std::pow(e.value, (1.0 - eps) * p1(x)) * vol;
      });
    }
    const double bound = std::exp2(-static_cast<double>(j) * n * eps);
    rep.level_mass.push_back(mass);
    rep.level_bound.push_back(bound);
    if (mass > bound * (1.0 + 1e-9)) rep.levels_ok = false;
  }

  // term I: small coefficients, L_r norm of the stacked p1(.)/r powers
  GridFunction small(box, L), all(box, L);
  CoefficientField beta(n, J, box);
  for (int j = 0; j <= J; ++j) {
    for (const auto& e : gamma.rows[j].entries) {
      if (e.value == 0.0) continue;
      for_each_cell_in_cube(fine, j, e.m, [&](std::size_t flat, const Point& x) {
        const double v = std::pow(e.value, p1(x) / r);
        all.values[flat] += v;
        if (e.value <= 1.0) small.values[flat] += v;
      });
      if (e.value > 1.0) {
        const double p_jm = p1(cube_center(j, e.m));
        beta.set(j, e.m, std::pow(e.value, p_jm / r));  // beta = alpha^{1/r}
      }
    }
  }
  const ExponentFunction rc = ExponentFunction::constant(n, static_cast<double>(r));
  rep.term_I = luxemburg_norm(small, rc, tol);
  for (int j = 0; j <= J; ++j)
    rep.term_I_bound += std::exp2(-static_cast<double>(j) * n * eps / r);

  // term II reduction to the constant-index case
  if (!beta.is_zero()) {
    rep.beta_f_norm = space_norm(
        beta,
        make_space(SpaceKind::triebel, rc, ExponentFunction::constant(n, 1.0),
                   SmoothnessFunction::constant(n, 0.0), J, box),
        L, tol);
    rep.beta_b_norm = space_norm(
        beta,
        make_space(SpaceKind::besov, ExponentFunction::constant(n, (1.0 - eps) * r), rc,
                   SmoothnessFunction::constant(n, n * eps / (r * (1.0 - eps))), J, box),
        L, tol);
  }

  rep.target_norm = space_norm(
      gamma,
      make_space(SpaceKind::triebel, p1, scale_exponent(p1, 1.0 / r),
                 SmoothnessFunction::constant(n, 0.0), J, box),
      L, tol);
  rep.target_lr_value = luxemburg_norm(all, rc, tol);
  return rep;
}

double sobolev_check(const CoefficientField& gamma, const ExponentFunction& p0,
                     const ExponentFunction& p1, const ExponentFunction& q,
                     const SmoothnessFunction& s0, const SmoothnessFunction& s1, int L,
                     double tol) {
  const int n = gamma.dim;
  for (const auto& x : sample_grid(gamma.box, 33)) {
    if (p0(x) > p1(x) + 1e-12)
      throw std::invalid_argument("sobolev_check: needs pointwise p0 <= p1");
    if (std::abs((s0(x) - n / p0(x)) - (s1(x) - n / p1(x))) > 1e-9)
      throw std::invalid_argument("sobolev_check: pair is not conjugate");
  }
  const EmbeddingCase c = make_embedding_case(SpaceKind::besov, p0, q, s0, SpaceKind::besov,
                                              p1, q, s1, gamma.box, gamma.J_max);
  return embedding_ratio(gamma, c, L, tol);
}

}  // namespace vex
