#include "vex/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vex {

LevelSequence::LevelSequence(std::vector<GridFunction> ls) : levels(std::move(ls)) {
  for (std::size_t v = 1; v < levels.size(); ++v)
    if (!(levels[v].layout == levels[0].layout))
      throw std::invalid_argument("LevelSequence: all levels must share box and grid level");
  for (const auto& f : levels) f.check_nonnegative();
}

bool LevelSequence::is_zero() const {
  for (const auto& f : levels)
    if (!f.is_zero()) return false;
  return true;
}

LevelSequence& LevelSequence::scale(double c) {
  for (auto& f : levels) f.scale(c);
  return *this;
}

namespace {

void check_q(const ExponentFunction& q) {
  if (!(q.declared_inf > 0.0)) throw std::invalid_argument("mixed norm: q^- must be positive");
  if (!q.is_constant() && std::isinf(q.declared_sup))
    throw std::invalid_argument("mixed norm: variable q with q^+ = infinity is not supported");
}

struct CellTerm {
  double f;  // cell value
  double p;  // finite exponent at the midpoint
  double e;  // p/q at the midpoint (0 when q = infinity there)
  double w;  // cell volume, aggregated
};

struct SupTerm {
  double f;
  double invq;  // 1/q at the midpoint (0 when q = infinity there)
};

// Compiled inner modular of one level:
//   rho(mu, lam) = sum w * (f/mu)^p * lam^-e  +  max (f/mu) * lam^-invq.
struct LevelTerms {
  std::vector<CellTerm> terms;
  std::vector<SupTerm> sups;
  double fmax = 0.0;
  mutable double warm = 0.0;  // bracket reuse across outer mu steps
};

LevelTerms compile_level(const GridFunction& f, const ExponentFunction& p,
                         const ExponentFunction& q) {
  LevelTerms lt;
  const double vol = f.layout.cell_volume();
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double v = f.values[i];
    if (v == 0.0) continue;
    const Point x = f.layout.midpoint(i);
    const double pe = p(x);
    const double qe = q(x);
    if (!(qe > 0.0)) throw std::invalid_argument("mixed norm: q(x) must be positive");
    lt.fmax = std::max(lt.fmax, v);
    if (std::isinf(pe)) {
      lt.sups.push_back({v, std::isinf(qe) ? 0.0 : 1.0 / qe});
      continue;
    }
    if (!(pe > 0.0)) throw std::invalid_argument("mixed norm: p(x) must be positive");
    lt.terms.push_back({v, pe, std::isinf(qe) ? 0.0 : pe / qe, vol});
  }
  std::sort(lt.terms.begin(), lt.terms.end(), [](const CellTerm& a, const CellTerm& b) {
    if (a.f != b.f) return a.f < b.f;
    if (a.p != b.p) return a.p < b.p;
    return a.e < b.e;
  });
  std::vector<CellTerm> packed;
  for (const auto& t : lt.terms) {
    if (!packed.empty() && packed.back().f == t.f && packed.back().p == t.p &&
        packed.back().e == t.e)
      packed.back().w += t.w;
    else
      packed.push_back(t);
  }
  lt.terms = std::move(packed);
  return lt;
}

// inf { lam > 0 : rho(mu, lam) <= 1 } for one compiled level.
double level_infimum(const LevelTerms& lt, double mu, double tol) {
  if (lt.terms.empty() && lt.sups.empty()) return 0.0;
  std::vector<double> c(lt.terms.size());
  for (std::size_t i = 0; i < lt.terms.size(); ++i)
    c[i] = lt.terms[i].w * std::pow(lt.terms[i].f / mu, lt.terms[i].p);
  std::vector<double> s(lt.sups.size());
  for (std::size_t i = 0; i < lt.sups.size(); ++i) s[i] = lt.sups[i].f / mu;

  auto rho = [&](double lam) {
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * std::pow(lam, -lt.terms[i].e);
    double sup = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
      sup = std::max(sup, s[i] * std::pow(lam, -lt.sups[i].invq));
    return acc + sup;
  };

  // per-term balance scales are a lower bound for the infimum and give a
  // bracket-friendly hint; the warm value from the previous outer mu step is
  // only trusted within a bounded factor of that balance
  double balance = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (lt.terms[i].e > 0.0 && c[i] > 0.0)
      balance = std::max(balance, std::pow(c[i], 1.0 / lt.terms[i].e));
  for (std::size_t i = 0; i < s.size(); ++i)
    if (lt.sups[i].invq > 0.0 && s[i] > 0.0)
      balance = std::max(balance, std::pow(s[i], 1.0 / lt.sups[i].invq));
  if (!std::isfinite(balance)) balance = 1e300;
  double hint = balance > 0.0 ? balance : 1.0;  // lambda-independent: solve handles it
  if (lt.warm > hint) hint = std::min(lt.warm, hint * 1e18);
  const double lam = luxemburg_solve(rho, hint, tol);
  if (lam > 0.0 && std::isfinite(lam)) lt.warm = lam;
  return lam;
}

struct BesovEvaluator {
  std::vector<LevelTerms> levels;
  double fmax = 0.0;

  BesovEvaluator(const LevelSequence& fs, const ExponentFunction& p, const ExponentFunction& q) {
    levels.reserve(fs.size());
    for (const auto& f : fs.levels) {
      levels.push_back(compile_level(f, p, q));
      fmax = std::max(fmax, levels.back().fmax);
    }
  }

  double modular(double mu, double tol) const {
    double acc = 0.0;
    for (const auto& lt : levels) {
      const double v = level_infimum(lt, mu, tol);
      if (std::isinf(v)) return kInf;
      acc += v;
    }
    return acc;
  }
};

// nested (inner-infimum) route for one level: bisect lam directly on the
// lebesgue modular of x -> f(x) * lam^{-1/q(x)}.
double nested_level_infimum(const GridFunction& f, const ExponentFunction& p,
                            const ExponentFunction& q, double tol) {
  if (f.is_zero()) return 0.0;
  std::vector<double> invq(f.values.size(), 0.0), pv(f.values.size(), 0.0);
  double hint = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i] == 0.0) continue;
    const Point x = f.layout.midpoint(i);
    const double qe = q(x);
    if (!(qe > 0.0)) throw std::invalid_argument("mixed norm: q(x) must be positive");
    pv[i] = p(x);
    if (!(pv[i] > 0.0)) throw std::invalid_argument("mixed norm: p(x) must be positive");
    invq[i] = std::isinf(qe) ? 0.0 : 1.0 / qe;
    if (!std::isinf(qe)) hint = std::max(hint, std::pow(f.values[i], qe));
  }
  if (hint <= 0.0) hint = 1.0;
  const double vol = f.layout.cell_volume();
  auto rho = [&](double lam) {
    double acc = 0.0, sup = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      if (f.values[i] == 0.0) continue;
      const double v = f.values[i] * std::pow(lam, -invq[i]);
      if (std::isinf(pv[i]))
        sup = std::max(sup, v);
      else
        acc += vol * std::pow(v, pv[i]);
    }
    return acc + sup;
  };
  return luxemburg_solve(rho, hint, tol);
}

}  // namespace

double besov_mixed_modular(const LevelSequence& fs, const ExponentFunction& p,
                           const ExponentFunction& q, double tol, BesovRoute route) {
  check_q(q);
  if (route == BesovRoute::nested) {
    double acc = 0.0;
    for (const auto& f : fs.levels) {
      const double v = nested_level_infimum(f, p, q, tol);
      if (std::isinf(v)) return kInf;
      acc += v;
    }
    return acc;
  }
  BesovEvaluator ev(fs, p, q);
  return ev.modular(1.0, tol);
}

double besov_mixed_norm(const LevelSequence& fs, const ExponentFunction& p,
                        const ExponentFunction& q, double tol) {
  check_q(q);
  if (fs.is_zero()) return 0.0;
  BesovEvaluator ev(fs, p, q);
  return luxemburg_solve([&](double mu) { return ev.modular(mu, tol); }, ev.fmax, tol);
}

double triebel_mixed_norm(const LevelSequence& fs, const ExponentFunction& p,
                          const ExponentFunction& q, double tol) {
  check_q(q);
  if (fs.levels.empty()) return 0.0;
  GridFunction inner(fs.levels[0].layout.box, fs.levels[0].layout.level);
  for (std::size_t i = 0; i < inner.values.size(); ++i) {
    bool any = false;
    for (const auto& f : fs.levels)
      if (f.values[i] != 0.0) {
        any = true;
        break;
      }
    if (!any) continue;
    const double qe = q(inner.layout.midpoint(i));
    if (!(qe > 0.0)) throw std::invalid_argument("mixed norm: q(x) must be positive");
    double v = 0.0;
    if (std::isinf(qe)) {
      for (const auto& f : fs.levels) v = std::max(v, f.values[i]);
    } else {
      for (const auto& f : fs.levels) v += std::pow(f.values[i], qe);
      v = std::pow(v, 1.0 / qe);
    }
    inner.values[i] = v;
  }
  return luxemburg_norm(inner, p, tol);
}

}  // namespace vex
