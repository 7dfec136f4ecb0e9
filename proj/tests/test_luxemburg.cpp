#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "vex/luxemburg.hpp"

using namespace vex;

namespace {

GridFunction indicator_unit(double v = 1.0) {
  GridFunction f(Box::cube(1, 0, 1), 0);
  f.values[0] = v;
  return f;
}

}  // namespace

TEST_CASE("lebesgue modular: constant exponents, exact step functions") {
  const auto p2 = ExponentFunction::constant(1, 2.0);
  CHECK(lebesgue_modular(indicator_unit(), p2) == doctest::Approx(1.0));
  const auto p3 = ExponentFunction::constant(1, 3.0);
  CHECK(lebesgue_modular(indicator_unit(2.0), p3) == doctest::Approx(8.0));
  CHECK(lebesgue_modular(GridFunction(Box::cube(1, 0, 1), 3), p2) == doctest::Approx(0.0));
}

TEST_CASE("lebesgue modular: midpoint sampling converges for variable p") {
  // f = 2 on [0,1], p(x) = 2 + x: integral of 2^{2+x} is 4 / ln 2.
  ExponentFunction p;
  p.dim = 1;
  p.eval = [](const Point& x) { return 2.0 + x[0]; };
  p.declared_inf = 2.0;
  p.declared_sup = 3.0;
  const double exact = 4.0 / std::log(2.0);
  const GridFunction f = [] {
    GridFunction g(Box::cube(1, 0, 1), 8);
    for (auto& v : g.values) v = 2.0;
    return g;
  }();
  CHECK(lebesgue_modular(f, p) == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("0^p contributes nothing even for tiny p") {
  const auto p = ExponentFunction::constant(1, 0.25);
  GridFunction f(Box::cube(1, 0, 2), 1);
  f.values[1] = 1.0;  // rest zero
  CHECK(lebesgue_modular(f, p) == doctest::Approx(0.5));
  const auto m = compile_modular(f, p);
  CHECK(m.terms.size() == 1);
}

TEST_CASE("compile_modular aggregates equal (value, p) terms") {
  const auto p = ExponentFunction::constant(1, 2.0);
  GridFunction f(Box::cube(1, 0, 2), 2);
  for (auto& v : f.values) v = 1.5;
  const auto m = compile_modular(f, p);
  REQUIRE(m.terms.size() == 1);
  CHECK(m.terms[0].weight == doctest::Approx(2.0));  // total measure
  CHECK(m.eval(1.0) == doctest::Approx(2.0 * 1.5 * 1.5));
}

TEST_CASE("luxemburg norm: constant p closed forms") {
  std::mt19937_64 rng(11);
  const Box box = Box::cube(1, -1, 1);
  for (double p : {0.5, 1.0, 2.0, 7.0}) {
    const auto pf = ExponentFunction::constant(1, p);
    for (int rep = 0; rep < 25; ++rep) {
      const GridFunction f = th::random_grid(rng, box, 4);
      const double want = th::lp_closed_form(f, p);
      CHECK(luxemburg_norm(f, pf) == doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("luxemburg norm: two-exponent quartic against a scalar oracle") {
  // f = 1 on [0,1), 2 on [1,2); p = 2 then 4. Solve (1/l)^2 + (2/l)^4 = 1.
  GridFunction f(Box::cube(1, 0, 2), 0);
  f.values[0] = 1.0;
  f.values[1] = 2.0;
  ExponentFunction p;
  p.dim = 1;
  p.eval = [](const Point& x) { return x[0] < 1.0 ? 2.0 : 4.0; };
  p.declared_inf = 2.0;
  p.declared_sup = 4.0;

  auto g = [](double l) { return std::pow(1.0 / l, 2.0) + std::pow(2.0 / l, 4.0); };
  double lo = 1.0, hi = 4.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 1.0 ? lo : hi) = mid;
  }
  const double oracle = 0.5 * (lo + hi);
  CHECK(luxemburg_norm(f, p) == doctest::Approx(oracle).epsilon(1e-9));
  // sanity on the oracle itself: root of 16 t^2 + t = 1 with t = 1/l^2
  const double t = (-1.0 + std::sqrt(65.0)) / 32.0;
  CHECK(oracle == doctest::Approx(1.0 / std::sqrt(t)).epsilon(1e-12));
}

TEST_CASE("luxemburg norm: homogeneity, monotonicity, unit ball") {
  std::mt19937_64 rng(5);
  FamilyParams par;
  par.base = 1.5;
  par.amplitude = 2.0;
  const auto p = make_standard_exponent(1, ExponentFamily::log_perturbed, par);
  const Box box = Box::cube(1, -2, 2);
  for (int rep = 0; rep < 20; ++rep) {
    GridFunction f = th::random_grid(rng, box, 5);
    if (f.is_zero()) continue;
    const double nf = luxemburg_norm(f, p);
    GridFunction g = f;
    g.scale(3.0);
    CHECK(luxemburg_norm(g, p) == doctest::Approx(3.0 * nf).epsilon(1e-8));
    GridFunction h = f;
    for (std::size_t i = 0; i < h.values.size(); i += 2) h.values[i] = 0.0;
    CHECK(luxemburg_norm(h, p) <= nf * (1.0 + 1e-9));
    GridFunction u = f;
    u.scale(1.0 / nf);
    CHECK(lebesgue_modular(u, p) <= 1.0 + 1e-6);
  }
}

TEST_CASE("zero function has zero norm") {
  const auto p = ExponentFunction::constant(1, 2.0);
  CHECK(luxemburg_norm(GridFunction(Box::cube(1, 0, 1), 2), p) == 0.0);
}

TEST_CASE("infinity region: pure sup norm") {
  const Box box = Box::cube(1, 0, 2);
  GridFunction f(box, 1);
  f.values = {0.5, 3.0, 1.0, 2.0};
  InfinityRegion all(box, 1);
  for (auto& m : all.mask) m = 1;
  const auto pinf = with_infinity_region(ExponentFunction::constant(1, 2.0), all);
  CHECK(luxemburg_norm(f, pinf) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(lebesgue_modular(f, pinf) == doctest::Approx(3.0));  // sup part only
}

TEST_CASE("infinity region: mixed finite/sup quadratic oracle") {
  // f = chi_[0,1] + 3 chi_[1,2], p = 2 on [0,1], infinity on [1,2]:
  // rho(f/l) = (1/l)^2 + [3/l over the sup region]; the norm solves
  // (1/l)^2 <= 1 and 3/l <= 1 jointly at the modular <= 1 boundary.
  const Box box = Box::cube(1, 0, 2);
  GridFunction f(box, 0);
  f.values = {1.0, 3.0};
  InfinityRegion right(box, 0);
  right.mask[1] = 1;
  const auto p = with_infinity_region(ExponentFunction::constant(1, 2.0), right);
  // rho(l) = (1/l)^2 + 3/l ; root of l^2 - 3 l - 1 = 0.
  const double oracle = (3.0 + std::sqrt(13.0)) / 2.0;
  CHECK(luxemburg_norm(f, p) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("luxemburg_solve: generic monotone map") {
  const double tol = 1e-12;
  CHECK(luxemburg_solve([](double l) { return 5.0 / l; }, 1.0, tol) ==
        doctest::Approx(5.0).epsilon(1e-10));
  CHECK(luxemburg_solve([](double) { return 0.5; }, 1.0, tol) == doctest::Approx(0.0));
}

TEST_CASE("luxemburg_solve: pathological maps raise or saturate") {
  CHECK(luxemburg_solve([](double) { return 2.0; }, 1.0, 1e-10) == kInf);
  auto cliff = [](double l) { return l < 1e250 ? 2.0 : 0.5; };
  CHECK_THROWS_AS(luxemburg_solve(cliff, 1.0, 1e-10), NumericError);
}

TEST_CASE("luxemburg_solve rejects bad tolerance and hint") {
  auto rho = [](double l) { return 1.0 / l; };
  CHECK_THROWS_AS(luxemburg_solve(rho, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(luxemburg_solve(rho, 0.0, 1e-10), std::invalid_argument);
}
