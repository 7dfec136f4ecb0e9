#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "vex/rearrange.hpp"

using namespace vex;

namespace {

const Box kBox = Box::cube(1, 0, 1);

}  // namespace

TEST_CASE("rearrange_grid: basic profiles") {
  GridFunction f(kBox, 0);
  f.values[0] = 1.0;
  const auto prof = rearrange_grid(f);
  REQUIRE(prof.steps.size() == 1);
  CHECK(prof.steps[0].value == 1.0);
  CHECK(prof.steps[0].measure == doctest::Approx(1.0));
  CHECK(prof.total_measure == doctest::Approx(1.0));

  GridFunction g(kBox, 2);
  g.values = {0.0, 2.0, 1.0, 2.0};
  const auto p = rearrange_grid(g);
  // strictly decreasing values 2, 1, 0 with measures 1/2, 1/4, 1/4
  REQUIRE(p.steps.size() == 3);
  CHECK(p.steps[0].value == 2.0);
  CHECK(p.steps[0].measure == doctest::Approx(0.5));
  CHECK(p.steps[1].value == 1.0);
  CHECK(p.steps[1].measure == doctest::Approx(0.25));
  CHECK(p.steps[2].value == 0.0);
  CHECK(p.value_at(0.1) == 2.0);
  CHECK(p.value_at(0.6) == 1.0);
  CHECK(p.value_at(0.9) == 0.0);
}

TEST_CASE("Lemma-style norm invariance under rearrangement") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 30; ++rep) {
    const GridFunction f = th::random_grid(rng, kBox, 4);
    const auto prof = rearrange_grid(f);
    for (double p : {1.0, 2.0, 5.0, kInf}) {
      const double direct = th::lp_closed_form(f, p);
      CHECK(prof.lp_norm(p) == doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("equimeasurability: measure_above agrees with the original") {
  std::mt19937_64 rng(47);
  const GridFunction f = th::random_grid(rng, kBox, 4);
  const auto prof = rearrange_grid(f);
  const double vol = f.layout.cell_volume();
  for (double lam : {0.0, 0.3, 1.0, 2.9}) {
    double direct = 0.0;
    for (double v : f.values)
      if (v > lam) direct += vol;
    CHECK(prof.measure_above(lam) == doctest::Approx(direct).epsilon(1e-13));
  }
}

TEST_CASE("rearrange_row sorts descending; row_profile uses 2^{-jn} breakpoints") {
  CoefficientField g(1, 2, Box::cube(1, -2, 2));
  g.set(2, {0}, 1.0);
  g.set(2, {3}, 3.0);
  g.set(2, {5}, 2.0);
  const auto row = rearrange_row(g, 2);
  CHECK(row == std::vector<double>{3.0, 2.0, 1.0});
  const auto prof = row_profile(g, 2);
  REQUIRE(prof.steps.size() >= 3);
  CHECK(prof.steps[0].value == 3.0);
  CHECK(prof.steps[0].measure == doctest::Approx(0.25));
  CHECK(prof.steps[1].value == 2.0);
  CHECK(prof.steps[1].measure == doctest::Approx(0.25));
  // L_p of the profile equals the weighted ell_p of the row
  for (double p : {1.0, 2.0}) {
    double want = 0.0;
    for (double v : row) want += std::pow(v, p) * 0.25;
    CHECK(prof.lp_norm(p) == doctest::Approx(std::pow(want, 1.0 / p)).epsilon(1e-13));
  }
}

TEST_CASE("row profile is the rearrangement of the synthesized unweighted level") {
  std::mt19937_64 rng(53);
  const Box box = Box::cube(1, 0, 1);
  CoefficientField g(1, 3, box);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int m = 0; m < 8; ++m)
    if (u(rng) < 0.7) g.set(3, {m}, u(rng) * 2.0);
  GridFunction lvl(box, 3);
  for (const auto& e : g.rows[3].entries) lvl.values[e.m[0]] = e.value;
  const auto a = row_profile(g, 3);
  const auto b = rearrange_grid(lvl);
  for (double p : {1.0, 2.0, kInf})
    CHECK(a.lp_norm(p) == doctest::Approx(b.lp_norm(p)).epsilon(1e-13));
}

TEST_CASE("subadditivity: degenerate and equality cases") {
  GridFunction z(kBox, 2);
  std::mt19937_64 rng(59);
  const GridFunction f = th::random_grid(rng, kBox, 2);
  for (double p : {1.0, 2.0, kInf}) {
    const auto rep = check_subadditivity(f, z, p);
    CHECK(rep.holds);
    CHECK(rep.lhs == doctest::Approx(rep.rhs).epsilon(1e-12));
  }
  // disjoint unit indicators, p = 1: both sides equal the total mass
  GridFunction a(kBox, 1), b(kBox, 1);
  a.values[0] = 1.0;
  b.values[1] = 1.0;
  const auto rep = check_subadditivity(a, b, 1.0);
  CHECK(rep.holds);
  CHECK(rep.lhs == doctest::Approx(1.0));
  CHECK(rep.rhs == doctest::Approx(1.0));
}

TEST_CASE("subadditivity holds on random pairs for p >= 1") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 50; ++rep) {
    const GridFunction f = th::random_grid(rng, kBox, 3);
    const GridFunction g = th::random_grid(rng, kBox, 3);
    for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
      const auto r = check_subadditivity(f, g, p);
      CHECK(r.holds);
      CHECK(r.rhs >= r.lhs - 1e-12);
    }
  }
}

TEST_CASE("subadditivity: exhaustive small-grid enumeration") {
  // all pairs of functions on 4 cells with values in {0, 1, 2}
  std::vector<GridFunction> fns;
  for (int code = 0; code < 81; ++code) {
    GridFunction f(kBox, 2);
    int c = code;
    for (int i = 0; i < 4; ++i) {
      f.values[i] = static_cast<double>(c % 3);
      c /= 3;
    }
    fns.push_back(std::move(f));
  }
  for (double p : {1.0, 2.0}) {
    for (const auto& f : fns)
      for (const auto& g : fns) {
        const auto r = check_subadditivity(f, g, p);
        CHECK(r.holds);
      }
  }
}

TEST_CASE("subadditivity rejects p < 1") {
  GridFunction f(kBox, 1);
  f.values[0] = 1.0;
  CHECK_THROWS_AS(check_subadditivity(f, f, 0.5), std::invalid_argument);
}

TEST_CASE("profiles of zero functions") {
  const auto prof = rearrange_grid(GridFunction(kBox, 3));
  CHECK(prof.lp_norm(2.0) == 0.0);
  CHECK(prof.lp_norm(kInf) == 0.0);
  CHECK(prof.measure_above(0.0) == 0.0);
}
