#pragma once

#include "vex/coefficients.hpp"
#include "vex/exponents.hpp"
#include "vex/grid.hpp"
#include "vex/mixed.hpp"
#include "vex/weights.hpp"

namespace vex {

enum class SpaceKind { besov, triebel };

std::string to_string(SpaceKind k);
SpaceKind space_kind_from_string(const std::string& s);

/// Description of a sequence space: b^w_{p,q} or f^w_{p,q} over a box.
struct SpaceSpec {
  SpaceKind kind = SpaceKind::besov;
  ExponentFunction p;
  ExponentFunction q;
  WeightSequence weight;

  void validate() const;
  bool constant_exponents() const {
    return p.is_constant() && q.is_constant() && weight.alpha1 == weight.alpha2;
  }
};

/// Builds a SpaceSpec with weights 2^{j s(.)}.
SpaceSpec make_space(SpaceKind kind, const ExponentFunction& p, const ExponentFunction& q,
                     const SmoothnessFunction& s, int J_max,
                     const Box& box = Box::cube(1, -2, 2));

/// x -> sum_m gamma_{j,m} w_j(x) chi_{j,m}(x) at grid level L >= j.
GridFunction synthesize_level(const CoefficientField& gamma, int j, const WeightSequence& w,
                              int L);

/// All levels 0..J_max as a LevelSequence on a common grid.
LevelSequence synthesize_all(const CoefficientField& gamma, const WeightSequence& w, int L);

/// The sequence-space norm of Definition-style b/f spaces: synthesizes the
/// weighted levels and dispatches to the mixed norms.
double space_norm(const CoefficientField& gamma, const SpaceSpec& spec, int L,
                  double tol = 1e-10);

/// Default grid policy: L = J_max for constant exponents, J_max + 2 otherwise.
int default_grid_level(const CoefficientField& gamma, const SpaceSpec& spec);

}  // namespace vex
