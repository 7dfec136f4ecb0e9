#pragma once

#include <vector>

#include "vex/exponents.hpp"
#include "vex/grid.hpp"
#include "vex/luxemburg.hpp"

namespace vex {

/// Finite stack (f_nu)_{nu=0..N} of grid functions on a common lattice.
struct LevelSequence {
  std::vector<GridFunction> levels;

  LevelSequence() = default;
  explicit LevelSequence(std::vector<GridFunction> ls);

  std::size_t size() const { return levels.size(); }
  bool is_zero() const;
  LevelSequence& scale(double c);
};

/// Evaluation route for the Besov-side modular: `simplified` is the
/// one-Luxemburg-call-per-level form (valid when q is finite on the support),
/// `nested` is the inner-infimum form with a bisection per level. Both compute
/// the same value; `nested` is kept as the verification path.
enum class BesovRoute { simplified, nested };

double besov_mixed_modular(const LevelSequence& fs, const ExponentFunction& p,
                           const ExponentFunction& q, double tol = 1e-10,
                           BesovRoute route = BesovRoute::simplified);

/// Norm of ell_{q(.)}(L_{p(.)}): outer bisection over mu on the nonincreasing
/// map mu -> modular(fs/mu). Returns 0 for all-zero input.
double besov_mixed_norm(const LevelSequence& fs, const ExponentFunction& p,
                        const ExponentFunction& q, double tol = 1e-10);

/// Norm of L_{p(.)}(ell_{q(.)}): pointwise inner ell_{q(x)} norm (sup when
/// q(x) = infinity), then the Luxemburg norm in p.
double triebel_mixed_norm(const LevelSequence& fs, const ExponentFunction& p,
                          const ExponentFunction& q, double tol = 1e-10);

}  // namespace vex
