#pragma once

#include <iosfwd>
#include <vector>

#include "vex/geometry.hpp"

namespace vex {

/// Truncated dyadic coefficient field: nonnegative values gamma_{j,m} on the
/// corner-anchored cubes Q_{j,m} = 2^-j (m + [0,1]^n), j <= J_max, cubes
/// inside `box`. Rows are kept sorted by lattice index.
struct CoefficientField {
  struct Entry {
    std::vector<int> m;
    double value;
  };
  struct LevelRow {
    std::vector<Entry> entries;
  };

  int dim = 1;
  int J_max = 0;
  Box box;
  std::vector<LevelRow> rows;  // index j = 0..J_max

  CoefficientField() = default;
  CoefficientField(int n, int Jmax, const Box& b)
      : dim(n), J_max(Jmax), box(b), rows(static_cast<std::size_t>(Jmax) + 1) {}

  /// Inserts (or overwrites) gamma_{j,m}. Validates the cube against the box.
  void set(int j, const std::vector<int>& m, double value);
  bool cube_in_box(int j, const std::vector<int>& m) const;

  bool is_zero() const;
  CoefficientField& scale(double c);

  /// Row values of level j in descending order (the rearranged row).
  std::vector<double> row_values(int j) const;
};

/// CSV round-trip: header `n,J_max`, then rows `j,m1,..,mn,value`.
/// The truncation box is not part of the format; the reader uses `box`.
void write_coefficients(std::ostream& os, const CoefficientField& gamma);
CoefficientField read_coefficients(std::istream& is, const Box& box);

}  // namespace vex
