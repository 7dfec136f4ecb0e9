#pragma once

#include <iosfwd>
#include <vector>

#include "vex/geometry.hpp"

namespace vex {

/// Nonnegative piecewise-constant function on the dyadic refinement of a box.
/// One value per cell, row-major.
struct GridFunction {
  GridLayout layout;
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(const Box& box, int level)
      : layout(box, level), values(layout.total, 0.0) {}

  int dim() const { return layout.dim(); }

  double max_value() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
  }

  bool is_zero() const {
    for (double v : values)
      if (v != 0.0) return false;
    return true;
  }

  GridFunction& scale(double c) {
    for (double& v : values) v *= c;
    return *this;
  }

  void check_nonnegative() const;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);

/// Subset of the grid where p(x) = infinity, as an exact cell mask.
struct InfinityRegion {
  GridLayout layout;
  std::vector<unsigned char> mask;

  InfinityRegion() = default;
  InfinityRegion(const Box& box, int level)
      : layout(box, level), mask(layout.total, 0) {}

  bool contains(const Point& x) const;
};

/// Text serialization: `n,level`, `lo...`, `hi...`, then the values.
void write_grid_function(std::ostream& os, const GridFunction& f);
GridFunction read_grid_function(std::istream& is);

}  // namespace vex
