#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vex {

using Point = std::vector<double>;

/// Axis-aligned box with integer corners. All dyadic cubes and grid cells
/// used below tile such boxes exactly.
struct Box {
  std::vector<int> lo;
  std::vector<int> hi;

  int dim() const { return static_cast<int>(lo.size()); }

  static Box cube(int n, int a, int b) {
    if (n < 1 || a >= b) throw std::invalid_argument("Box::cube: need n >= 1 and a < b");
    return Box{std::vector<int>(n, a), std::vector<int>(n, b)};
  }

  double volume() const {
    double v = 1.0;
    for (int a = 0; a < dim(); ++a) v *= static_cast<double>(hi[a] - lo[a]);
    return v;
  }

  bool contains(const Point& x) const {
    for (int a = 0; a < dim(); ++a)
      if (x[a] < lo[a] || x[a] > hi[a]) return false;
    return true;
  }

  bool operator==(const Box& o) const { return lo == o.lo && hi == o.hi; }
};

/// Row-major lattice of cells of side 2^-level over a box.
struct GridLayout {
  Box box;
  int level = 0;
  std::vector<std::size_t> cells_per_axis;
  std::size_t total = 0;

  GridLayout() = default;

  GridLayout(const Box& b, int L) : box(b), level(L) {
    if (L < 0) throw std::invalid_argument("GridLayout: negative level");
    total = 1;
    cells_per_axis.resize(b.dim());
    for (int a = 0; a < b.dim(); ++a) {
      if (b.hi[a] <= b.lo[a]) throw std::invalid_argument("GridLayout: empty box");
      cells_per_axis[a] = static_cast<std::size_t>(b.hi[a] - b.lo[a]) << L;
      total *= cells_per_axis[a];
    }
  }

  int dim() const { return box.dim(); }
  double cell_side() const { return std::ldexp(1.0, -level); }
  double cell_volume() const { return std::ldexp(1.0, -level * dim()); }

  std::vector<std::size_t> unflatten(std::size_t flat) const {
    std::vector<std::size_t> idx(dim());
    for (int a = dim() - 1; a >= 0; --a) {
      idx[a] = flat % cells_per_axis[a];
      flat /= cells_per_axis[a];
    }
    return idx;
  }

  std::size_t flatten(const std::vector<std::size_t>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim(); ++a) flat = flat * cells_per_axis[a] + idx[a];
    return flat;
  }

  Point midpoint(std::size_t flat) const {
    const auto idx = unflatten(flat);
    Point x(dim());
    const double h = cell_side();
    for (int a = 0; a < dim(); ++a)
      x[a] = box.lo[a] + (static_cast<double>(idx[a]) + 0.5) * h;
    return x;
  }

  bool operator==(const GridLayout& o) const { return box == o.box && level == o.level; }
};

}  // namespace vex
