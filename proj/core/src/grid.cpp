#include "vex/grid.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vex {

void GridFunction::check_nonnegative() const {
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::invalid_argument("GridFunction: values must be finite and >= 0");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (!(a.layout == b.layout)) throw std::invalid_argument("GridFunction +: layout mismatch");
  GridFunction out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
  return out;
}

bool InfinityRegion::contains(const Point& x) const {
  if (!layout.box.contains(x)) return false;
  std::vector<std::size_t> idx(layout.dim());
  const double h = layout.cell_side();
  for (int a = 0; a < layout.dim(); ++a) {
    double t = (x[a] - layout.box.lo[a]) / h;
    auto i = static_cast<long long>(std::floor(t));
    if (i < 0) i = 0;
    if (i >= static_cast<long long>(layout.cells_per_axis[a]))
      i = static_cast<long long>(layout.cells_per_axis[a]) - 1;
    idx[a] = static_cast<std::size_t>(i);
  }
  return mask[layout.flatten(idx)] != 0;
}

void write_grid_function(std::ostream& os, const GridFunction& f) {
  const int n = f.dim();
  os << n << "," << f.layout.level << "\n";
  for (int a = 0; a < n; ++a) os << (a ? "," : "") << f.layout.box.lo[a];
  os << "\n";
  for (int a = 0; a < n; ++a) os << (a ? "," : "") << f.layout.box.hi[a];
  os << "\n";
  os.precision(17);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    os << f.values[i];
    os << (((i + 1) % 16 == 0 || i + 1 == f.values.size()) ? "\n" : ",");
  }
}

namespace {
std::vector<double> parse_csv_line(const std::string& line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}
}  // namespace

GridFunction read_grid_function(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_grid_function: empty input");
  auto hdr = parse_csv_line(line);
  if (hdr.size() != 2) throw std::runtime_error("read_grid_function: bad header");
  const int n = static_cast<int>(hdr[0]);
  const int level = static_cast<int>(hdr[1]);
  if (!std::getline(is, line)) throw std::runtime_error("read_grid_function: missing lo row");
  auto lo = parse_csv_line(line);
  if (!std::getline(is, line)) throw std::runtime_error("read_grid_function: missing hi row");
  auto hi = parse_csv_line(line);
  if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
    throw std::runtime_error("read_grid_function: bad box rows");
  Box box;
  for (int a = 0; a < n; ++a) {
    box.lo.push_back(static_cast<int>(lo[a]));
    box.hi.push_back(static_cast<int>(hi[a]));
  }
  GridFunction f(box, level);
  std::size_t k = 0;
  while (k < f.values.size() && std::getline(is, line))
    for (double v : parse_csv_line(line)) {
      if (k >= f.values.size()) throw std::runtime_error("read_grid_function: too many values");
      f.values[k++] = v;
    }
  if (k != f.values.size()) throw std::runtime_error("read_grid_function: too few values");
  return f;
}

}  // namespace vex
