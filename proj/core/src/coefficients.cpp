#include "vex/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vex {

bool CoefficientField::cube_in_box(int j, const std::vector<int>& m) const {
  // Q_{j,m} = [m 2^-j, (m+1) 2^-j] per axis
  for (int a = 0; a < dim; ++a) {
    const double lo = std::ldexp(static_cast<double>(m[a]), -j);
    const double hi = std::ldexp(static_cast<double>(m[a] + 1), -j);
    if (lo < box.lo[a] - 1e-12 || hi > box.hi[a] + 1e-12) return false;
  }
  return true;
}

void CoefficientField::set(int j, const std::vector<int>& m, double value) {
  if (j < 0 || j > J_max) throw std::invalid_argument("CoefficientField::set: level out of range");
  if (static_cast<int>(m.size()) != dim)
    throw std::invalid_argument("CoefficientField::set: index dimension mismatch");
  if (!(value >= 0.0) || !std::isfinite(value))
    throw std::invalid_argument("CoefficientField::set: value must be finite and >= 0");
  if (!cube_in_box(j, m))
    throw std::invalid_argument("CoefficientField::set: cube outside the truncation box");
  auto& row = rows[j].entries;
  auto it = std::lower_bound(row.begin(), row.end(), m,
                             [](const Entry& e, const std::vector<int>& key) { return e.m < key; });
  if (it != row.end() && it->m == m)
    it->value = value;
  else
    row.insert(it, Entry{m, value});
}

bool CoefficientField::is_zero() const {
  for (const auto& row : rows)
    for (const auto& e : row.entries)
      if (e.value != 0.0) return false;
  return true;
}

CoefficientField& CoefficientField::scale(double c) {
  for (auto& row : rows)
    for (auto& e : row.entries) e.value *= c;
  return *this;
}

std::vector<double> CoefficientField::row_values(int j) const {
  if (j < 0 || j > J_max)
    throw std::invalid_argument("CoefficientField::row_values: level out of range");
  std::vector<double> vals;
  vals.reserve(rows[j].entries.size());
  for (const auto& e : rows[j].entries) vals.push_back(e.value);
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  return vals;
}

void write_coefficients(std::ostream& os, const CoefficientField& gamma) {
  os << gamma.dim << "," << gamma.J_max << "\n";
  os.precision(17);
  for (int j = 0; j <= gamma.J_max; ++j)
    for (const auto& e : gamma.rows[j].entries) {
      os << j;
      for (int a = 0; a < gamma.dim; ++a) os << "," << e.m[a];
      os << "," << e.value << "\n";
    }
}

CoefficientField read_coefficients(std::istream& is, const Box& box) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_coefficients: empty input");
  std::stringstream hs(line);
  std::string tok;
  std::vector<std::string> hdr;
  while (std::getline(hs, tok, ',')) hdr.push_back(tok);
  if (hdr.size() != 2) throw std::runtime_error("read_coefficients: bad header, expected n,J_max");
  const int n = std::stoi(hdr[0]);
  const int Jmax = std::stoi(hdr[1]);
  if (n != box.dim()) throw std::runtime_error("read_coefficients: box dimension mismatch");
  CoefficientField gamma(n, Jmax, box);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<std::string> toks;
    while (std::getline(ss, tok, ',')) toks.push_back(tok);
    if (static_cast<int>(toks.size()) != n + 2)
      throw std::runtime_error("read_coefficients: bad row: " + line);
    const int j = std::stoi(toks[0]);
    std::vector<int> m(n);
    for (int a = 0; a < n; ++a) m[a] = std::stoi(toks[1 + a]);
    gamma.set(j, m, std::stod(toks[n + 1]));
  }
  return gamma;
}

}  // namespace vex
