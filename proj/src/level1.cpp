#include "etaparity/level1.hpp"

#include <algorithm>
#include <stdexcept>

#include "etaparity/cheby.hpp"

namespace etaparity {

CodeMatrix::CodeMatrix(std::size_t rows, std::size_t cols, GenPoly origin)
    : rows_(rows), cols_(cols), cells_(rows * cols, 0), origin_(std::move(origin)) {}

std::vector<std::pair<std::size_t, std::size_t>> CodeMatrix::support() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < rows_; ++a) {
    for (std::size_t b = 0; b < cols_; ++b) {
      if (at(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

bool CodeMatrix::is_indicator_of(std::size_t a, std::size_t b) const {
  const auto s = support();
  return s.size() == 1 && s[0] == std::make_pair(a, b);
}

CodeMatrix code_matrix(const GenPoly& p, std::size_t a_max, std::size_t b_max) {
  if (p.level() != Level::One) throw std::invalid_argument("code_matrix is level 1 only");
  if (a_max == 0 || b_max == 0) throw std::invalid_argument("code_matrix window must be nonempty");
  for (std::uint32_t e : p.exponents()) {
    if (e % 2 == 0) throw std::invalid_argument("code_matrix needs odd exponents only");
  }
  CodeMatrix c(a_max, b_max, p);
  GenPoly col = p;  // T_5^b p
  for (std::size_t b = 0; b < b_max; ++b) {
    GenPoly g = col;  // T_3^a T_5^b p
    for (std::size_t a = 0; a < a_max; ++a) {
      c.set(a, b, g.contains(1));
      if (g.empty()) break;
      if (a + 1 < a_max) g = hecke_on_genpoly(g, 3);
    }
    if (col.empty()) break;
    if (b + 1 < b_max) col = hecke_on_genpoly(col, 5);
  }
  return c;
}

bool is_dihedral_window(const CodeMatrix& c) {
  for (auto [a, b] : c.support()) {
    if (a > 0 && b > 0) return false;
  }
  return true;
}

DyadicRational dihedral_density(std::uint64_t a) {
  const DigitStats s = digit_stats(a);
  if (!s.v) return {};
  return pow2_inv(s.u + *s.v + 1);
}

std::uint64_t z_family(unsigned n) { return (2 * (std::uint64_t{1} << (2 * n)) + 1) / 3; }
std::uint64_t w_family(unsigned n) { return (std::uint64_t{1} << (2 * n)) + 1; }

std::optional<AxisIndex> dihedral_power_index(std::uint64_t e) {
  if (e == 1) return AxisIndex{AxisIndex::Axis::X, 0};
  for (unsigned n = 1; n <= 30; ++n) {
    const std::uint64_t z = z_family(n);
    if (e == z) return AxisIndex{AxisIndex::Axis::X, (std::uint64_t{1} << n) - 1};
    if (e == 3 * z) return AxisIndex{AxisIndex::Axis::X, std::uint64_t{1} << n};
    if (e == w_family(n)) return AxisIndex{AxisIndex::Axis::Y, std::uint64_t{1} << (n - 1)};
  }
  return std::nullopt;
}

}  // namespace etaparity
