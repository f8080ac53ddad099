#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "etaparity/dyadic.hpp"
#include "etaparity/genpoly.hpp"

namespace etaparity {

/// Window of coordinates c(a, b) = a_1(T_3^a T_5^b f), 0 <= a < rows, 0 <= b < cols.
class CodeMatrix {
 public:
  CodeMatrix(std::size_t rows, std::size_t cols, GenPoly origin);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const GenPoly& origin() const noexcept { return origin_; }

  bool at(std::size_t a, std::size_t b) const { return cells_.at(a * cols_ + b) != 0; }
  void set(std::size_t a, std::size_t b, bool v) { cells_.at(a * cols_ + b) = v ? 1 : 0; }

  std::vector<std::pair<std::size_t, std::size_t>> support() const;
  bool is_indicator_of(std::size_t a, std::size_t b) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> cells_;
  GenPoly origin_;
};

/// Rejects polynomials with an even exponent (outside K).
CodeMatrix code_matrix(const GenPoly& p, std::size_t a_max = 8, std::size_t b_max = 8);

/// No entry off the two axes inside the window. Advisory only.
bool is_dihedral_window(const CodeMatrix& c);

/// 2^-(u(a) + v(a) + 1); zero for a = 0.
DyadicRational dihedral_density(std::uint64_t a);

/// Position of Delta^e in the adapted basis when e is one of the families
/// z_n = (2 * 4^n + 1)/3, 3 z_n, w_n = 4^n + 1 (n >= 1), or e = 1.
struct AxisIndex {
  enum class Axis { X, Y };
  Axis axis = Axis::X;
  std::uint64_t a = 0;
};
std::optional<AxisIndex> dihedral_power_index(std::uint64_t e);

std::uint64_t z_family(unsigned n);
std::uint64_t w_family(unsigned n);

}  // namespace etaparity
