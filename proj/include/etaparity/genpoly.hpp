#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "etaparity/f2series.hpp"

namespace etaparity {

/// Generator of the form algebra: Delta at level 1, F at level 9.
enum class Level { One = 1, Nine = 9 };

/// Raised when a series is not a polynomial in the generator within the
/// requested degree bound.
class NotInAlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sum of gen^e over a finite exponent set, coefficients in F_2.
class GenPoly {
 public:
  GenPoly() = default;
  GenPoly(Level level, std::vector<std::uint32_t> exponents);

  Level level() const noexcept { return level_; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  bool empty() const noexcept { return exps_.empty(); }
  bool contains(std::uint32_t e) const;
  /// Largest exponent; 0 for the empty polynomial.
  std::uint32_t degree() const noexcept { return exps_.empty() ? 0 : exps_.back(); }

  void toggle(std::uint32_t e);

  std::string to_string() const;

  friend bool operator==(const GenPoly&, const GenPoly&) = default;

 private:
  Level level_ = Level::One;
  std::vector<std::uint32_t> exps_;  // sorted, distinct
};

F2Series generator_series(Level level, std::size_t n);

/// First n coefficients of the q-expansion of p.
F2Series expand(const GenPoly& p, std::size_t n);

/// Greedy re-expression: repeatedly cancel the lowest term q^e of the residual
/// with gen^e. Requires f.valid_len > max_degree. Throws NotInAlgebraError when
/// a nonzero residual has its lowest term past max_degree.
GenPoly to_genpoly(const F2Series& f, Level level, std::uint32_t max_degree);

GenPoly genpoly_add(const GenPoly& p, const GenPoly& q);
GenPoly genpoly_mul(const GenPoly& p, const GenPoly& q);
GenPoly genpoly_pow(const GenPoly& p, std::uint32_t e);

/// T_l applied to p, re-expressed in the generator.
/// Level 1: l an odd prime; the result has degree <= deg p.
/// Level 9: l = 2 means U_2, l >= 5 prime means T_l; the result has degree
/// <= deg p + 1 (U_2 F = F^2). l = 3 is rejected.
GenPoly hecke_on_genpoly(const GenPoly& p, std::uint32_t ell);

/// U_2 or U_3 on a level-9 polynomial.
GenPoly u_on_genpoly(const GenPoly& p, std::uint32_t ell);

}  // namespace etaparity
