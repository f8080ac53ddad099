#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "etaparity/f2series.hpp"

namespace etaparity {

/// Binary digit statistics of a. For a = 0 the valuation is absent (infinite)
/// and d = z = u = 0.
struct DigitStats {
  std::uint64_t a = 0;
  unsigned d = 0;
  std::optional<unsigned> v;
  unsigned z = 0;
  unsigned u = 0;
};

DigitStats digit_stats(std::uint64_t a);

/// Coefficients of S_n mod 2 in x, up to degree min(n, deg_max), from the
/// recurrence S_n = x S_{n-1} - S_{n-2}, S_0 = 2, S_1 = x. Coefficient a is
/// bit a of the returned series.
F2Series chebyshev_mod2(std::uint64_t n, std::uint64_t deg_max);

/// True iff v_2(C(n, k)) = v_2(n); k must be odd with k <= n.
/// Uses Kummer: v_2(C(n, k)) is the number of borrows in n - k.
bool binom_val_eq_n_val(std::uint64_t n, std::uint64_t k);

/// [x^a] of S_n mod 2, from the closed form n/(n-k) C(n-k, k), a = n - 2k.
bool coeff_xa_in_Sn(std::uint64_t a, std::uint64_t n);

struct CombinatorialCount {
  std::uint64_t count = 0;
  std::uint64_t modulus = 0;
  std::vector<std::uint64_t> residues;
  std::uint64_t closed_form = 0;
};

/// Residues n mod 2^{d(a)+1} with x^a in S_n mod 2, found by enumerating one
/// period, next to the closed form 2^{z(a) - v(a) + 1}. Requires a >= 1.
CombinatorialCount combinatorial_count(std::uint64_t a);

}  // namespace etaparity
