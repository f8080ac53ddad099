#include "etaparity/cheby.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace etaparity {

DigitStats digit_stats(std::uint64_t a) {
  DigitStats s;
  s.a = a;
  if (a == 0) return s;
  s.d = static_cast<unsigned>(std::bit_width(a));
  s.u = static_cast<unsigned>(std::popcount(a));
  s.z = s.d - s.u;
  s.v = static_cast<unsigned>(std::countr_zero(a));
  return s;
}

F2Series chebyshev_mod2(std::uint64_t n, std::uint64_t deg_max) {
  const std::size_t len = static_cast<std::size_t>(std::min(n, deg_max)) + 1;
  // S_{k} lives in degree <= k; carry the full top degree, truncate at the end.
  const std::size_t work = static_cast<std::size_t>(n) + 1;
  F2Series prev(work);  // S_0 = 2 = 0
  if (n == 0) return prev.truncated(len);
  F2Series cur = F2Series::monomial(1, work);  // S_1 = x
  for (std::uint64_t k = 2; k <= n; ++k) {
    // x * cur + prev
    F2Series next = prev;
    for (std::size_t e : cur.support()) {
      if (e + 1 < work) next.flip(e + 1);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur.truncated(len);
}

bool binom_val_eq_n_val(std::uint64_t n, std::uint64_t k) {
  if (k % 2 == 0) throw std::invalid_argument("binom_val_eq_n_val: k must be odd");
  if (k > n) throw std::invalid_argument("binom_val_eq_n_val: k must not exceed n");
  const unsigned borrows =
      static_cast<unsigned>(std::popcount(k) + std::popcount(n - k) - std::popcount(n));
  return borrows == static_cast<unsigned>(std::countr_zero(n));
}

bool coeff_xa_in_Sn(std::uint64_t a, std::uint64_t n) {
  if (n == 0 || a == 0 || a > n || (n - a) % 2 != 0) return false;
  const int v = std::countr_zero(a);
  if (std::countr_zero(n) != v) return false;
  // [x^a] S_n and [x^{2a}] S_{2n} agree mod 2.
  const std::uint64_t a1 = a >> v;
  const std::uint64_t n1 = n >> v;
  // n1 odd: coefficient n1/m * C(m, a1) with m = (n1 + a1)/2 is odd iff
  // v(C(m, a1)) = v(m).
  return binom_val_eq_n_val((n1 + a1) / 2, a1);
}

CombinatorialCount combinatorial_count(std::uint64_t a) {
  if (a == 0) throw std::invalid_argument("combinatorial_count: a must be positive");
  const DigitStats s = digit_stats(a);
  CombinatorialCount out;
  out.modulus = std::uint64_t{1} << (s.d + 1);
  // Representatives in [P, 2P) so that n >= a for every class.
  for (std::uint64_t n = out.modulus; n < 2 * out.modulus; ++n) {
    if (coeff_xa_in_Sn(a, n)) out.residues.push_back(n - out.modulus);
  }
  out.count = out.residues.size();
  const int e = static_cast<int>(s.z) - static_cast<int>(*s.v) + 1;
  out.closed_form = e >= 0 ? (std::uint64_t{1} << e) : 0;
  return out;
}

}  // namespace etaparity
