#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "etaparity/f2series.hpp"

namespace etaparity {

/// m_r = 24/gcd(24, r), b_r = r/gcd(24, r); always gcd(m_r, b_r) = 1.
struct EtaPowerParams {
  std::uint64_t r = 0;
  std::uint64_t m = 0;
  std::uint64_t b = 0;

  static EtaPowerParams of(std::uint64_t r);
};

/// Allowed residues of one summation index modulo `modulus`.
struct ResidueCondition {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> allowed{0};

  bool admits(std::uint64_t n) const;

  static ResidueCondition any() { return {}; }
  static ResidueCondition odd() { return {2, {1}}; }
  static ResidueCondition coprime_to_6() { return {6, {1, 5}}; }
  static ResidueCondition not_div_by_3() { return {3, {1, 2}}; }
};

/// Sum of q^{a m^2 + b n^2} over m, n >= 1 meeting the conditions, mod 2.
struct CongruenceTheta {
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  ResidueCondition cond_m;
  ResidueCondition cond_n;
};

/// Sum of q^{n^2}, n odd.
F2Series delta_series(std::size_t n);
/// Sum of q^{n^2}, gcd(n, 6) = 1.
F2Series c_series(std::size_t n);
/// Sum of q^{n^2}, n >= 1 and 3 does not divide n.
F2Series f_series(std::size_t n);
/// prod (1 - q^n) mod 2: the generalized pentagonal numbers.
F2Series eta_product_pnt(std::size_t n);

/// q^{b_r} prod (1 - q^{m_r n})^r mod 2, computed as Delta^{b_r} when 3 | r
/// and C^{b_r} otherwise.
F2Series p_r_series(std::uint64_t r, std::size_t n);

F2Series congruence_theta(const CongruenceTheta& spec, std::size_t n);

}  // namespace etaparity
