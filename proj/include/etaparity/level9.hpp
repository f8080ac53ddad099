#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "etaparity/genforms.hpp"
#include "etaparity/genpoly.hpp"

namespace etaparity {

/// F^n + F^{n+3}; gcd(n, 6) = 1 required.
GenPoly k9_basis_element(std::uint32_t n);

/// Checks that every basis element with n <= n_max expands (to n coefficients)
/// into a series killed by U_2 and U_3, and that U_2 F^n, U_3 F^n follow
/// U_2 F^{2k} = F^k, U_2 F^{2k+1} = F^{k+2}, U_3 F^{3k} = (F^3 + F^2 + F)^k,
/// U_3 F^n = 0 otherwise, for n <= 12. Returns one message per violation.
std::vector<std::string> verify_u2_u3_kernel(std::uint32_t n_max, std::size_t n);

struct AbelianForm {
  std::uint32_t i = 0;
  GenPoly poly;
  CongruenceTheta theta;
  F2Series series;              // expansion of poly
  bool representations_agree = false;
};

/// The form alpha_i, i in {5, 7, 11, 13, 17, 19}, with its theta oracle,
/// both expanded to n coefficients.
AbelianForm abelian_form(std::uint32_t i, std::size_t n = 10000);

/// Primes 5 <= l <= prime_bound where a_l(alpha_i) != [l = i mod 24].
std::vector<std::uint64_t> verify_abelian_law(std::uint32_t i, std::uint64_t prime_bound);

inline constexpr std::uint32_t kAbelianClasses[] = {5, 7, 11, 13, 17, 19};

}  // namespace etaparity
