#include "etaparity/level9.hpp"

#include <numeric>
#include <stdexcept>

#include "etaparity/hecke.hpp"
#include "etaparity/primes.hpp"

namespace etaparity {

GenPoly k9_basis_element(std::uint32_t n) {
  if (std::gcd(n, 6U) != 1) throw std::invalid_argument("K(9) basis index must be prime to 6");
  return GenPoly(Level::Nine, {n, n + 3});
}

std::vector<std::string> verify_u2_u3_kernel(std::uint32_t n_max, std::size_t n) {
  std::vector<std::string> bad;
  for (std::uint32_t k = 1; k <= n_max; ++k) {
    if (std::gcd(k, 6U) != 1) continue;
    const F2Series s = expand(k9_basis_element(k), n);
    if (!u_op(s, 2).is_zero()) bad.push_back("U2 does not kill F^" + std::to_string(k) + " + F^" +
                                             std::to_string(k + 3));
    if (!u_op(s, 3).is_zero()) bad.push_back("U3 does not kill F^" + std::to_string(k) + " + F^" +
                                             std::to_string(k + 3));
  }

  const GenPoly cubic(Level::Nine, {1, 2, 3});
  for (std::uint32_t k = 0; k <= 12; ++k) {
    const GenPoly fk(Level::Nine, {k});
    const GenPoly want2(Level::Nine, {k % 2 == 0 ? k / 2 : (k + 3) / 2});
    const GenPoly want3 = k % 3 == 0 ? genpoly_pow(cubic, k / 3) : GenPoly(Level::Nine, {});
    // F^0 = 1 is fixed by both operators; the bound below covers the rest.
    const std::size_t len = 3 * 2 * (static_cast<std::size_t>(k) + 8);
    const F2Series s = expand(fk, len);
    if (!(u_op(s, 2) == expand(want2, len / 2))) {
      bad.push_back("U2(F^" + std::to_string(k) + ") != " + want2.to_string());
    }
    if (!(u_op(s, 3) == expand(want3, len / 3))) {
      bad.push_back("U3(F^" + std::to_string(k) + ") != " + want3.to_string());
    }
  }
  return bad;
}

AbelianForm abelian_form(std::uint32_t i, std::size_t n) {
  const GenPoly c(Level::Nine, {1, 4});
  const auto coprime6 = ResidueCondition::coprime_to_6();
  const auto odd = ResidueCondition::odd();
  const auto not3 = ResidueCondition::not_div_by_3();
  AbelianForm out;
  out.i = i;
  switch (i) {
    case 5:
      out.poly = genpoly_pow(c, 5);
      out.theta = {4, 1, coprime6, coprime6};
      break;
    case 7:
      out.poly = genpoly_pow(c, 7);
      out.theta = {4, 3, coprime6, odd};
      break;
    case 11:
      out.poly = GenPoly(Level::Nine, {11, 14, 17, 20});
      out.theta = {3, 8, odd, not3};
      break;
    case 13:
      out.poly = genpoly_pow(c, 13);
      out.theta = {1, 12, coprime6, odd};
      break;
    case 17:
      out.poly = GenPoly(Level::Nine, {17, 20});
      out.theta = {16, 1, not3, coprime6};
      break;
    case 19:
      out.poly = GenPoly(Level::Nine, {19, 22, 25, 28});
      out.theta = {3, 16, odd, not3};
      break;
    default:
      throw std::invalid_argument("abelian form index must be one of 5, 7, 11, 13, 17, 19");
  }
  out.series = expand(out.poly, n);
  out.representations_agree = out.series == congruence_theta(out.theta, n);
  return out;
}

std::vector<std::uint64_t> verify_abelian_law(std::uint32_t i, std::uint64_t prime_bound) {
  const AbelianForm a = abelian_form(i, static_cast<std::size_t>(prime_bound) + 1);
  std::vector<std::uint64_t> bad;
  const PrimeSieve sieve(prime_bound);
  for (std::uint64_t ell : sieve.primes()) {
    if (ell < 5) continue;
    const bool want = ell % 24 == i;
    if (a.series[ell] != want) bad.push_back(ell);
  }
  return bad;
}

}  // namespace etaparity
