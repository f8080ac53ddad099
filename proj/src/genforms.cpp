#include "etaparity/genforms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace etaparity {

EtaPowerParams EtaPowerParams::of(std::uint64_t r) {
  if (r == 0) throw std::invalid_argument("eta power r must be positive");
  const std::uint64_t g = std::gcd<std::uint64_t>(24, r);
  return {r, 24 / g, r / g};
}

bool ResidueCondition::admits(std::uint64_t n) const {
  const std::uint64_t res = n % modulus;
  return std::find(allowed.begin(), allowed.end(), res) != allowed.end();
}

namespace {

template <typename Pred>
F2Series squares_where(std::size_t len, Pred keep) {
  F2Series f(len);
  for (std::size_t k = 1; k * k < len; ++k) {
    if (keep(k)) f.set(k * k, true);
  }
  return f;
}

}  // namespace

F2Series delta_series(std::size_t n) {
  return squares_where(n, [](std::size_t k) { return k % 2 == 1; });
}

F2Series c_series(std::size_t n) {
  return squares_where(n, [](std::size_t k) { return k % 2 == 1 && k % 3 != 0; });
}

F2Series f_series(std::size_t n) {
  return squares_where(n, [](std::size_t k) { return k % 3 != 0; });
}

F2Series eta_product_pnt(std::size_t n) {
  F2Series f(n);
  if (n == 0) return f;
  f.set(0, true);
  for (std::size_t k = 1;; ++k) {
    const std::size_t lo = k * (3 * k - 1) / 2;
    if (lo >= n) break;
    f.set(lo, true);
    const std::size_t hi = k * (3 * k + 1) / 2;
    if (hi < n) f.set(hi, true);
  }
  return f;
}

F2Series p_r_series(std::uint64_t r, std::size_t n) {
  const EtaPowerParams p = EtaPowerParams::of(r);
  const F2Series base = (r % 3 == 0) ? delta_series(n) : c_series(n);
  return power(base, p.b, n);
}

F2Series congruence_theta(const CongruenceTheta& spec, std::size_t n) {
  if (spec.a == 0 || spec.b == 0) throw std::invalid_argument("theta coefficients must be positive");
  F2Series f(n);
  for (std::uint64_t m = 1; spec.a * m * m < n; ++m) {
    if (!spec.cond_m.admits(m)) continue;
    const std::uint64_t am = spec.a * m * m;
    for (std::uint64_t k = 1; am + spec.b * k * k < n; ++k) {
      if (spec.cond_n.admits(k)) f.flip(am + spec.b * k * k);
    }
  }
  return f;
}

}  // namespace etaparity
