#include "etaparity/hecke.hpp"

namespace etaparity {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

F2Series u_op(const F2Series& f, std::uint64_t ell) {
  if (ell < 2) throw std::invalid_argument("U_l needs l >= 2");
  const std::size_t len = f.valid_len() / ell;
  F2Series out(len);
  for (std::size_t n = 0; n < len; ++n) {
    if (f[n * ell]) out.set(n, true);
  }
  return out;
}

F2Series v_op(const F2Series& f, std::uint64_t ell, std::size_t cap) {
  if (ell < 1) throw std::invalid_argument("V_l needs l >= 1");
  return substitute_qk(f, ell, cap);
}

F2Series t_op(const F2Series& f, std::uint64_t ell) {
  if (ell == 2) throw std::invalid_argument("T_2 is not defined mod 2 here; use U_2");
  if (!is_prime_u64(ell)) throw std::invalid_argument("T_l needs an odd prime l");
  if (f.valid_len() < ell) {
    throw PrecisionError("T_" + std::to_string(ell) + " needs at least " + std::to_string(ell) +
                         " coefficients, have " + std::to_string(f.valid_len()));
  }
  const F2Series u = u_op(f, ell);
  return add(u, v_op(f, ell, u.valid_len()));
}

F2Series HeckeOpSpec::apply(const F2Series& f) const {
  if (index < 2) throw std::invalid_argument("Hecke index must be >= 2");
  switch (kind) {
    case Kind::T:
      return t_op(f, index);
    case Kind::U:
      return u_op(f, index);
    case Kind::V:
      return v_op(f, index);
  }
  throw std::logic_error("unreachable");
}

std::string HeckeOpSpec::to_string() const {
  const char c = kind == Kind::T ? 'T' : kind == Kind::U ? 'U' : 'V';
  return std::string(1, c) + std::to_string(index);
}

}  // namespace etaparity
