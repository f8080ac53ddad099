#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "etaparity/f2series.hpp"

namespace etaparity {

/// Raised when an operation would need coefficients the input does not carry.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a_n(U_l f) = a_{ln}(f); valid_len floor(L / l).
F2Series u_op(const F2Series& f, std::uint64_t ell);

/// f(q^l); alias of substitute_qk.
F2Series v_op(const F2Series& f, std::uint64_t ell, std::size_t cap = kNoCap);

/// T_l = U_l + V_l for an odd prime l; valid_len floor(L / l).
/// Rejects l = 2 and composite l; throws PrecisionError when L < l.
F2Series t_op(const F2Series& f, std::uint64_t ell);

struct HeckeOpSpec {
  enum class Kind { T, U, V };
  Kind kind = Kind::T;
  std::uint64_t index = 3;

  F2Series apply(const F2Series& f) const;
  std::string to_string() const;
};

bool is_prime_u64(std::uint64_t n);

}  // namespace etaparity
