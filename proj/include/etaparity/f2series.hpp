#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace etaparity {

/// Sentinel for "no precision cap" in the dilating operations.
inline constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

/// A truncated power series over F_2, a_0 + a_1 q + ... , stored as packed bits.
///
/// Only the coefficients a_0 .. a_{valid_len-1} are known. Bits at or past
/// valid_len are always stored as zero, and two series compare equal when they
/// agree on the first min(valid_len) coefficients.
class F2Series {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  F2Series() = default;

  /// The zero series, known to `valid_len` coefficients.
  explicit F2Series(std::size_t valid_len);

  /// Sum of q^e over the given exponents, XOR-accumulated; exponents at or
  /// past valid_len are dropped.
  static F2Series from_support(std::span<const std::size_t> exponents,
                               std::size_t valid_len);
  static F2Series monomial(std::size_t exponent, std::size_t valid_len);

  std::size_t valid_len() const noexcept { return valid_len_; }

  /// Coefficient a_n; throws std::out_of_range when n >= valid_len.
  bool coeff(std::size_t n) const;

  /// Unchecked read; anything past valid_len reads as zero.
  bool operator[](std::size_t n) const noexcept {
    const std::size_t w = n / kWordBits;
    return w < words_.size() && ((words_[w] >> (n % kWordBits)) & 1U) != 0;
  }

  void flip(std::size_t n);
  void set(std::size_t n, bool value);

  std::vector<std::size_t> support() const;
  std::size_t popcount() const noexcept;
  bool is_zero() const noexcept;
  std::optional<std::size_t> lowest_term() const noexcept;

  /// Same coefficients with valid_len lowered to min(len, valid_len).
  F2Series truncated(std::size_t len) const;

  std::span<const Word> words() const noexcept { return words_; }

  /// Exact representation equality (valid_len included).
  bool identical(const F2Series& other) const noexcept {
    return valid_len_ == other.valid_len_ && words_ == other.words_;
  }

  friend bool operator==(const F2Series& f, const F2Series& g) noexcept;

 private:
  friend struct SeriesAccess;

  void clear_tail() noexcept;

  std::vector<Word> words_;
  std::size_t valid_len_ = 0;
};

/// Coefficientwise XOR; valid_len = min of the inputs.
F2Series add(const F2Series& f, const F2Series& g);

/// Product truncated to min(valid_len). Dispatches to the sparse kernel when
/// either operand has at most len/64 nonzero coefficients.
F2Series mul(const F2Series& f, const F2Series& g);

/// Frobenius: coefficient 2n of the result is a_n(f). valid_len doubles,
/// capped at `cap`.
F2Series square(const F2Series& f, std::size_t cap = kNoCap);

/// First min(n, f.valid_len) coefficients of f^e, e >= 1, by square-and-multiply.
F2Series power(const F2Series& f, std::uint64_t e, std::size_t n);

/// f(q^k): coefficient kn of the result is a_n(f); valid_len = k * f.valid_len
/// capped at `cap`.
F2Series substitute_qk(const F2Series& f, std::size_t k, std::size_t cap = kNoCap);

inline F2Series operator+(const F2Series& f, const F2Series& g) { return add(f, g); }
inline F2Series operator*(const F2Series& f, const F2Series& g) { return mul(f, g); }

namespace detail {

/// 64x64 -> 128 carryless product; hi:lo.
void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) noexcept;

/// The two multiplication kernels behind `mul`, exposed so they can be
/// checked against each other. Both truncate to `len` coefficients.
F2Series mul_sparse(const F2Series& dense, const F2Series& sparse, std::size_t len);
F2Series mul_dense(const F2Series& f, const F2Series& g, std::size_t len);

bool treat_as_sparse(const F2Series& f, std::size_t len) noexcept;

}  // namespace detail

}  // namespace etaparity
