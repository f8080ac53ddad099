#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace etaparity {

/// numerator / 2^log_denominator, kept in lowest terms (numerator odd or zero,
/// and log_denominator = 0 when numerator = 0).
class DyadicRational {
 public:
  constexpr DyadicRational() = default;
  DyadicRational(std::uint64_t numerator, unsigned log_denominator);

  std::uint64_t numerator() const noexcept { return num_; }
  unsigned log_denominator() const noexcept { return logden_; }

  double to_double() const noexcept;
  std::string to_string() const;

  friend DyadicRational operator+(DyadicRational x, DyadicRational y);
  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& x, const DyadicRational& y);

 private:
  std::uint64_t num_ = 0;
  unsigned logden_ = 0;
};

/// 2^-k.
DyadicRational pow2_inv(unsigned k);

/// Closest a/2^k to v with k <= max_log_den, ties toward the smaller value.
DyadicRational nearest_dyadic(double v, unsigned max_log_den = 6);

}  // namespace etaparity
