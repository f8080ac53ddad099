#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace etaparity {

/// Parities of p(0), ..., p(n-1), one bit each.
class ParityTable {
 public:
  ParityTable() = default;
  explicit ParityTable(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

  std::size_t size() const noexcept { return size_; }
  bool odd(std::size_t n) const { return (words_.at(n / 64) >> (n % 64)) & 1U; }

  std::vector<std::uint64_t>& words() noexcept { return words_; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

/// p(n) mod 2 from p(n) = sum over generalized pentagonal g in [1, n] of
/// p(n - g), p(0) = 1.
ParityTable partition_parity(std::size_t n);

/// 24^{-1} mod l, in (0, l), for a prime l >= 5.
std::uint64_t delta_ell(std::uint64_t ell);

enum class WalkKind { All, DeltaSubseq };

WalkKind parse_walk_kind(const std::string& s);

/// Writes the CSV header and n rows (n, step, sum, sqrt_band, two_sqrt_band).
/// Step i is +1 when the i-th parity is even and -1 when odd. For All the i-th
/// parity is that of p(i); for DeltaSubseq it is that of p(delta_l) with l the
/// i-th prime >= 5. Returns the final sum.
std::int64_t emit_walk(WalkKind kind, std::size_t n, std::ostream& out);

}  // namespace etaparity
