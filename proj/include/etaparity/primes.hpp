#pragma once

#include <cstdint>
#include <vector>

namespace etaparity {

/// Sieve of Eratosthenes over the odd numbers up to `bound` (inclusive).
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint64_t bound);

  std::uint64_t bound() const noexcept { return bound_; }
  bool is_prime(std::uint64_t n) const;

  /// All primes <= bound, ascending.
  const std::vector<std::uint64_t>& primes() const noexcept { return primes_; }

  /// Primes p <= bound with p = residue (mod modulus).
  std::vector<std::uint64_t> primes_in_class(std::uint64_t residue, std::uint64_t modulus) const;

 private:
  std::uint64_t bound_;
  std::vector<std::uint64_t> composite_;  // bit i <-> 2i + 1
  std::vector<std::uint64_t> primes_;
};

}  // namespace etaparity
