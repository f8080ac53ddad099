#include "etaparity/primes.hpp"

#include <stdexcept>

namespace etaparity {

PrimeSieve::PrimeSieve(std::uint64_t bound) : bound_(bound) {
  const std::uint64_t odd_count = bound / 2 + 1;  // 1, 3, ..., covering bound
  composite_.assign(odd_count / 64 + 1, 0);
  auto is_marked = [this](std::uint64_t i) { return (composite_[i / 64] >> (i % 64)) & 1U; };
  auto mark = [this](std::uint64_t i) { composite_[i / 64] |= std::uint64_t{1} << (i % 64); };
  mark(0);  // 1 is not prime
  for (std::uint64_t p = 3; p * p <= bound; p += 2) {
    if (is_marked(p / 2)) continue;
    for (std::uint64_t m = p * p; m <= bound; m += 2 * p) mark(m / 2);
  }
  if (bound >= 2) primes_.push_back(2);
  for (std::uint64_t n = 3; n <= bound; n += 2) {
    if (!is_marked(n / 2)) primes_.push_back(n);
  }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n > bound_) throw std::out_of_range("PrimeSieve::is_prime beyond sieve bound");
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  const std::uint64_t i = n / 2;
  return ((composite_[i / 64] >> (i % 64)) & 1U) == 0;
}

std::vector<std::uint64_t> PrimeSieve::primes_in_class(std::uint64_t residue,
                                                       std::uint64_t modulus) const {
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_) {
    if (p % modulus == residue % modulus) out.push_back(p);
  }
  return out;
}

}  // namespace etaparity
