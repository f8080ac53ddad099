#include "etaparity/walks.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "etaparity/density.hpp"
#include "etaparity/primes.hpp"

namespace etaparity {

namespace {

std::vector<std::size_t> pentagonals_below(std::size_t n) {
  std::vector<std::size_t> g;
  for (std::size_t k = 1;; ++k) {
    const std::size_t lo = k * (3 * k - 1) / 2;
    if (lo >= n) break;
    g.push_back(lo);
    const std::size_t hi = k * (3 * k + 1) / 2;
    if (hi < n) g.push_back(hi);
  }
  return g;
}

// Bits [pos, pos + 64) of w; pos may be negative, bits before 0 read as zero.
std::uint64_t window(const std::vector<std::uint64_t>& w, std::int64_t pos) {
  if (pos <= -64) return 0;
  if (pos < 0) return w[0] << (-pos);
  const auto wi = static_cast<std::size_t>(pos / 64);
  const unsigned bi = static_cast<unsigned>(pos % 64);
  if (bi == 0) return w[wi];
  std::uint64_t x = w[wi] >> bi;
  if (wi + 1 < w.size()) x |= w[wi + 1] << (64 - bi);
  return x;
}

}  // namespace

ParityTable partition_parity(std::size_t n) {
  ParityTable t(n);
  if (n == 0) return t;
  auto& w = t.words();
  const std::vector<std::size_t> pent = pentagonals_below(n);
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t g : pent) (g < 64 ? small : large).push_back(g);

  for (std::size_t wi = 0; wi < w.size(); ++wi) {
    const auto base = static_cast<std::int64_t>(wi * 64);
    // Pentagonals >= 64 only reach into finished words.
    std::uint64_t acc = 0;
    for (std::size_t g : large) {
      if (static_cast<std::int64_t>(g) > base + 63) break;
      acc ^= window(w, base - static_cast<std::int64_t>(g));
    }
    std::uint64_t word = 0;
    for (unsigned j = 0; j < 64; ++j) {
      const std::size_t idx = wi * 64 + j;
      if (idx >= n) break;
      std::uint64_t bit = idx == 0 ? 1 : (acc >> j) & 1U;
      for (std::size_t g : small) {
        if (g > idx) break;
        const std::size_t src = idx - g;
        const std::uint64_t sw = src / 64 == wi ? word : w[src / 64];
        bit ^= (sw >> (src % 64)) & 1U;
      }
      word |= bit << j;
    }
    w[wi] = word;
  }
  return t;
}

std::uint64_t delta_ell(std::uint64_t ell) {
  return mu_delta_general(ell, 24, -1).delta;
}

WalkKind parse_walk_kind(const std::string& s) {
  if (s == "all") return WalkKind::All;
  if (s == "delta-subseq") return WalkKind::DeltaSubseq;
  throw std::invalid_argument("unknown walk kind '" + s + "' (expected all or delta-subseq)");
}

std::int64_t emit_walk(WalkKind kind, std::size_t n, std::ostream& out) {
  std::vector<std::uint64_t> indices;
  indices.reserve(n);
  if (kind == WalkKind::All) {
    for (std::size_t i = 1; i <= n; ++i) indices.push_back(i);
  } else {
    // p_i < i (ln i + ln ln i) for i >= 6; primes 2 and 3 are skipped.
    const double x = static_cast<double>(std::max<std::size_t>(n + 2, 6));
    const auto bound = static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x))) + 32);
    const PrimeSieve sieve(bound);
    for (std::uint64_t p : sieve.primes()) {
      if (indices.size() == n) break;
      if (p >= 5) indices.push_back(delta_ell(p));
    }
    if (indices.size() < n) throw std::logic_error("prime bound estimate too small");
  }
  std::uint64_t top = 0;
  for (std::uint64_t i : indices) top = std::max(top, i);
  const ParityTable parity = partition_parity(static_cast<std::size_t>(top) + 1);

  out << "n,step,sum,sqrt_band,two_sqrt_band\n";
  std::int64_t sum = 0;
  std::string line;
  char buf[32];
  auto append_int = [&](std::int64_t v) {
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    line.append(buf, res.ptr);
  };
  auto append_fixed = [&](double v) {
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 6);
    line.append(buf, res.ptr);
  };
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const std::int64_t step = parity.odd(indices[i]) ? -1 : 1;
    sum += step;
    const auto row = static_cast<std::int64_t>(i + 1);
    const double band = std::sqrt(static_cast<double>(row));
    line.clear();
    append_int(row);
    line += ',';
    append_int(step);
    line += ',';
    append_int(sum);
    line += ',';
    append_fixed(band);
    line += ',';
    append_fixed(2.0 * band);
    line += '\n';
    out << line;
  }
  return sum;
}

}  // namespace etaparity
