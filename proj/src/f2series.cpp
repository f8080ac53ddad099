#include "etaparity/f2series.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) && defined(__GNUC__)
#include <immintrin.h>
#define ETAPARITY_HAVE_PCLMUL_PATH 1
#endif

namespace etaparity {

using Word = F2Series::Word;

namespace {

constexpr std::size_t kBits = F2Series::kWordBits;

std::size_t words_for(std::size_t len) { return (len + kBits - 1) / kBits; }

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > kNoCap / a) return kNoCap;
  return a * b;
}

}  // namespace

// Grants the kernels in this file direct access to the word buffer.
struct SeriesAccess {
  static std::vector<Word>& words(F2Series& f) { return f.words_; }
  static void clear_tail(F2Series& f) { f.clear_tail(); }
};

F2Series::F2Series(std::size_t valid_len)
    : words_(words_for(valid_len), 0), valid_len_(valid_len) {}

F2Series F2Series::from_support(std::span<const std::size_t> exponents,
                                std::size_t valid_len) {
  F2Series f(valid_len);
  for (std::size_t e : exponents) {
    if (e < valid_len) f.words_[e / kBits] ^= Word{1} << (e % kBits);
  }
  return f;
}

F2Series F2Series::monomial(std::size_t exponent, std::size_t valid_len) {
  F2Series f(valid_len);
  if (exponent < valid_len) f.words_[exponent / kBits] |= Word{1} << (exponent % kBits);
  return f;
}

bool F2Series::coeff(std::size_t n) const {
  if (n >= valid_len_) {
    throw std::out_of_range("coefficient " + std::to_string(n) +
                            " is beyond valid_len " + std::to_string(valid_len_));
  }
  return (*this)[n];
}

void F2Series::flip(std::size_t n) {
  if (n >= valid_len_) throw std::out_of_range("flip beyond valid_len");
  words_[n / kBits] ^= Word{1} << (n % kBits);
}

void F2Series::set(std::size_t n, bool value) {
  if (n >= valid_len_) throw std::out_of_range("set beyond valid_len");
  const Word bit = Word{1} << (n % kBits);
  if (value) {
    words_[n / kBits] |= bit;
  } else {
    words_[n / kBits] &= ~bit;
  }
}

std::vector<std::size_t> F2Series::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    Word x = words_[w];
    while (x != 0) {
      out.push_back(w * kBits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
  return out;
}

std::size_t F2Series::popcount() const noexcept {
  std::size_t n = 0;
  for (Word x : words_) n += static_cast<std::size_t>(std::popcount(x));
  return n;
}

bool F2Series::is_zero() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](Word x) { return x == 0; });
}

std::optional<std::size_t> F2Series::lowest_term() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * kBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return std::nullopt;
}

F2Series F2Series::truncated(std::size_t len) const {
  F2Series f;
  f.valid_len_ = std::min(len, valid_len_);
  f.words_.assign(words_.begin(),
                  words_.begin() + static_cast<std::ptrdiff_t>(words_for(f.valid_len_)));
  f.clear_tail();
  return f;
}

void F2Series::clear_tail() noexcept {
  words_.resize(words_for(valid_len_), 0);
  const std::size_t rem = valid_len_ % kBits;
  if (rem != 0 && !words_.empty()) words_.back() &= (Word{1} << rem) - 1;
}

bool operator==(const F2Series& f, const F2Series& g) noexcept {
  const std::size_t len = std::min(f.valid_len_, g.valid_len_);
  const std::size_t full = len / kBits;
  for (std::size_t w = 0; w < full; ++w) {
    if (f.words_[w] != g.words_[w]) return false;
  }
  const std::size_t rem = len % kBits;
  if (rem == 0) return true;
  const Word mask = (Word{1} << rem) - 1;
  return ((f.words_[full] ^ g.words_[full]) & mask) == 0;
}

F2Series add(const F2Series& f, const F2Series& g) {
  F2Series out = f.truncated(g.valid_len());
  auto& w = SeriesAccess::words(out);
  const auto gw = g.words();
  for (std::size_t i = 0; i < w.size(); ++i) w[i] ^= gw[i];
  SeriesAccess::clear_tail(out);
  return out;
}

namespace detail {

namespace {

void clmul64_soft(std::uint64_t a, std::uint64_t b, std::uint64_t& lo,
                  std::uint64_t& hi) noexcept {
  using U128 = unsigned __int128;
  U128 table[16];
  table[0] = 0;
  table[1] = a;
  for (int i = 2; i < 16; i += 2) {
    table[i] = table[i / 2] << 1;
    table[i + 1] = table[i] ^ a;
  }
  U128 r = 0;
  for (int shift = 60; shift >= 0; shift -= 4) {
    r = (r << 4) ^ table[(b >> shift) & 15U];
  }
  lo = static_cast<std::uint64_t>(r);
  hi = static_cast<std::uint64_t>(r >> 64);
}

#ifdef ETAPARITY_HAVE_PCLMUL_PATH
__attribute__((target("pclmul,sse4.1"))) void clmul64_hw(std::uint64_t a, std::uint64_t b,
                                                          std::uint64_t& lo,
                                                          std::uint64_t& hi) noexcept {
  const __m128i x = _mm_cvtsi64_si128(static_cast<long long>(a));
  const __m128i y = _mm_cvtsi64_si128(static_cast<long long>(b));
  const __m128i p = _mm_clmulepi64_si128(x, y, 0x00);
  lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
  hi = static_cast<std::uint64_t>(_mm_extract_epi64(p, 1));
}

bool cpu_has_pclmul() noexcept {
  static const bool has = __builtin_cpu_supports("pclmul") && __builtin_cpu_supports("sse4.1");
  return has;
}
#endif

constexpr std::size_t kKaratsubaCutoff = 24;

template <typename Clmul>
void schoolbook(const Word* a, const Word* b, std::size_t n, Word* r, Clmul clmul) {
  std::fill(r, r + 2 * n, Word{0});
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      Word lo;
      Word hi;
      clmul(a[i], b[j], lo, hi);
      r[i + j] ^= lo;
      r[i + j + 1] ^= hi;
    }
  }
}

// r[0 .. 2n) = a[0 .. n) * b[0 .. n).
template <typename Clmul>
void karatsuba(const Word* a, const Word* b, std::size_t n, Word* r, Clmul clmul) {
  if (n <= kKaratsubaCutoff) {
    schoolbook(a, b, n, r, clmul);
    return;
  }
  const std::size_t h = (n + 1) / 2;
  const std::size_t l = n - h;

  karatsuba(a, b, h, r, clmul);
  std::vector<Word> z2(2 * h, 0);
  if (l == h) {
    karatsuba(a + h, b + h, h, z2.data(), clmul);
  } else {
    std::vector<Word> a1(h, 0);
    std::vector<Word> b1(h, 0);
    std::copy(a + h, a + n, a1.begin());
    std::copy(b + h, b + n, b1.begin());
    karatsuba(a1.data(), b1.data(), h, z2.data(), clmul);
  }
  std::copy(z2.begin(), z2.begin() + static_cast<std::ptrdiff_t>(2 * l), r + 2 * h);

  std::vector<Word> sa(a, a + h);
  std::vector<Word> sb(b, b + h);
  for (std::size_t i = 0; i < l; ++i) {
    sa[i] ^= a[h + i];
    sb[i] ^= b[h + i];
  }
  std::vector<Word> mid(2 * h);
  karatsuba(sa.data(), sb.data(), h, mid.data(), clmul);
  for (std::size_t i = 0; i < 2 * h; ++i) mid[i] ^= r[i] ^ z2[i];
  // The middle term has fewer than h + l nonzero words.
  const std::size_t span = std::min(2 * h, 2 * n - h);
  for (std::size_t i = 0; i < span; ++i) r[h + i] ^= mid[i];
}

}  // namespace

void clmul64(std::uint64_t a, std::uint64_t b, std::uint64_t& lo, std::uint64_t& hi) noexcept {
#ifdef ETAPARITY_HAVE_PCLMUL_PATH
  if (cpu_has_pclmul()) {
    clmul64_hw(a, b, lo, hi);
    return;
  }
#endif
  clmul64_soft(a, b, lo, hi);
}

bool treat_as_sparse(const F2Series& f, std::size_t len) noexcept {
  return f.popcount() <= len / kBits;
}

F2Series mul_sparse(const F2Series& dense, const F2Series& sparse, std::size_t len) {
  F2Series out(len);
  auto& r = SeriesAccess::words(out);
  const auto d = dense.words();
  const std::size_t nw = r.size();
  for (std::size_t s : sparse.support()) {
    if (s >= len) break;
    const std::size_t wo = s / kBits;
    const unsigned bo = static_cast<unsigned>(s % kBits);
    const std::size_t count = std::min(d.size(), nw - wo);
    if (bo == 0) {
      for (std::size_t i = 0; i < count; ++i) r[wo + i] ^= d[i];
    } else {
      Word carry = 0;
      for (std::size_t i = 0; i < count; ++i) {
        r[wo + i] ^= (d[i] << bo) | carry;
        carry = d[i] >> (kBits - bo);
      }
      if (wo + count < nw) r[wo + count] ^= carry;
    }
  }
  SeriesAccess::clear_tail(out);
  return out;
}

F2Series mul_dense(const F2Series& f, const F2Series& g, std::size_t len) {
  F2Series out(len);
  auto& r = SeriesAccess::words(out);
  const std::size_t nw = r.size();
  if (nw == 0) return out;

  // Trailing zero words of either operand do not contribute.
  auto used = [nw](std::span<const Word> w) {
    std::size_t n = std::min(w.size(), nw);
    while (n > 0 && w[n - 1] == 0) --n;
    return n;
  };
  const std::size_t n = std::max(used(f.words()), used(g.words()));
  if (n == 0) return out;

  std::vector<Word> a(n, 0);
  std::vector<Word> b(n, 0);
  std::copy_n(f.words().begin(), std::min(n, f.words().size()), a.begin());
  std::copy_n(g.words().begin(), std::min(n, g.words().size()), b.begin());
  std::vector<Word> prod(2 * n);
#ifdef ETAPARITY_HAVE_PCLMUL_PATH
  if (cpu_has_pclmul()) {
    karatsuba(a.data(), b.data(), n, prod.data(), clmul64_hw);
  } else {
    karatsuba(a.data(), b.data(), n, prod.data(), clmul64_soft);
  }
#else
  karatsuba(a.data(), b.data(), n, prod.data(), clmul64_soft);
#endif
  std::copy_n(prod.begin(), std::min(nw, prod.size()), r.begin());
  SeriesAccess::clear_tail(out);
  return out;
}

}  // namespace detail

F2Series mul(const F2Series& f, const F2Series& g) {
  const std::size_t len = std::min(f.valid_len(), g.valid_len());
  if (detail::treat_as_sparse(g, len)) return detail::mul_sparse(f, g, len);
  if (detail::treat_as_sparse(f, len)) return detail::mul_sparse(g, f, len);
  return detail::mul_dense(f, g, len);
}

namespace {

// Spreads the 32 bits of x to the even bit positions of a 64-bit word.
Word spread32(Word x) {
  x &= 0xFFFFFFFFULL;
  x = (x | (x << 16)) & 0x0000FFFF0000FFFFULL;
  x = (x | (x << 8)) & 0x00FF00FF00FF00FFULL;
  x = (x | (x << 4)) & 0x0F0F0F0F0F0F0F0FULL;
  x = (x | (x << 2)) & 0x3333333333333333ULL;
  x = (x | (x << 1)) & 0x5555555555555555ULL;
  return x;
}

}  // namespace

F2Series square(const F2Series& f, std::size_t cap) {
  const std::size_t len = std::min(saturating_mul(f.valid_len(), 2), cap);
  F2Series out(len);
  auto& r = SeriesAccess::words(out);
  const auto w = f.words();
  for (std::size_t i = 0; i < w.size() && 2 * i < r.size(); ++i) {
    r[2 * i] = spread32(w[i]);
    if (2 * i + 1 < r.size()) r[2 * i + 1] = spread32(w[i] >> 32);
  }
  SeriesAccess::clear_tail(out);
  return out;
}

F2Series power(const F2Series& f, std::uint64_t e, std::size_t n) {
  if (e == 0) throw std::invalid_argument("power: exponent must be positive");
  const std::size_t len = std::min(n, f.valid_len());
  F2Series factor = f.truncated(len);
  std::optional<F2Series> acc;
  while (true) {
    if ((e & 1U) != 0) acc = acc ? mul(*acc, factor) : factor;
    e >>= 1;
    if (e == 0) break;
    factor = square(factor, len);
  }
  return *acc;
}

F2Series substitute_qk(const F2Series& f, std::size_t k, std::size_t cap) {
  if (k == 0) throw std::invalid_argument("substitute_qk: k must be positive");
  if (k == 1) return f.truncated(cap);
  if (k == 2) return square(f, cap);
  const std::size_t len = std::min(saturating_mul(f.valid_len(), k), cap);
  F2Series out(len);
  auto& r = SeriesAccess::words(out);
  for (std::size_t e : f.support()) {
    const std::size_t t = e * k;
    if (t >= len) break;
    r[t / kBits] |= Word{1} << (t % kBits);
  }
  return out;
}

}  // namespace etaparity
