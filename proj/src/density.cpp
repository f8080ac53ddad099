#include "etaparity/density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "etaparity/hecke.hpp"
#include "etaparity/level1.hpp"
#include "etaparity/primes.hpp"

namespace etaparity {

namespace {

// Inverse of x modulo m for gcd(x, m) = 1; m <= 24 in practice.
std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t m) {
  if (m == 1) return 0;
  x %= m;
  for (std::uint64_t y = 1; y < m; ++y) {
    if ((x * y) % m == 1) return y;
  }
  throw std::invalid_argument("no inverse modulo " + std::to_string(m));
}

std::vector<std::uint64_t> units_mod(std::uint64_t m) {
  if (m == 1) return {0};
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 1; c < m; ++c) {
    if (std::gcd(c, m) == 1) out.push_back(c);
  }
  return out;
}

// Primes 5 <= l <= bound.
std::vector<std::uint64_t> scan_primes(std::uint64_t bound) {
  const PrimeSieve sieve(bound);
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : sieve.primes()) {
    if (p >= 5) out.push_back(p);
  }
  return out;
}

void require_len(const F2Series& f, std::uint64_t needed) {
  if (f.valid_len() <= needed) {
    throw PrecisionError("density scan needs coefficient " + std::to_string(needed) +
                         " but the series has only " + std::to_string(f.valid_len()));
  }
}

}  // namespace

SubseqIndex mu_delta_general(std::uint64_t ell, std::uint64_t m, std::int64_t b) {
  if (ell == 2 || ell == 3) throw std::invalid_argument("primes 2 and 3 are excluded");
  if (!is_prime_u64(ell)) throw std::invalid_argument(std::to_string(ell) + " is not prime");
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  if (m % ell == 0) throw std::invalid_argument("l must not divide m");
  const auto sm = static_cast<std::int64_t>(m);
  const auto sl = static_cast<std::int64_t>(ell);
  const std::int64_t bmod = ((b % sm) + sm) % sm;
  const auto mu0 = static_cast<std::int64_t>((static_cast<std::uint64_t>(bmod) *
                                              inverse_mod(ell, m)) % m);
  // Least mu with l*mu >= b.
  const std::int64_t lo = b >= 0 ? (b + sl - 1) / sl : -((-b) / sl);
  const std::int64_t mu = lo + (((mu0 - lo) % sm) + sm) % sm;
  SubseqIndex out;
  out.ell = ell;
  out.mu = static_cast<std::uint64_t>(mu);
  out.delta = static_cast<std::uint64_t>((sl * mu - b) / sm);
  return out;
}

SubseqIndex mu_delta(std::uint64_t ell, std::uint64_t r) {
  const EtaPowerParams p = EtaPowerParams::of(r);
  SubseqIndex out = mu_delta_general(ell, p.m, static_cast<std::int64_t>(p.b));
  out.r = static_cast<std::int64_t>(r);
  return out;
}

double DensityEstimate::sigma() const {
  if (samples == 0) return 0.0;
  return std::sqrt(value * (1.0 - value) / static_cast<double>(samples));
}

double DensityEstimate::tolerance() const { return std::max(0.02, 4.0 * sigma()); }

DensityEstimate DensityEstimate::from_counts(std::uint64_t hits, std::uint64_t samples,
                                             std::uint64_t prime_bound) {
  DensityEstimate e;
  e.hits = hits;
  e.samples = samples;
  e.prime_bound = prime_bound;
  e.value = samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples);
  e.nearest = nearest_dyadic(e.value, 6);
  e.residual = std::abs(e.value - e.nearest.to_double());
  return e;
}

DensityEstimate delta_empirical(const F2Series& f, std::uint64_t prime_bound,
                                std::optional<ProgressionFilter> filter) {
  require_len(f, prime_bound);
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  for (std::uint64_t ell : scan_primes(prime_bound)) {
    if (filter && ell % filter->modulus != filter->residue % filter->modulus) continue;
    ++samples;
    if (f[ell]) ++hits;
  }
  return DensityEstimate::from_counts(hits, samples, prime_bound);
}

DensityEstimate delta_empirical_shifted(const F2Series& f, std::uint64_t p,
                                        std::uint64_t prime_bound) {
  if (p == 0) throw std::invalid_argument("shift must be positive");
  require_len(f, p * prime_bound);
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  for (std::uint64_t ell : scan_primes(prime_bound)) {
    ++samples;
    bool bit = f[p * ell];
    if (p == ell) bit = bit != f[1];
    if (bit) ++hits;
  }
  return DensityEstimate::from_counts(hits, samples, prime_bound);
}

DirectScan direct_scan(std::uint64_t r, std::uint64_t prime_bound) {
  const EtaPowerParams params = EtaPowerParams::of(r);
  const F2Series pr = p_r_series(r, params.b + params.m * prime_bound + 1);
  DirectScan out;
  out.class_hits.assign(params.m, 0);
  out.class_samples.assign(params.m, 0);
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  for (std::uint64_t ell : scan_primes(prime_bound)) {
    const SubseqIndex idx = mu_delta(ell, r);
    const std::uint64_t cls = ell % params.m;
    ++samples;
    ++out.class_samples[cls];
    if (pr[ell * idx.mu]) {
      ++hits;
      ++out.class_hits[cls];
    }
  }
  out.estimate = DensityEstimate::from_counts(hits, samples, prime_bound);
  return out;
}

DensityEstimate D_empirical_direct(std::uint64_t r, std::uint64_t prime_bound) {
  return direct_scan(r, prime_bound).estimate;
}

std::string FormDescriptor::to_string() const {
  return std::string(gen == Gen::Delta ? "Delta" : "C") + "^" + std::to_string(exponent);
}

std::string DecompositionTerm::to_string() const {
  std::string op_name = op == OpKind::Identity ? "id" : op == OpKind::T ? "T" : "U";
  if (op != OpKind::Identity) op_name += std::to_string(u);
  return op_name + " " + form.to_string();
}

std::vector<DecompositionTerm> D_decomposition(std::uint64_t r) {
  const EtaPowerParams params = EtaPowerParams::of(r);
  const FormDescriptor form{r % 3 == 0 ? FormDescriptor::Gen::Delta : FormDescriptor::Gen::C,
                            params.b};
  std::vector<DecompositionTerm> terms;
  for (std::uint64_t c : units_mod(params.m)) {
    std::uint64_t u = params.m == 1 ? 1 : (params.b % params.m) * inverse_mod(c, params.m) % params.m;
    if (u == 0) u = params.m;
    DecompositionTerm t;
    t.u = u;
    t.cls = c;
    t.form = form;
    t.op = u == 1 ? OpKind::Identity : u == 2 ? OpKind::U : OpKind::T;
    if (t.op == OpKind::T && !is_prime_u64(u)) {
      throw std::logic_error("decomposition produced composite operator index");
    }
    terms.push_back(t);
  }
  std::sort(terms.begin(), terms.end(),
            [](const DecompositionTerm& x, const DecompositionTerm& y) { return x.u < y.u; });
  return terms;
}

DensityEstimate D_empirical_formula(std::uint64_t r, std::uint64_t prime_bound) {
  const auto terms = D_decomposition(r);
  std::uint64_t max_u = 1;
  for (const auto& t : terms) max_u = std::max(max_u, t.u);
  const F2Series f = p_r_series(r, max_u * prime_bound + 1);
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  for (const auto& t : terms) {
    const DensityEstimate e = delta_empirical_shifted(f, t.u, prime_bound);
    hits += e.hits;
    samples = e.samples;
  }
  return DensityEstimate::from_counts(hits, samples, prime_bound);
}

std::optional<DyadicRational> D_exact(std::uint64_t r) {
  if (r == 0) throw std::invalid_argument("r must be positive");
  if (32 % r == 0 || r % 32 == 0 || 48 % r == 0 || r % 48 == 0) return DyadicRational{};

  for (unsigned n = 1; n <= 20; ++n) {
    const std::uint64_t z = z_family(n);
    const std::uint64_t w = w_family(n);
    if (r == 3 * z || r == 6 * z) return n == 1 ? DyadicRational(1, 2) : pow2_inv(n);
    if (r == 12 * z || r == 24 * z) return pow2_inv(n + 1);
    if (r == 9 * z || r == 18 * z) return DyadicRational(3, n + 2);
    if (r == 36 * z || r == 72 * z) return pow2_inv(n + 2);
    if (r == 3 * w) return n == 1 ? DyadicRational(1, 2) : DyadicRational(3, n + 1);
    if (r == 6 * w || r == 12 * w || r == 24 * w) return pow2_inv(n + 1);
  }

  for (std::uint64_t a : {1, 2, 4, 8}) {
    for (std::uint64_t s : {5, 7, 13}) {
      if (r == a * s) return DyadicRational(1, 3);
    }
  }
  for (std::uint64_t s : {7, 19, 21}) {
    if (r == 3 * s) return DyadicRational(5, 3);
    if (r == 6 * s) return s == 7 ? DyadicRational(3, 3) : DyadicRational(1, 2);
    if (r == 12 * s || r == 24 * s) return DyadicRational(1, 3);
  }
  return std::nullopt;
}

std::pair<DyadicRational, bool> D_upper_bound(std::uint64_t r) {
  if (r == 36 || r == 60 || r == 72 || r == 120) return {DyadicRational(1, 2), false};
  if (r % 4 == 0) return {DyadicRational(1, 2), true};
  if (r % 2 == 0) return {DyadicRational(1, 1), true};
  return {DyadicRational(1, 0), true};
}

std::vector<BoundViolation> verify_bounds(std::uint64_t r_max, std::uint64_t prime_bound,
                                          unsigned threads) {
  std::vector<DensityEstimate> est(r_max);
  parallel_for(r_max, threads, [&](std::size_t i) { est[i] = D_empirical_direct(i + 1, prime_bound); });
  std::vector<BoundViolation> bad;
  for (std::uint64_t r = 1; r <= r_max; ++r) {
    const DensityEstimate& e = est[r - 1];
    const auto [bound, strict] = D_upper_bound(r);
    const double low = e.value - 3.0 * e.sigma();
    const bool violated = strict ? low >= bound.to_double() : low > bound.to_double();
    if (violated) bad.push_back({r, e.value, e.sigma(), bound, strict});
  }
  return bad;
}

void write_density_csv_header(std::ostream& out) {
  out << "r,m_r,b_r,prime_bound,samples,hits,value,nearest_dyadic,residual,exact,route\n";
}

void write_density_csv_row(std::ostream& out, const DensityRow& row) {
  const auto& e = row.estimate;
  out << row.r << ',' << row.params.m << ',' << row.params.b << ',' << e.prime_bound << ','
      << e.samples << ',' << e.hits << ',' << std::setprecision(6) << std::fixed << e.value
      << ',' << e.nearest.to_string() << ',' << e.residual << ','
      << (row.exact ? row.exact->to_string() : std::string()) << ',' << row.route << '\n';
  out.unsetf(std::ios::fixed);
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace etaparity
