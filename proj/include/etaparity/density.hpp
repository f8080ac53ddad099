#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "etaparity/dyadic.hpp"
#include "etaparity/f2series.hpp"
#include "etaparity/genforms.hpp"

namespace etaparity {

/// mu: the least solution of l*mu = b (mod m) with l*mu >= b;
/// delta = (l*mu - b)/m.
struct SubseqIndex {
  std::uint64_t ell = 0;
  std::int64_t r = 0;
  std::uint64_t mu = 0;
  std::uint64_t delta = 0;
};

/// Rejects l in {2, 3}, composite l, and l | m_r.
SubseqIndex mu_delta(std::uint64_t ell, std::uint64_t r);

/// Same window rule for an arbitrary modulus m and signed offset b. With
/// (m, b) = (24, -1) this gives delta = 24^{-1} mod l.
SubseqIndex mu_delta_general(std::uint64_t ell, std::uint64_t m, std::int64_t b);

struct DensityEstimate {
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  std::uint64_t prime_bound = 0;
  double value = 0.0;
  DyadicRational nearest;
  double residual = 0.0;

  double sigma() const;
  /// max(0.02, 4 sigma).
  double tolerance() const;

  static DensityEstimate from_counts(std::uint64_t hits, std::uint64_t samples,
                                     std::uint64_t prime_bound);
};

/// Restricts a scan to primes l = residue (mod modulus).
struct ProgressionFilter {
  std::uint64_t residue = 0;
  std::uint64_t modulus = 1;
};

/// Proportion of primes 5 <= l <= prime_bound (in the progression, if given)
/// with a_l(f) = 1. Needs f.valid_len > prime_bound.
DensityEstimate delta_empirical(const F2Series& f, std::uint64_t prime_bound,
                                std::optional<ProgressionFilter> filter = std::nullopt);

/// Proportion of primes 5 <= l <= prime_bound with a_l(T_p f) = 1, read off f
/// directly: a_{pl}(f), plus a_{l/p}(f) when p = l. p = 1 is the identity and
/// p = 2 reads a_{2l}(f), the U_2 route. Needs f.valid_len > p * prime_bound.
DensityEstimate delta_empirical_shifted(const F2Series& f, std::uint64_t p,
                                        std::uint64_t prime_bound);

struct DirectScan {
  DensityEstimate estimate;
  /// Indexed by l mod m_r.
  std::vector<std::uint64_t> class_hits;
  std::vector<std::uint64_t> class_samples;
};

/// Reads p_r(delta_{l,r}) = a_{l mu}(P_r) for every prime 5 <= l <= prime_bound.
DirectScan direct_scan(std::uint64_t r, std::uint64_t prime_bound);
DensityEstimate D_empirical_direct(std::uint64_t r, std::uint64_t prime_bound);

enum class OpKind { Identity, T, U };

struct FormDescriptor {
  enum class Gen { Delta, C };
  Gen gen = Gen::Delta;
  std::uint64_t exponent = 1;
  std::string to_string() const;
};

struct DecompositionTerm {
  OpKind op = OpKind::Identity;
  std::uint64_t u = 1;
  /// Residue class c of l mod m_r this term accounts for; u = b_r c^{-1}.
  std::uint64_t cls = 1;
  FormDescriptor form;
  std::string to_string() const;
};

/// D(r) = sum over the units c mod m_r of delta(T_{u_c} f), f = P_r, with u_c
/// the least positive residue of b_r c^{-1}. u_c = 1 is the identity and
/// u_c = 2 (only for m_r = 3) is U_2.
std::vector<DecompositionTerm> D_decomposition(std::uint64_t r);

DensityEstimate D_empirical_formula(std::uint64_t r, std::uint64_t prime_bound);

/// Proven value of D(r), where one is known.
std::optional<DyadicRational> D_exact(std::uint64_t r);

struct BoundViolation {
  std::uint64_t r = 0;
  double estimate = 0.0;
  double sigma = 0.0;
  DyadicRational bound;
  bool strict = true;
};

/// Upper bound on D(r): 1/4 if 4 | r, 1/2 if 2 | r, else 1. Strict except for
/// r in {36, 60, 72, 120}, which may reach 1/4.
std::pair<DyadicRational, bool> D_upper_bound(std::uint64_t r);

/// r <= r_max whose estimate minus 3 sigma reaches the bound.
std::vector<BoundViolation> verify_bounds(std::uint64_t r_max, std::uint64_t prime_bound,
                                          unsigned threads = 0);

struct DensityRow {
  std::uint64_t r = 0;
  EtaPowerParams params;
  DensityEstimate estimate;
  std::optional<DyadicRational> exact;
  std::string route;
};

void write_density_csv_header(std::ostream& out);
void write_density_csv_row(std::ostream& out, const DensityRow& row);

/// Runs body(i) for i in [0, count) on up to `threads` workers (0: hardware
/// concurrency). Exceptions from a body are rethrown on the calling thread.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace etaparity
