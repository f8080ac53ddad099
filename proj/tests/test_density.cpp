#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "etaparity/density.hpp"
#include "etaparity/genforms.hpp"
#include "etaparity/hecke.hpp"
#include "etaparity/primes.hpp"

using namespace etaparity;

namespace {

bool trial_division(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::string ops_of(std::uint64_t r) {
  std::string s;
  for (const auto& t : D_decomposition(r)) s += (s.empty() ? "" : ",") + t.to_string();
  return s;
}

}  // namespace

TEST_SUITE("density") {
  TEST_CASE("prime sieve against trial division") {
    const PrimeSieve sieve(10'000);
    bool ok = true;
    for (std::uint64_t n = 0; n <= 10'000; ++n) ok = ok && sieve.is_prime(n) == trial_division(n);
    CHECK(ok);
    CHECK(sieve.primes().size() == 1229);
    CHECK(sieve.primes_in_class(1, 24).front() == 73);
    CHECK_THROWS_AS(sieve.is_prime(10'001), std::out_of_range);
  }

  TEST_CASE("mu_delta examples") {
    const SubseqIndex a = mu_delta(5, 18);
    CHECK(a.mu == 3);
    CHECK(a.delta == 3);
    const SubseqIndex b = mu_delta(7, 120);
    CHECK(b.mu == 1);
    CHECK(b.delta == 2);
    const SubseqIndex c = mu_delta(13, 120);
    CHECK(c.mu == 1);
    CHECK(c.delta == 8);
    CHECK_THROWS_AS(mu_delta(2, 5), std::invalid_argument);
    CHECK_THROWS_AS(mu_delta(3, 5), std::invalid_argument);
    CHECK_THROWS_AS(mu_delta(9, 5), std::invalid_argument);
    CHECK_THROWS_AS(mu_delta_general(5, 10, 1), std::invalid_argument);
  }

  TEST_CASE("mu_delta window invariants") {
    const PrimeSieve sieve(2000);
    bool ok = true;
    for (std::uint64_t r = 1; r <= 200; ++r) {
      const auto p = EtaPowerParams::of(r);
      for (std::uint64_t ell : sieve.primes()) {
        if (ell < 5) continue;
        const SubseqIndex s = mu_delta(ell, r);
        ok = ok && (ell * s.mu) % p.m == p.b % p.m;
        ok = ok && ell * s.mu >= p.b && ell * s.mu < p.b + ell * p.m;
        ok = ok && ell * s.mu == p.b + p.m * s.delta;
      }
    }
    CHECK(ok);
  }

  TEST_CASE("delta_empirical") {
    const std::uint64_t bound = 100'000;
    const F2Series d = delta_series(bound + 1);
    CHECK(delta_empirical(d, bound).hits == 0);
    const DensityEstimate d3 = delta_empirical(power(d, 3, bound + 1), bound);
    CHECK(std::abs(d3.value - 0.25) <= d3.tolerance());
    CHECK(d3.nearest == DyadicRational(1, 2));
    const DensityEstimate c5 = delta_empirical(power(c_series(bound + 1), 5, bound + 1), bound);
    CHECK(std::abs(c5.value - 0.125) <= c5.tolerance());
    CHECK_THROWS_AS(delta_empirical(d, 2 * bound), PrecisionError);
    const DensityEstimate filtered =
        delta_empirical(power(d, 3, bound + 1), bound, ProgressionFilter{3, 8});
    CHECK(filtered.value > 0.9);
  }

  TEST_CASE("delta_empirical_shifted") {
    const std::uint64_t bound = 50'000;
    const std::size_t n = 7 * bound + 1;
    const F2Series d = delta_series(n);
    CHECK(delta_empirical_shifted(power(d, 3, n), 3, bound).value < 0.01);
    CHECK(delta_empirical_shifted(power(c_series(n), 7, n), 7, bound).value < 0.01);
    const DensityEstimate d7 = delta_empirical_shifted(power(d, 7, n), 3, bound);
    CHECK(std::abs(d7.value - 0.25) <= d7.tolerance());
    // Reading a_{pl} matches applying T_p.
    const F2Series f = power(d, 7, n);
    CHECK(delta_empirical_shifted(f, 3, bound).hits == delta_empirical(t_op(f, 3), bound).hits);
    CHECK_THROWS_AS(delta_empirical_shifted(f, 11, bound), PrecisionError);
  }

  TEST_CASE("D_decomposition rows") {
    CHECK(ops_of(18) == "id Delta^3,T3 Delta^3");
    CHECK(ops_of(35) ==
          "id C^35,T5 C^35,T7 C^35,T11 C^35,T13 C^35,T17 C^35,T19 C^35,T23 C^35");
    CHECK(ops_of(40) == "id C^5,U2 C^5");
    CHECK(ops_of(9) == "id Delta^3,T3 Delta^3,T5 Delta^3,T7 Delta^3");
    CHECK(ops_of(48) == "id Delta^2");
    CHECK(ops_of(10) == "id C^5,T5 C^5,T7 C^5,T11 C^5");
    CHECK(ops_of(20) == "id C^5,T5 C^5");
    CHECK(ops_of(120) == "id Delta^5");
    CHECK(ops_of(60) == "id Delta^5");
    for (std::uint64_t r = 1; r <= 300; ++r) {
      const auto p = EtaPowerParams::of(r);
      const auto terms = D_decomposition(r);
      std::size_t units = 0;
      for (std::uint64_t c = 0; c < p.m; ++c) units += std::gcd(c, p.m) == 1 ? 1 : 0;
      CHECK(terms.size() == std::max<std::size_t>(units, 1));
    }
  }

  TEST_CASE("direct and formula routes") {
    const std::uint64_t bound = 100'000;
    const DensityEstimate d18 = D_empirical_formula(18, bound);
    CHECK(std::abs(d18.value - 0.25) <= d18.tolerance());
    const DensityEstimate d5 = D_empirical_formula(5, bound);
    CHECK(std::abs(d5.value - 0.125) <= d5.tolerance());
    const DensityEstimate d9 = D_empirical_direct(9, bound);
    CHECK(std::abs(d9.value - 0.25) <= d9.tolerance());
    const DensityEstimate d21 = D_empirical_direct(21, bound);
    CHECK(std::abs(d21.value - 0.625) <= d21.tolerance());
    CHECK(D_empirical_direct(1, bound).hits < 10);
    // r = 24 s reduces to delta(Delta^s).
    for (std::uint64_t s : {1, 5, 7}) {
      const F2Series ds = power(delta_series(bound + 1), s, bound + 1);
      CHECK(D_empirical_formula(24 * s, bound).hits == delta_empirical(ds, bound).hits);
    }
  }

  TEST_CASE("routes agree for r <= 64") {
    const std::uint64_t bound = 100'000;
    for (std::uint64_t r = 1; r <= 64; ++r) {
      const DensityEstimate a = D_empirical_direct(r, bound);
      const DensityEstimate b = D_empirical_formula(r, bound);
      CHECK_MESSAGE(std::abs(a.value - b.value) <= 0.02, "r = " << r);
      // The routes read the same coefficients for every l > max(b_r, m_r).
      const auto p = EtaPowerParams::of(r);
      const std::uint64_t slack = std::max(p.b, p.m);
      CHECK(a.hits - std::min(a.hits, b.hits) <= slack);
      CHECK(b.hits - std::min(a.hits, b.hits) <= slack);
    }
  }

  TEST_CASE("per-class hits match the Hecke terms") {
    const std::uint64_t bound = 30'000;
    for (std::uint64_t r : {5, 9, 11, 18, 40, 44, 131}) {
      const auto p = EtaPowerParams::of(r);
      const DirectScan scan = direct_scan(r, bound);
      std::uint64_t total = 0;
      for (std::uint64_t h : scan.class_hits) total += h;
      CHECK(total == scan.estimate.hits);
      const F2Series f = p_r_series(r, 24 * bound + 1);
      const PrimeSieve sieve(bound);
      for (const auto& t : D_decomposition(r)) {
        std::uint64_t hits = 0;
        std::uint64_t small = 0;
        for (std::uint64_t ell : sieve.primes()) {
          if (ell < 5 || ell % p.m != t.cls % p.m) continue;
          if (f[t.u * ell]) ++hits;
          if (ell <= p.b) ++small;
        }
        const std::uint64_t got = scan.class_hits[t.cls % p.m];
        CHECK_MESSAGE((got > hits ? got - hits : hits - got) <= small,
                      "r = " << r << " class " << t.cls);
      }
    }
  }

  TEST_CASE("D_exact") {
    CHECK(D_exact(33) == DyadicRational(1, 2));
    CHECK(D_exact(15) == DyadicRational(1, 2));
    CHECK(D_exact(84) == DyadicRational(1, 3));
    CHECK(D_exact(9) == DyadicRational(1, 2));
    CHECK(D_exact(21) == DyadicRational(5, 3));
    CHECK(D_exact(27) == DyadicRational(3, 3));
    CHECK(D_exact(57) == DyadicRational(5, 3));
    CHECK(D_exact(99) == DyadicRational(3, 4));
    CHECK(D_exact(129) == DyadicRational(1, 3));
    CHECK(D_exact(96) == DyadicRational());
    CHECK(D_exact(3) == DyadicRational());
    CHECK_FALSE(D_exact(131).has_value());
    CHECK_FALSE(D_exact(11).has_value());
    CHECK_FALSE(D_exact(44).has_value());
  }

  TEST_CASE("estimates match the reference values for every r <= 132") {
    // {numerator, log2 denominator} -> r values.
    const std::vector<std::pair<DyadicRational, std::vector<std::uint64_t>>> table{
        {{}, {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96, 128}},
        {{1, 3}, {5, 7, 10, 13, 14, 20, 26, 28, 40, 52, 56, 84, 102, 104, 108, 129, 132,
                  80, 92, 112, 116, 122, 124}},
        {{1, 2}, {9, 15, 18, 30, 33, 36, 60, 66, 72, 114, 120, 126, 78, 82, 86, 90, 94, 101, 118}},
        {{3, 3}, {27, 42, 51, 54}},
        {{5, 3}, {21, 57, 63, 23, 39, 105}},
        {{3, 4}, {99, 34, 38, 44, 68, 74, 98, 100}},
        {{5, 4}, {11, 17, 19, 22, 25, 29, 31, 46, 49, 50, 58, 61, 62, 106, 110}},
        {{7, 5}, {35, 65, 67, 70, 97}},
        {{1, 1}, {37, 45, 53, 55, 69, 75, 77, 79, 81, 83, 85, 87, 89, 91, 93, 95, 117, 119, 123,
                  125}},
        {{9, 4}, {41, 43, 59, 107, 111}},
        {{17, 5}, {47, 71, 109, 115}},
        {{7, 4}, {73, 113, 127}},
        {{1, 4}, {76, 88}},
        {{13, 5}, {103}},
        {{15, 5}, {121}},
        {{3, 5}, {130}},
        {{7, 6}, {131}},
    };
    std::vector<std::pair<std::uint64_t, DyadicRational>> rows;
    for (const auto& [v, rs] : table) {
      for (std::uint64_t r : rs) rows.emplace_back(r, v);
    }
    std::sort(rows.begin(), rows.end());
    REQUIRE(rows.size() == 132);
    for (std::size_t i = 0; i < rows.size(); ++i) REQUIRE(rows[i].first == i + 1);
    std::vector<DensityEstimate> est(rows.size());
    parallel_for(rows.size(), 0, [&](std::size_t i) {
      est[i] = D_empirical_direct(rows[i].first, 100'000);
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& [r, want] = rows[i];
      CHECK_MESSAGE(std::abs(est[i].value - want.to_double()) <= est[i].tolerance(),
                    "r = " << r << " estimate " << est[i].value << " vs " << want.to_string());
      const auto exact = D_exact(r);
      if (exact) CHECK_MESSAGE(*exact == want, "r = " << r);
    }
  }

  TEST_CASE("upper bounds") {
    CHECK(D_upper_bound(36).first == DyadicRational(1, 2));
    CHECK_FALSE(D_upper_bound(36).second);
    CHECK(D_upper_bound(44).first == DyadicRational(1, 2));
    CHECK(D_upper_bound(44).second);
    CHECK(D_upper_bound(21).first == DyadicRational(1, 0));
    CHECK(D_upper_bound(22).first == DyadicRational(1, 1));
    CHECK(verify_bounds(48, 50'000, 1).empty());
  }

  TEST_CASE("estimate statistics") {
    const DensityEstimate e = DensityEstimate::from_counts(250, 1000, 7919);
    CHECK(e.value == doctest::Approx(0.25));
    CHECK(e.sigma() == doctest::Approx(std::sqrt(0.25 * 0.75 / 1000)));
    CHECK(e.tolerance() == doctest::Approx(std::max(0.02, 4 * e.sigma())));
    CHECK(e.nearest == DyadicRational(1, 2));
    CHECK(e.residual == doctest::Approx(0.0));
    CHECK(DensityEstimate::from_counts(0, 0, 1).value == 0.0);
  }

  TEST_CASE("CSV row layout") {
    std::ostringstream os;
    write_density_csv_header(os);
    write_density_csv_row(os, {9, EtaPowerParams::of(9), DensityEstimate::from_counts(1, 4, 10),
                               DyadicRational(1, 2), "direct"});
    write_density_csv_row(os, {11, EtaPowerParams::of(11), DensityEstimate::from_counts(1, 4, 10),
                               std::nullopt, "formula"});
    CHECK(os.str() ==
          "r,m_r,b_r,prime_bound,samples,hits,value,nearest_dyadic,residual,exact,route\n"
          "9,8,3,10,4,1,0.250000,1/4,0.000000,1/4,direct\n"
          "11,24,11,10,4,1,0.250000,1/4,0.000000,,formula\n");
  }

  TEST_CASE("parallel_for covers every index and propagates exceptions") {
    std::vector<int> seen(1000, 0);
    parallel_for(seen.size(), 4, [&](std::size_t i) { seen[i] += 1; });
    CHECK(std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; }));
    CHECK_THROWS_AS(parallel_for(10, 3,
                                 [](std::size_t i) {
                                   if (i == 7) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }
}
