#include "etaparity/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "etaparity/cheby.hpp"
#include "etaparity/density.hpp"
#include "etaparity/genforms.hpp"
#include "etaparity/hecke.hpp"
#include "etaparity/level1.hpp"
#include "etaparity/level9.hpp"

namespace etaparity {

using nlohmann::json;

namespace {

struct Recorder {
  SuiteResult& res;
  void check(const std::string& name, bool ok, json extra = json::object()) {
    extra["name"] = name;
    extra["pass"] = ok;
    res.checks.push_back(std::move(extra));
    res.pass = res.pass && ok;
  }
};

json estimate_json(const DensityEstimate& e) {
  return {{"value", e.value},       {"hits", e.hits},
          {"samples", e.samples},   {"prime_bound", e.prime_bound},
          {"sigma", e.sigma()},     {"nearest_dyadic", e.nearest.to_string()},
          {"tolerance", e.tolerance()}};
}

bool within(const DensityEstimate& e, const DyadicRational& want) {
  return std::abs(e.value - want.to_double()) <= e.tolerance();
}

bool graded_mod(const F2Series& f, std::uint64_t modulus, std::uint64_t cls) {
  for (std::size_t n : f.support()) {
    if (n % modulus != cls % modulus) return false;
  }
  return true;
}

void suite_identities(Recorder& rec, const VerifyConfig& cfg) {
  const std::size_t n = cfg.coeffs;
  const F2Series d = delta_series(n);
  const F2Series c = c_series(n);
  const F2Series f = f_series(n);
  rec.check("C = Delta(q) + Delta(q^9)", c == add(d, substitute_qk(delta_series(n / 9 + 1), 9, n)),
            {{"coeffs", n}});
  rec.check("C^3 = Delta(q^3)", power(c, 3, n) == substitute_qk(delta_series(n / 3 + 1), 3, n),
            {{"coeffs", n}});
  rec.check("C = F + F^4", c == add(f, power(f, 4, n)), {{"coeffs", n}});
  const F2Series sum = add(add(f, power(f, 4, n)), add(power(f, 9, n), power(f, 12, n)));
  rec.check("Delta = F + F^4 + F^9 + F^12", d == sum, {{"coeffs", n}});
  const F2Series eta24 = mul(F2Series::monomial(1, n), power(eta_product_pnt(n), 24, n));
  rec.check("q * prod(1 - q^n)^24 = Delta", d == eta24, {{"coeffs", n}});
}

void suite_hecke_grading(Recorder& rec, const VerifyConfig&) {
  constexpr std::size_t kLen = 40'000;
  const std::uint64_t ells[] = {3, 5, 7, 11, 13};
  bool level1_ok = true;
  bool a1_ok = true;
  bool commute_ok = true;
  for (std::uint32_t e = 1; e <= 31; e += 2) {
    const F2Series f = expand(GenPoly(Level::One, {e}), kLen);
    for (std::uint64_t ell : ells) {
      const F2Series g = t_op(f, ell);
      level1_ok = level1_ok && graded_mod(g, 8, (ell * e) % 8);
      a1_ok = a1_ok && (g[1] == f[ell]);
    }
    commute_ok = commute_ok && (t_op(t_op(f, 3), 5) == t_op(t_op(f, 5), 3));
  }
  rec.check("level 1: T_l K^i in K^{li} (Delta^e, e odd <= 31)", level1_ok);
  rec.check("a_1(T_l f) = a_l(f)", a1_ok);
  rec.check("T_3 T_5 = T_5 T_3 on Delta^e", commute_ok);

  bool level9_ok = true;
  for (std::uint32_t s : {1U, 5U, 7U, 11U, 13U, 17U, 19U, 23U}) {
    const F2Series f = expand(genpoly_pow(GenPoly(Level::Nine, {1, 4}), s), kLen);
    for (std::uint64_t ell : {5U, 7U, 11U, 13U}) {
      level9_ok = level9_ok && graded_mod(t_op(f, ell), 24, (ell * s) % 24);
    }
  }
  rec.check("level 9: T_l K(9)^i in K(9)^{li} (C^s)", level9_ok);

  const GenPoly delta(Level::One, {1});
  const GenPoly t3d3 = hecke_on_genpoly(GenPoly(Level::One, {3}), 3);
  const GenPoly t3d5 = hecke_on_genpoly(GenPoly(Level::One, {5}), 3);
  const GenPoly t5d5 = hecke_on_genpoly(GenPoly(Level::One, {5}), 5);
  rec.check("T_3 Delta^3 = Delta", t3d3 == delta, {{"value", t3d3.to_string()}});
  rec.check("T_5 Delta^5 = Delta", t5d5 == delta, {{"value", t5d5.to_string()}});
  rec.check("T_3 Delta^5 = 0 (grading-consistent)", t3d5.empty(),
            {{"value", t3d5.to_string()}, {"equals_delta", t3d5 == delta}});
  rec.check("T_3 Delta = 0", hecke_on_genpoly(delta, 3).empty());

  const GenPoly c(Level::Nine, {1, 4});
  bool cs_ok = true;
  json table = json::object();
  for (std::uint32_t ell : {5U, 7U, 13U}) {
    for (std::uint32_t s : {5U, 7U, 13U}) {
      const GenPoly g = hecke_on_genpoly(genpoly_pow(c, s), ell);
      table["T" + std::to_string(ell) + " C^" + std::to_string(s)] = g.to_string();
      cs_ok = cs_ok && (ell == s ? g == c : g.empty());
    }
  }
  rec.check("T_l C^s = C if l = s else 0 (l, s in {5, 7, 13})", cs_ok, {{"values", table}});
}

void suite_combinatorial(Recorder& rec, const VerifyConfig&) {
  std::vector<std::uint64_t> bad;
  for (std::uint64_t a = 1; a <= 256; ++a) {
    const CombinatorialCount cc = combinatorial_count(a);
    if (cc.count != cc.closed_form) bad.push_back(a);
  }
  rec.check("residue count = 2^{z(a) - v(a) + 1} for a <= 256", bad.empty(), {{"failures", bad}});

  std::vector<std::uint64_t> nonperiodic;
  for (std::uint64_t a = 1; a <= 64; ++a) {
    const DigitStats s = digit_stats(a);
    const std::uint64_t period = std::uint64_t{1} << (s.d + 1);
    const std::uint64_t top = std::uint64_t{1} << (s.d + 3);
    for (std::uint64_t n = a; n + period < top; ++n) {
      if (coeff_xa_in_Sn(a, n) != coeff_xa_in_Sn(a, n + period)) {
        nonperiodic.push_back(a);
        break;
      }
    }
  }
  rec.check("[x^a] S_n depends on n mod 2^{d(a)+1} (a <= 64, n >= a)", nonperiodic.empty(),
            {{"failures", nonperiodic}});
}

void suite_dihedral_code(Recorder& rec, const VerifyConfig& cfg) {
  for (unsigned n = 1; n <= 4; ++n) {
    const auto e = static_cast<std::uint32_t>(z_family(n));
    const std::size_t a = (std::size_t{1} << n) - 1;
    const CodeMatrix c = code_matrix(GenPoly(Level::One, {e}), 16, 8);
    rec.check("code(Delta^" + std::to_string(e) + ") = [" + std::to_string(a) + ",0]",
              c.is_indicator_of(a, 0));
  }
  for (unsigned n = 1; n <= 3; ++n) {
    const auto e = static_cast<std::uint32_t>(3 * z_family(n));
    const std::size_t a = std::size_t{1} << n;
    const CodeMatrix c = code_matrix(GenPoly(Level::One, {e}), 16, 8);
    rec.check("code(Delta^" + std::to_string(e) + ") = [" + std::to_string(a) + ",0]",
              c.is_indicator_of(a, 0));
  }
  for (unsigned n = 1; n <= 3; ++n) {
    const auto e = static_cast<std::uint32_t>(w_family(n));
    const std::size_t b = std::size_t{1} << (n - 1);
    const CodeMatrix c = code_matrix(GenPoly(Level::One, {e}), 8, 8);
    rec.check("code(Delta^" + std::to_string(e) + ") = [0," + std::to_string(b) + "]",
              c.is_indicator_of(0, b));
  }
  const CodeMatrix c7 = code_matrix(GenPoly(Level::One, {7}), 4, 4);
  rec.check("Delta^7 is not dihedral", !is_dihedral_window(c7));

  std::vector<std::uint64_t> exps;
  for (unsigned n = 1; n <= 3; ++n) {
    exps.push_back(z_family(n));
    exps.push_back(3 * z_family(n));
    exps.push_back(w_family(n));
  }
  for (std::uint64_t e : exps) {
    const auto idx = dihedral_power_index(e);
    const DyadicRational want = dihedral_density(idx->a);
    const F2Series f = power(delta_series(cfg.prime_bound + 1), e, cfg.prime_bound + 1);
    const DensityEstimate est = delta_empirical(f, cfg.prime_bound);
    json extra = estimate_json(est);
    extra["formula"] = want.to_string();
    rec.check("delta(Delta^" + std::to_string(e) + ") ~ " + want.to_string(), within(est, want),
              extra);
  }
}

void suite_level9(Recorder& rec, const VerifyConfig& cfg) {
  const auto kernel = verify_u2_u3_kernel(25, 10'000);
  rec.check("K(9) basis n <= 25 killed by U_2, U_3; U_2/U_3 on F^n", kernel.empty(),
            {{"violations", kernel}});

  bool graded = true;
  for (std::uint32_t n = 1; n <= 25; ++n) {
    if (n % 2 == 0 || n % 3 == 0) continue;
    const F2Series s = expand(k9_basis_element(n), 10'000);
    std::map<std::size_t, std::vector<std::size_t>> parts;
    for (std::size_t e : s.support()) parts[e % 24].push_back(e);
    for (const auto& [cls, sup] : parts) {
      const F2Series piece = F2Series::from_support(sup, s.valid_len());
      graded = graded && (cls % 2 == 1 && cls % 3 != 0) && u_op(piece, 2).is_zero() &&
               u_op(piece, 3).is_zero();
    }
  }
  rec.check("graded pieces of K(9) basis elements lie in K(9)", graded);

  for (std::uint32_t i : kAbelianClasses) {
    const AbelianForm a = abelian_form(i, 10'000);
    rec.check("alpha_" + std::to_string(i) + " = theta series", a.representations_agree,
              {{"poly", a.poly.to_string()}});
    const auto bad = verify_abelian_law(i, cfg.prime_bound);
    rec.check("a_l(alpha_" + std::to_string(i) + ") = [l = " + std::to_string(i) + " mod 24]",
              bad.empty(), {{"counterexamples", bad}, {"prime_bound", cfg.prime_bound}});
    const F2Series f = expand(a.poly, cfg.prime_bound + 1);
    const DensityEstimate est = delta_empirical(f, cfg.prime_bound);
    rec.check("delta(alpha_" + std::to_string(i) + ") ~ 1/8",
              std::abs(est.value - 0.125) <= 0.02, estimate_json(est));
  }
}

void suite_bounds(Recorder& rec, const VerifyConfig& cfg) {
  const auto bad = verify_bounds(cfg.r_max, cfg.prime_bound, cfg.threads);
  json list = json::array();
  for (const auto& v : bad) {
    list.push_back({{"r", v.r}, {"estimate", v.estimate}, {"bound", v.bound.to_string()},
                    {"strict", v.strict}});
  }
  rec.check("D(r) < 1, D(2n) < 1/2, D(4n) < 1/4 except 36, 60, 72, 120 (r <= " +
                std::to_string(cfg.r_max) + ")",
            bad.empty(), {{"violations", list}});
}

bool in_zero_class(std::uint64_t r) {
  return 32 % r == 0 || r % 32 == 0 || 48 % r == 0 || r % 48 == 0;
}

void suite_zero_classes(Recorder& rec, const VerifyConfig& cfg) {
  for (std::uint64_t r : {1, 2, 3, 4, 6, 8, 12, 16, 24, 32, 48, 64, 96}) {
    const DensityEstimate e1 = D_empirical_direct(r, cfg.prime_bound);
    const DensityEstimate e2 = D_empirical_direct(r, 2 * cfg.prime_bound);
    rec.check("D(" + std::to_string(r) + ") hit proportion < 0.01 and non-increasing",
              e1.value < 0.01 && e2.value <= e1.value,
              {{"at_bound", e1.value}, {"at_double_bound", e2.value}});
  }
  std::vector<std::uint64_t> rs;
  for (std::uint64_t r = 1; r <= 64; ++r) {
    if (!in_zero_class(r)) rs.push_back(r);
  }
  std::vector<DensityEstimate> est(rs.size());
  parallel_for(rs.size(), cfg.threads,
               [&](std::size_t i) { est[i] = D_empirical_direct(rs[i], cfg.prime_bound); });
  std::vector<std::uint64_t> low;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (est[i].value <= 0.05) low.push_back(rs[i]);
  }
  rec.check("every other r <= 64 has proportion > 0.05", low.empty(), {{"failures", low}});
}

struct FamilyCase {
  std::string label;
  std::uint64_t r;
  DyadicRational value;
};

std::vector<FamilyCase> dihedral_family_cases() {
  std::vector<FamilyCase> out;
  auto add_case = [&](const std::string& mult, const std::string& fam, unsigned n,
                      std::uint64_t r, DyadicRational v) {
    out.push_back({mult + "*" + fam + "_" + std::to_string(n), r, v});
  };
  for (unsigned n = 1; n <= 4; ++n) {
    const std::uint64_t z = z_family(n);
    const DyadicRational lead = n == 1 ? DyadicRational(1, 2) : pow2_inv(n);
    add_case("3", "z", n, 3 * z, lead);
    add_case("6", "z", n, 6 * z, lead);
    add_case("12", "z", n, 12 * z, pow2_inv(n + 1));
    add_case("24", "z", n, 24 * z, pow2_inv(n + 1));
  }
  for (unsigned n = 1; n <= 3; ++n) {
    const std::uint64_t z3 = 3 * z_family(n);
    add_case("3", "3z", n, 3 * z3, DyadicRational(3, n + 2));
    add_case("6", "3z", n, 6 * z3, DyadicRational(3, n + 2));
    add_case("12", "3z", n, 12 * z3, pow2_inv(n + 2));
    add_case("24", "3z", n, 24 * z3, pow2_inv(n + 2));
    const std::uint64_t w = w_family(n);
    add_case("3", "w", n, 3 * w, n == 1 ? DyadicRational(1, 2) : DyadicRational(3, n + 1));
    add_case("6", "w", n, 6 * w, pow2_inv(n + 1));
  }
  return out;
}

void check_exact_and_empirical(Recorder& rec, const std::vector<FamilyCase>& cases,
                               const VerifyConfig& cfg) {
  std::vector<DensityEstimate> est(cases.size());
  parallel_for(cases.size(), cfg.threads,
               [&](std::size_t i) { est[i] = D_empirical_direct(cases[i].r, cfg.prime_bound); });
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& fc = cases[i];
    const auto exact = D_exact(fc.r);
    json extra = estimate_json(est[i]);
    extra["r"] = fc.r;
    extra["expected"] = fc.value.to_string();
    extra["exact"] = exact ? exact->to_string() : "unknown";
    rec.check("D(" + std::to_string(fc.r) + ") [" + fc.label + "] = " + fc.value.to_string(),
              exact && *exact == fc.value && within(est[i], fc.value), extra);
  }
}

void suite_dihedral_families(Recorder& rec, const VerifyConfig& cfg) {
  check_exact_and_empirical(rec, dihedral_family_cases(), cfg);
}

void suite_abelian(Recorder& rec, const VerifyConfig& cfg) {
  std::vector<FamilyCase> cases;
  for (std::uint64_t r : {5, 7, 10, 13, 14, 20, 26, 28, 40, 52, 56, 104}) {
    cases.push_back({"abelian", r, DyadicRational(1, 3)});
  }
  for (std::uint64_t s : {7, 19, 21}) {
    cases.push_back({"3*" + std::to_string(s), 3 * s, DyadicRational(5, 3)});
    cases.push_back({"6*" + std::to_string(s), 6 * s,
                     s == 7 ? DyadicRational(3, 3) : DyadicRational(1, 2)});
    cases.push_back({"12*" + std::to_string(s), 12 * s, DyadicRational(1, 3)});
    cases.push_back({"24*" + std::to_string(s), 24 * s, DyadicRational(1, 3)});
  }
  check_exact_and_empirical(rec, cases, cfg);
}

using SuiteFn = std::function<void(Recorder&, const VerifyConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"identities", suite_identities},   {"hecke-grading", suite_hecke_grading},
      {"combinatorial", suite_combinatorial}, {"dihedral-code", suite_dihedral_code},
      {"level9", suite_level9},           {"bounds", suite_bounds},
      {"thmB", suite_zero_classes},              {"thmD", suite_dihedral_families},
      {"abelian", suite_abelian},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) {
      SuiteResult res;
      res.name = name;
      Recorder rec{res};
      fn(rec, cfg);
      return res;
    }
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

json to_json(const SuiteResult& r) {
  return {{"suite", r.name}, {"pass", r.pass}, {"checks", r.checks}};
}

}  // namespace etaparity
