#include "etaparity/genpoly.hpp"

#include <algorithm>

#include "etaparity/genforms.hpp"
#include "etaparity/hecke.hpp"

namespace etaparity {

GenPoly::GenPoly(Level level, std::vector<std::uint32_t> exponents) : level_(level) {
  // Repeated exponents cancel in pairs.
  std::sort(exponents.begin(), exponents.end());
  for (std::size_t i = 0; i < exponents.size();) {
    std::size_t j = i;
    while (j < exponents.size() && exponents[j] == exponents[i]) ++j;
    if ((j - i) % 2 == 1) exps_.push_back(exponents[i]);
    i = j;
  }
}

bool GenPoly::contains(std::uint32_t e) const {
  return std::binary_search(exps_.begin(), exps_.end(), e);
}

void GenPoly::toggle(std::uint32_t e) {
  auto it = std::lower_bound(exps_.begin(), exps_.end(), e);
  if (it != exps_.end() && *it == e) {
    exps_.erase(it);
  } else {
    exps_.insert(it, e);
  }
}

std::string GenPoly::to_string() const {
  const char* gen = level_ == Level::One ? "D" : "F";
  if (exps_.empty()) return "0";
  std::string s;
  for (std::uint32_t e : exps_) {
    if (!s.empty()) s += " + ";
    s += e == 0 ? std::string("1") : std::string(gen) + "^" + std::to_string(e);
  }
  return s;
}

F2Series generator_series(Level level, std::size_t n) {
  return level == Level::One ? delta_series(n) : f_series(n);
}

F2Series expand(const GenPoly& p, std::size_t n) {
  F2Series total(n);
  if (p.empty() || n == 0) return total;
  const F2Series gen = generator_series(p.level(), n);
  F2Series cur = F2Series::monomial(0, n);
  std::uint32_t at = 0;
  for (std::uint32_t e : p.exponents()) {
    if (e > at) {
      cur = mul(cur, power(gen, e - at, n));
      at = e;
    }
    total = add(total, cur);
  }
  return total;
}

GenPoly to_genpoly(const F2Series& f, Level level, std::uint32_t max_degree) {
  if (f.valid_len() <= max_degree) {
    throw std::invalid_argument("to_genpoly: need more than max_degree coefficients");
  }
  const std::size_t n = f.valid_len();
  const F2Series gen = generator_series(level, n);
  F2Series residual = f;
  GenPoly out(level, {});
  // Powers of the generator, built on demand in increasing order.
  F2Series cur = F2Series::monomial(0, n);
  std::uint32_t at = 0;
  while (auto low = residual.lowest_term()) {
    if (*low > max_degree) {
      throw NotInAlgebraError("residual has lowest term q^" + std::to_string(*low) +
                              " beyond degree bound " + std::to_string(max_degree));
    }
    const auto e = static_cast<std::uint32_t>(*low);
    if (e > at) {
      cur = mul(cur, power(gen, e - at, n));
      at = e;
    }
    residual = add(residual, cur);
    out.toggle(e);
  }
  return out;
}

GenPoly genpoly_add(const GenPoly& p, const GenPoly& q) {
  if (p.level() != q.level()) throw std::invalid_argument("genpoly_add: level mismatch");
  GenPoly out = p;
  for (std::uint32_t e : q.exponents()) out.toggle(e);
  return out;
}

GenPoly genpoly_mul(const GenPoly& p, const GenPoly& q) {
  if (p.level() != q.level()) throw std::invalid_argument("genpoly_mul: level mismatch");
  std::vector<std::uint32_t> terms;
  terms.reserve(p.exponents().size() * q.exponents().size());
  for (std::uint32_t a : p.exponents()) {
    for (std::uint32_t b : q.exponents()) terms.push_back(a + b);
  }
  return GenPoly(p.level(), std::move(terms));
}

GenPoly genpoly_pow(const GenPoly& p, std::uint32_t e) {
  GenPoly result(p.level(), {0});
  GenPoly base = p;
  while (e > 0) {
    if (e & 1U) result = genpoly_mul(result, base);
    e >>= 1;
    if (e > 0) base = genpoly_mul(base, base);
  }
  return result;
}

namespace {

GenPoly apply_and_reexpress(const GenPoly& p, std::uint32_t ell, std::uint32_t bound,
                            bool use_u) {
  if (p.empty()) return p;
  const std::size_t out_len = 2 * (static_cast<std::size_t>(bound) + 1);
  const F2Series f = expand(p, ell * out_len);
  const F2Series g = use_u ? u_op(f, ell) : t_op(f, ell);
  return to_genpoly(g, p.level(), bound);
}

}  // namespace

GenPoly hecke_on_genpoly(const GenPoly& p, std::uint32_t ell) {
  if (p.level() == Level::One) {
    if (ell % 2 == 0 || !is_prime_u64(ell)) {
      throw std::invalid_argument("level 1 Hecke index must be an odd prime");
    }
    return apply_and_reexpress(p, ell, p.degree(), false);
  }
  if (ell == 2) return u_on_genpoly(p, 2);
  if (ell == 3 || !is_prime_u64(ell)) {
    throw std::invalid_argument("level 9 Hecke index must be 2 (as U_2) or a prime >= 5");
  }
  return apply_and_reexpress(p, ell, p.degree() + 1, false);
}

GenPoly u_on_genpoly(const GenPoly& p, std::uint32_t ell) {
  if (p.level() != Level::Nine) throw std::invalid_argument("u_on_genpoly is level 9 only");
  if (ell != 2 && ell != 3) throw std::invalid_argument("u_on_genpoly needs l in {2, 3}");
  return apply_and_reexpress(p, ell, p.degree() + 1, true);
}

}  // namespace etaparity
