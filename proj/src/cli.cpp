#include "etaparity/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "etaparity/density.hpp"
#include "etaparity/genforms.hpp"
#include "etaparity/hecke.hpp"
#include "etaparity/level9.hpp"
#include "etaparity/verify.hpp"
#include "etaparity/walks.hpp"

namespace etaparity {

using nlohmann::json;

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::uint64_t parse_u64(const std::string& s) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a positive integer: '" + s + "'");
  }
  if (used != s.size() || s.empty() || s[0] == '-') {
    throw UsageError("not a positive integer: '" + s + "'");
  }
  return v;
}

// Chooses stdout or the --out file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

F2Series expand_spec(const std::string& spec, std::size_t n) {
  if (spec == "delta") return delta_series(n);
  if (spec == "C") return c_series(n);
  if (spec == "F") return f_series(n);
  if (spec == "pnt") return eta_product_pnt(n);
  if (spec.rfind("P:", 0) == 0) {
    const std::uint64_t r = parse_u64(spec.substr(2));
    if (r == 0) throw UsageError("P:r needs r >= 1");
    return p_r_series(r, n);
  }
  if (spec.rfind("alpha:", 0) == 0) {
    const std::uint64_t i = parse_u64(spec.substr(6));
    return abelian_form(static_cast<std::uint32_t>(i), n).series;
  }
  throw UsageError("unknown form spec '" + spec + "' (expected delta, C, F, pnt, P:r, alpha:i)");
}

int cmd_expand(const std::string& spec, const RunConfig& cfg, std::ostream& out) {
  const F2Series f = expand_spec(spec, cfg.coeffs);
  const auto support = f.support();
  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.get();
  const std::string fmt = cfg.format.empty() ? "text" : cfg.format;
  if (fmt == "json") {
    os << json{{"spec", spec}, {"coeffs", f.valid_len()}, {"support", support}}.dump() << '\n';
  } else if (fmt == "csv") {
    os << "exponent\n";
    for (std::size_t e : support) os << e << '\n';
  } else {
    for (std::size_t i = 0; i < support.size(); ++i) os << (i ? " " : "") << support[i];
    os << '\n';
  }
  return kExitOk;
}

struct DensityResult {
  std::uint64_t r = 0;
  EtaPowerParams params;
  DensityEstimate direct;
  DensityEstimate formula;
  std::optional<DyadicRational> exact;
  bool routes_agree = false;
  bool exact_agrees = true;
};

int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto rs = parse_r_list(cfg.r_spec);
  std::vector<DensityResult> rows(rs.size());
  parallel_for(rs.size(), cfg.threads, [&](std::size_t i) {
    DensityResult& d = rows[i];
    d.r = rs[i];
    d.params = EtaPowerParams::of(d.r);
    d.direct = D_empirical_direct(d.r, cfg.prime_bound);
    d.formula = D_empirical_formula(d.r, cfg.prime_bound);
    d.exact = D_exact(d.r);
    const double tol = std::max(d.direct.tolerance(), d.formula.tolerance());
    d.routes_agree = std::abs(d.direct.value - d.formula.value) <= tol;
    if (d.exact) {
      d.exact_agrees = std::abs(d.direct.value - d.exact->to_double()) <= d.direct.tolerance();
    }
  });

  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.get();
  const std::string fmt = cfg.format.empty() ? "csv" : cfg.format;
  bool ok = true;
  const DensityResult* top = nullptr;
  for (const auto& d : rows) {
    ok = ok && d.routes_agree && d.exact_agrees;
    if (!top || d.direct.value > top->direct.value) top = &d;
  }

  if (fmt == "csv") {
    write_density_csv_header(os);
    for (const auto& d : rows) {
      write_density_csv_row(os, {d.r, d.params, d.direct, d.exact, "direct"});
      write_density_csv_row(os, {d.r, d.params, d.formula, d.exact, "formula"});
    }
  } else if (fmt == "json") {
    json arr = json::array();
    for (const auto& d : rows) {
      auto est = [](const DensityEstimate& e) {
        return json{{"samples", e.samples},          {"hits", e.hits},
                    {"value", e.value},              {"nearest_dyadic", e.nearest.to_string()},
                    {"residual", e.residual},        {"sigma", e.sigma()}};
      };
      arr.push_back({{"r", d.r},
                     {"m_r", d.params.m},
                     {"b_r", d.params.b},
                     {"prime_bound", cfg.prime_bound},
                     {"direct", est(d.direct)},
                     {"formula", est(d.formula)},
                     {"exact", d.exact ? json(d.exact->to_string()) : json(nullptr)},
                     {"routes_agree", d.routes_agree},
                     {"exact_agrees", d.exact_agrees}});
    }
    os << json{{"rows", arr}, {"pass", ok}}.dump(2) << '\n';
  } else {
    os << std::left << std::setw(6) << "r" << std::setw(10) << "direct" << std::setw(10)
       << "formula" << std::setw(10) << "dyadic" << std::setw(10) << "exact" << "status\n";
    for (const auto& d : rows) {
      std::ostringstream dv;
      std::ostringstream fv;
      dv << std::fixed << std::setprecision(5) << d.direct.value;
      fv << std::fixed << std::setprecision(5) << d.formula.value;
      os << std::setw(6) << d.r << std::setw(10) << dv.str() << std::setw(10) << fv.str()
         << std::setw(10) << d.direct.nearest.to_string() << std::setw(10)
         << (d.exact ? d.exact->to_string() : "-")
         << (d.routes_agree && d.exact_agrees ? "ok" : "MISMATCH") << '\n';
    }
  }
  if (top) {
    err << "max estimate over scanned r: " << top->direct.value << " at r=" << top->r << '\n';
  }
  for (const auto& d : rows) {
    if (!d.routes_agree) err << "r=" << d.r << ": direct and formula routes disagree\n";
    if (!d.exact_agrees) err << "r=" << d.r << ": estimate disagrees with exact value\n";
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify(std::vector<std::string> suites, const RunConfig& cfg, std::uint64_t r_max,
               std::ostream& out) {
  if (suites.empty()) throw UsageError("verify needs a suite name (or 'all')");
  if (std::find(suites.begin(), suites.end(), "all") != suites.end()) suites = suite_names();
  VerifyConfig vc;
  vc.coeffs = cfg.coeffs;
  vc.prime_bound = cfg.prime_bound;
  vc.r_max = r_max;
  vc.threads = cfg.threads;
  // Reject unknown names before running anything.
  for (const auto& s : suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw UsageError("unknown suite '" + s + "'");
    }
  }
  Sink sink(cfg.out_path, out);
  std::ostream& os = sink.get();
  const std::string fmt = cfg.format.empty() ? "json" : cfg.format;
  bool ok = true;
  json all = json::array();
  for (const auto& s : suites) {
    const SuiteResult res = run_suite(s, vc);
    ok = ok && res.pass;
    if (fmt == "text") {
      for (const auto& c : res.checks) {
        os << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << s << ": "
           << c["name"].get<std::string>() << '\n';
      }
    } else {
      all.push_back(to_json(res));
    }
  }
  if (fmt != "text") os << json{{"pass", ok}, {"suites", all}}.dump(2) << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_walk(const std::string& kind, std::size_t n, const RunConfig& cfg, std::ostream& out,
             std::ostream& err) {
  const WalkKind k = parse_walk_kind(kind);
  Sink sink(cfg.out_path, out);
  const std::int64_t sum = emit_walk(k, n, sink.get());
  if (!cfg.out_path.empty()) {
    out << "wrote " << n << " rows to " << cfg.out_path << "; final sum " << sum << '\n';
  } else {
    err << "final sum " << sum << '\n';
  }
  return kExitOk;
}

}  // namespace

std::vector<std::uint64_t> parse_r_list(const std::string& spec) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_u64(part));
    } else {
      const std::uint64_t lo = parse_u64(part.substr(0, dots));
      const std::uint64_t hi = parse_u64(part.substr(dots + 2));
      if (lo > hi) throw UsageError("empty range '" + part + "'");
      for (std::uint64_t r = lo; r <= hi; ++r) out.push_back(r);
    }
  }
  if (out.empty()) throw UsageError("no r values in '" + spec + "'");
  for (std::uint64_t r : out) {
    if (r == 0) throw UsageError("r must be positive");
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mod-2 eta-power parity densities and modular forms mod 2", "etaparity"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_format = [&](CLI::App* sub, const std::vector<std::string>& allowed) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(allowed));
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = hardware concurrency)");
  };

  std::string spec;
  auto* expand = app.add_subcommand("expand", "Print the support of a q-series mod 2");
  expand->add_option("spec", spec, "delta | C | F | pnt | P:r | alpha:i")->required();
  expand->add_option("--coeffs", cfg.coeffs, "Number of coefficients")->check(CLI::PositiveNumber);
  add_format(expand, {"text", "json", "csv"});
  add_common(expand);

  auto* density = app.add_subcommand("density", "Estimate D(r) by both routes, with exact values");
  density->add_option("--r", cfg.r_spec, "r, a range a..b, or a comma list");
  density->add_option("--prime-bound", cfg.prime_bound, "Largest prime scanned")
      ->check(CLI::Range(std::uint64_t{5}, std::uint64_t{100'000'000}));
  add_format(density, {"csv", "json", "text"});
  add_common(density);

  std::vector<std::string> suites;
  std::uint64_t r_max = 132;
  auto* verify = app.add_subcommand("verify", "Run named verification suites");
  verify->add_option("suites", suites, "Suite names, or 'all'");
  verify->add_option("--suite", suites, "Suite name (repeatable)");
  verify->add_option("--prime-bound", cfg.prime_bound, "Largest prime scanned")
      ->check(CLI::Range(std::uint64_t{5}, std::uint64_t{100'000'000}));
  verify->add_option("--coeffs", cfg.coeffs, "Coefficients for identity checks")
      ->check(CLI::PositiveNumber);
  verify->add_option("--r-max", r_max, "Largest r for the bounds suite")->check(CLI::PositiveNumber);
  add_format(verify, {"json", "text"});
  add_common(verify);

  std::string kind = "all";
  std::size_t walk_n = 1'000'000;
  auto* walk = app.add_subcommand("walk", "Emit a partition-parity random walk as CSV");
  walk->add_option("--kind", kind, "all | delta-subseq")
      ->check(CLI::IsMember({"all", "delta-subseq"}));
  walk->add_option("--n", walk_n, "Number of steps")->check(CLI::PositiveNumber);
  add_common(walk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*expand) return cmd_expand(spec, cfg, out);
    if (*density) return cmd_density(cfg, out, err);
    if (*verify) return cmd_verify(suites, cfg, r_max, out);
    if (*walk) return cmd_walk(kind, walk_n, cfg, out, err);
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace etaparity
