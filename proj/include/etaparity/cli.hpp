#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace etaparity {

/// Defaults shared by every subcommand.
struct RunConfig {
  std::size_t coeffs = 2'400'000;
  std::uint64_t prime_bound = 100'000;
  std::string r_spec = "1..132";
  std::string format;
  std::string out_path;
  unsigned threads = 0;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// "9", "1..132", "5,7,20..24".
std::vector<std::uint64_t> parse_r_list(const std::string& spec);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace etaparity
