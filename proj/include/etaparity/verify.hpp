#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace etaparity {

struct VerifyConfig {
  std::size_t coeffs = 1'000'000;
  std::uint64_t prime_bound = 100'000;
  std::uint64_t r_max = 132;
  unsigned threads = 0;
};

/// Verdict of one named suite: {"suite", "pass", "checks": [{"name", "pass", ...}]}.
struct SuiteResult {
  std::string name;
  bool pass = true;
  nlohmann::json checks = nlohmann::json::array();
};

const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, const VerifyConfig& cfg);

nlohmann::json to_json(const SuiteResult& r);

}  // namespace etaparity
