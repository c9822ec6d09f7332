#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bsq/types.hpp"

namespace bsq {

struct SuiteOptions {
  int n = 64;
  int trials = 100;
  Real beta = 0.8;
  std::uint64_t seed = 12345;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  nlohmann::json census;  // empirical constants, replayable parameters
};

struct SuiteReport {
  std::string suite;
  bool pass = true;
  SuiteOptions options;
  std::vector<CheckResult> checks;

  nlohmann::json to_json() const;
};

const std::vector<std::string>& suite_names();  // excludes "all"

// Runs one property census ("operators", "bernstein", "gn", "commutator",
// "pointwise", "energy") or "all". Throws Error for unknown names.
std::vector<SuiteReport> run_suites(const std::string& name,
                                    const SuiteOptions& options);

}  // namespace bsq
