#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cstar::suite {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
};

/// Seed from CSTAR_SEED, 0 when unset or unparsable.
std::uint64_t seed_from_env();

using Criterion = std::function<CriterionResult(const SuiteOptions&)>;

/// The acceptance criteria, in order. Each entry runs independently.
const std::vector<std::pair<std::string, Criterion>>& criteria();

std::vector<CriterionResult> run_all(const SuiteOptions& options);

/// "[PASS] C1 title: detail (1.23s)"
std::string format_line(const CriterionResult& r);

}  // namespace cstar::suite
