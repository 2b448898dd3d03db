#pragma once

// Machine-checkable acceptance suite. Each numbered criterion yields one
// CheckResult with a headline value, the bound it is compared against and the
// sub-measurements in `detail`.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace chancomp {

enum class VerifyLevel { kQuick, kFull };

std::string to_string(VerifyLevel level);
VerifyLevel verify_level_from_string(const std::string& name);

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::kQuick;
  std::uint64_t seed = 0;
  /// Scale the TP-corrected Kraus operators by 1.01 before they are checked.
  bool inject_fault = false;
  /// Criteria to run; empty runs all of them.
  std::vector<int> only;
};

struct CheckResult {
  int criterion = 0;
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool passed = false;
  nlohmann::json detail;
  double wall_time_ms = 0.0;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CheckResult> checks;

  bool passed() const;
};

constexpr int kCriterionCount = 11;

CheckResult run_check(int criterion, const VerifyOptions& options);
VerifyReport verify_suite(const VerifyOptions& options);

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const VerifyReport& r);

/// criterion,name,value,bound,pass. Wall time is left out so the file is reproducible.
std::string verify_csv(const VerifyReport& r);

}  // namespace chancomp
