// Acceptance criteria at full budget, one line per criterion. A criterion
// passes when its check passes within the stated runtime limit. Criterion 11
// reruns the whole suite and compares the CSV bytes.

#include <cstdio>

#include "chancomp/verify.hpp"

using namespace chancomp;

int main() {
  // Runtime limits in seconds, by criterion.
  const double limits[kCriterionCount + 1] = {0, 10, 10, 60, 60, 300, 120, 30, 180, 300, 120, 3600};

  VerifyOptions opt;
  opt.level = VerifyLevel::kFull;
  opt.seed = 0;
  const VerifyReport first = verify_suite(opt);

  bool all = true;
  for (const auto& c : first.checks) {
    const double secs = c.wall_time_ms / 1000.0;
    bool ok = c.passed && secs < limits[c.criterion];
    if (c.criterion == kCriterionCount) {
      const VerifyReport second = verify_suite(opt);
      const bool same = verify_csv(first) == verify_csv(second);
      ok = ok && same;
      std::printf("criterion %2d: %s  %s value=%.6g bound=%.6g, repeated full run CSV %s (%.2f s)\n", c.criterion,
                  ok ? "PASS" : "FAIL", c.name.c_str(), c.value, c.bound, same ? "identical" : "DIFFERS", secs);
    } else {
      std::printf("criterion %2d: %s  %s value=%.6g bound=%.6g (%.2f s, limit %.0f s)\n", c.criterion,
                  ok ? "PASS" : "FAIL", c.name.c_str(), c.value, c.bound, secs, limits[c.criterion]);
    }
    if (!c.passed && c.detail.contains("error")) std::printf("    error: %s\n", c.detail["error"].get<std::string>().c_str());
    all = all && ok;
  }
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
