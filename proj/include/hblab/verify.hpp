#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hblab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Invariant suite over the fixed test spaces with seeded random inputs.
/// A check that throws is recorded as failed with the error message.
std::vector<CheckResult> verify_suite(std::uint64_t seed = 20240601);

/// One line per check: PASS/FAIL, name, runtime, detail.
void print_checks(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace hblab
