#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qctl {

struct SuiteReport {
  int criterion = 0;
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no time limit
  std::vector<std::string> notes;

  bool pass() const;
  // "criterion 3 small-model: PASS (...)"
  std::string line() const;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  std::ostream* log = nullptr;  // progress and notes
};

inline constexpr int kCriteria = 9;

const char* criterion_name(int c);
// Accepts 1..9 or a suite name; returns 0 for unknown names.
int parse_criterion(const std::string& s);

// Criterion 8 needs the pairs touched by 1..7, so running it alone runs those suites too.
SuiteReport run_criterion(int c, const VerifyOptions& opts = {});
std::vector<SuiteReport> run_all(const VerifyOptions& opts = {});

}  // namespace qctl
