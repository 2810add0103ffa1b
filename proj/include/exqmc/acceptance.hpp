#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace exqmc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool checks_pass = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::string detail;
  bool pass() const { return checks_pass && seconds <= limit_seconds; }
};

inline constexpr std::uint64_t kDefaultSeed = 20181;
inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, std::uint64_t seed);

// Runs every criterion in order and writes one PASS/FAIL line per criterion
// to `log` as it finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream& log);

std::string format_result(const CriterionResult& r);

}  // namespace exqmc
