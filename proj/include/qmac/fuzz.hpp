#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmac/models.hpp"

namespace qmac {

struct FuzzFailure {
  int trial = 0;
  std::string check;
  double margin = 0.0;
};

struct FuzzReport {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::vector<FuzzFailure> failures;

  bool ok() const { return failures.empty(); }
};

inline constexpr double kFuzzSlack = 1e-9;

// Suites: ssa, dataproc, holevo, jointsub, superadd, metrics, degradable.
// Every margin is "amount by which the inequality holds"; a margin below
// -1e-9 is recorded as a failure with a reproducer trial index.
FuzzReport run_fuzz(const std::string& suite, int trials, std::uint64_t seed);
std::vector<std::string> fuzz_suites();

}  // namespace qmac
