#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace puresets {

struct CheckResult {
  std::string id;
  std::string description;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct VerifyOptions {
  unsigned k = 4;
  std::uint64_t seed = 20240611;
  unsigned workers = 1;
  std::uint64_t mc_samples = 20000;
};

// Module-against-module cross-checks for every level up to opts.k (enumeration capped at 4).
std::vector<CheckResult> cross_checks(const VerifyOptions& opts);

// The eleven acceptance criteria with their pinned tolerances.
std::vector<CheckResult> acceptance_checks(const VerifyOptions& opts);

bool all_pass(const std::vector<CheckResult>& r);

}  // namespace puresets
