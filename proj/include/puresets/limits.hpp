#pragma once

#include <cstdint>

namespace puresets {

// Process-wide numeric limits. max_code_bits starts from PURESETS_MAX_BITS
// when that variable is set, otherwise 2^20.
struct Limits {
  std::uint64_t max_code_bits;
  int k_exact;  // largest k for exact rational results
  int k_max;    // largest k for results in scaled binary form
};

const Limits& limits();
void set_max_code_bits(std::uint64_t bits);
void set_k_exact(int k);
void set_k_max(int k);

// Restores the previous limits on destruction; used by tests and the CLI.
class ScopedLimits {
 public:
  explicit ScopedLimits(const Limits& next);
  ~ScopedLimits();
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
};

}  // namespace puresets
