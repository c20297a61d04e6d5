#include "puresets/limits.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace puresets {
namespace {

std::uint64_t initial_bits() {
  if (const char* env = std::getenv("PURESETS_MAX_BITS")) {
    try {
      auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return std::uint64_t{1} << 20;
}

Limits& state() {
  static Limits l{initial_bits(), 6, 7};
  return l;
}

}  // namespace

const Limits& limits() { return state(); }
void set_max_code_bits(std::uint64_t bits) { state().max_code_bits = bits; }
void set_k_exact(int k) { state().k_exact = k; }
void set_k_max(int k) { state().k_max = k; }

ScopedLimits::ScopedLimits(const Limits& next) : saved_(state()) { state() = next; }
ScopedLimits::~ScopedLimits() { state() = saved_; }

}  // namespace puresets
