#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "puresets/pure_set.hpp"

namespace puresets {

// h[n]: chains x_0 ∈ x_1 ∈ ... ∈ x_n = x; g[n]: those with x_0 = {}.
// Both arrays have k+1 entries, g[0] = 0.
struct ChainProfile {
  unsigned k = 0;
  std::vector<std::uint64_t> g;
  std::vector<std::uint64_t> h;

  std::uint64_t g_total() const;
  std::uint64_t h_total() const;
};

// Throws DepthError if depth(x) > k.
ChainProfile chain_profile(const PureSet& x, unsigned k);

struct ChainTotals {
  std::uint64_t chains;
  std::uint64_t maximal_chains;
};
ChainTotals totals(const ChainProfile& p);

// Number of chains x = x_0 ∋ x_1 ∋ ... ∋ x_levels = z.
mpz_class multiplicity(const PureSet& x, const PureSet& z, unsigned levels);

struct RelationReport {
  bool ok = true;
  std::optional<std::uint32_t> counterexample;
  std::string relation;
};

// Checks over all of S_k (k <= 4): g[k] = h[k], g[k-1] + g[k] = h[k-1] and the
// complement identities against S_{k-1}.
RelationReport verify_linear_relations(unsigned k);

// Per-code profile table for codes < 65536 (all of S_4); entries n = 0..4.
class SmallProfileTable {
 public:
  static const SmallProfileTable& instance();
  std::uint8_t h(std::uint32_t code, unsigned n) const { return h_[code * 5 + n]; }
  std::uint8_t g(std::uint32_t code, unsigned n) const { return g_[code * 5 + n]; }

 private:
  SmallProfileTable();
  std::vector<std::uint8_t> h_, g_;
};

}  // namespace puresets
