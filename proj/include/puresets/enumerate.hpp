#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <ranges>
#include <string>
#include <vector>

#include "puresets/exact_stats.hpp"
#include "puresets/polynomial.hpp"

namespace puresets {

std::uint32_t universe_size(unsigned k);  // Z_k for k <= 4
// All codes of S_k in increasing order; k <= 4.
std::ranges::iota_view<std::uint32_t, std::uint32_t> iterate_S(unsigned k);

// Value of a chain index on the set with the given small code.
std::uint64_t chain_value(ChainIndex i, std::uint32_t code);

struct MomentTable {
  unsigned k = 0;
  std::vector<ChainIndex> indices;
  std::vector<mpq_class> mean;
  std::vector<std::vector<mpq_class>> cov;  // population covariance over S_k
};
// Exact moments by exhaustive enumeration of S_k (k <= 4).
MomentTable empirical_moments(unsigned k, const std::vector<ChainIndex>& indices);
// Every index with nonzero variance at level k: H^1..H^k, G^1..G^k, plus H^0.
std::vector<ChainIndex> all_indices(unsigned k);

struct MomentCheck {
  bool ok = true;
  std::string first_mismatch;
};
MomentCheck compare_moments_with_closed_forms(unsigned k);

// T_{k,n,q}: transitive sets of depth k whose elements of depth exactly k-1
// number n, with q elements of smaller depth.
struct TransitiveTable {
  unsigned k = 0;
  bool collapsed = false;                            // counts summed over n
  std::map<std::pair<unsigned, unsigned>, mpz_class> counts;  // (n, q), full form
  std::map<unsigned, mpz_class> by_q;                // sum over n
  mpz_class total;
};
TransitiveTable transitive_counts(unsigned k);       // full (n, q) table, k <= 4
TransitiveTable transitive_counts_collapsed(unsigned k);  // k <= 5
mpz_class transitive_total(unsigned k);              // T_k, k <= 5
// Brute-force count of transitive sets of depth exactly k, k <= 4.
std::uint64_t transitive_brute_force(unsigned k);

// sum_h D_{k;h} u^h: S_k counted by H^{(k)}.
struct DkhDistribution {
  unsigned k = 0;
  std::optional<CountPolynomial> expanded;  // present for k <= 4
  // prod_h (1 + u^h)^{e_h}; an entry with h = 0 is the constant factor 2^{e_0}.
  std::vector<std::pair<std::uint32_t, mpz_class>> factors;
  // largest power p with every factor exponent divisible by p.
  mpz_class exponent_gcd() const;
};
DkhDistribution dkh_distribution(unsigned k);  // k <= 5

// Bivariate series in (v, u): v counts maximal chains, u counts chains.
// Variable order is {v, u}.
CountPolynomial identity_tree_series(unsigned max_nodes);  // max_nodes <= 30
// Sum over S_k of v^{G_total} u^{H_total}, via the product over S_{k-1}.
CountPolynomial finite_chain_polynomial(unsigned k);  // k <= 4
// The same sum by direct enumeration of S_k.
CountPolynomial finite_chain_polynomial_enumerated(unsigned k);  // k <= 4

// Indeterminates: u<j>, ub<j> (j >= 0), v<j>, vb<j> (j >= 1); vb0 is 1.
// Missing names evaluate to 1.
using Assignment = std::map<std::string, mpq_class>;
enum class FactorizationWeights { full, inverse_only };

struct FactorizationReport {
  bool ok = false;
  mpq_class lhs, rhs;
  Assignment assignment;
};
Assignment random_assignment(unsigned k, unsigned l, std::uint64_t seed, FactorizationWeights w);
FactorizationReport verify_factorization(unsigned k, unsigned l, const Assignment& a,
                                         FactorizationWeights w = FactorizationWeights::full);

struct ShellReport {
  bool ok = false;
  unsigned k = 0;
  std::uint32_t z = 0;
  std::vector<mpz_class> enumerated;  // coefficients of u^j
  std::vector<mpz_class> expected;
  bool conditional_law_ok = false;
};
ShellReport second_shell_check(unsigned k, std::uint32_t z_code);  // 2 <= k <= 4

struct GameReport {
  unsigned k = 0;
  std::vector<bool> second_player_wins;  // indexed by code
  std::uint64_t second_count = 0;
  std::uint64_t first_count = 0;
};
GameReport game_tag(unsigned k);  // k <= 4

}  // namespace puresets
