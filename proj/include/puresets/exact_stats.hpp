#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "puresets/exact_scalar.hpp"

namespace puresets {

enum class ChainKind { H, G };

// H^n counts all chains of length n, G^n the maximal ones. F-index convention:
// f >= 0 is H^f, f < 0 is G^{-f}.
struct ChainIndex {
  ChainKind kind = ChainKind::H;
  int n = 0;

  static ChainIndex H(int n) { return {ChainKind::H, n}; }
  static ChainIndex G(int n) { return {ChainKind::G, n}; }
  static ChainIndex from_f(int f) { return f >= 0 ? H(f) : G(-f); }
  static ChainIndex parse(const std::string& name);  // "h2", "G3", ...
  int f_index() const { return kind == ChainKind::H ? n : -n; }
  std::string name() const;
  void validate() const;  // InvalidIndex for n < 0 or G^0

  friend bool operator==(const ChainIndex&, const ChainIndex&) = default;
};

// Z_{-1} = 0, Z_k = 2^{Z_{k-1}}.
ExactScalar Z(int k);
mpz_class Z_integer(int k);  // k <= 5 under the default budget
// Z~_k = prod_{l<k} Z_l / 2.
ExactScalar Ztilde(int k);

// R_{n,n}(r) = r, R_{n,k}(r) = (1 + R_{n,k-1}(r)) / Z_{k-1}.
mpq_class R(int n, int k, const mpq_class& r);  // k <= k_exact
ExactScalar R_scaled(int n, int k, const mpq_class& r);  // k <= k_max

ExactScalar expectation(ChainIndex i, int k);
ExactScalar covariance(ChainIndex a, ChainIndex b, int k);
ExactScalar variance(ChainIndex a, int k);
// Throws DegenerateVariance if either variance is zero.
mpq_class correlation_squared(ChainIndex a, ChainIndex b, int k);
long double correlation(ChainIndex a, ChainIndex b, int k);

struct NormalizationParams {
  ExactScalar mean;
  ExactScalar variance;
  long double sd() const;
};
NormalizationParams normalize_params(ChainIndex i, int k);

struct LinearCombination {
  int k = 0;
  std::vector<std::pair<ChainIndex, mpq_class>> terms;
};

struct ComboReport {
  long double variance = 0;  // of sum alpha_i * normalized F_i
  mpq_class s, s_abs;
  long double bound = 0;     // 3 s_abs^2 / Z_{k-2}
  bool bound_holds = false;  // |variance - s^2| <= bound
};
ComboReport combo_variance_and_bound(const LinearCombination& c);
// Exact variance of the unnormalized combination sum alpha_i F_i.
ExactScalar raw_combo_variance(const LinearCombination& c);
// r_k^2 with normalized H^{k-1} = r_k (G^{k-1} + G^k) after normalization.
mpq_class r_k_squared(int k);

struct CorrelationBoundReport {
  bool ok = true;
  std::optional<std::pair<int, int>> worst_pair;  // F-indices of a failing pair
};
// Rational-form check of |corr - 1| <= 3/Z_{k-2} on I_k = [-k, k] \ {-2, -1, 0}
// and |corr(., G^2) - 1/sqrt 2| <= 3/Z_{k-2}.
CorrelationBoundReport check_correlation_bounds(int k);

struct GammaEta {
  mpq_class gamma;
  mpq_class eta;
};
GammaEta gamma_eta(int terms);

// prod_{j_bar <= i < j_bar + k_terms} (1 - 1/Z_i)
mpq_class survival_probability(int j_bar, int k_terms);

// 2^exponent + offset, kept symbolic when the value does not fit the budget.
struct TowerValue {
  mpz_class exponent;
  int offset = 0;
  std::optional<mpz_class> value;
  bool is_zero = false;
};

struct GameCounts {
  int k = 0;
  mpz_class two_exponent;           // second player wins on 2^two_exponent sets
  std::optional<mpz_class> two;     // materialized when it fits
  std::optional<mpz_class> one;
  ExactScalar two_fraction;         // |two| / Z_k
};
GameCounts game_counts(int k);

struct MiscClosedForms {
  int k = 0;
  std::optional<mpq_class> avg_element_subsets;  // 1/2 (3/2)^{Z_{k-2}}, k >= 2
  std::vector<TowerValue> leaf_distance;         // Z_{k,l}, l = 0..k
  GameCounts games;
  // Var[H^n - 2 G^{n+1}] for n = 0..k-1, mean is zero.
  std::vector<ExactScalar> var_diff;
};
MiscClosedForms misc_closed_forms(int k);
TowerValue leaf_distance_count(int k, int l);

}  // namespace puresets
