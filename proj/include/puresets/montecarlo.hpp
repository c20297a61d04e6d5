#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "puresets/exact_stats.hpp"

namespace puresets {

// Philox2x64-10 block function.
std::array<std::uint64_t, 2> philox2x64(std::array<std::uint64_t, 2> counter, std::uint64_t key);

struct StreamKey {
  std::uint64_t seed = 0;
  std::uint64_t index = 0;  // sample number
};

// Uniform random element of S_k as its Z_{k-1} membership bits.
struct BitSample {
  unsigned k = 0;
  std::uint64_t length = 0;  // Z_{k-1}
  std::vector<std::uint64_t> words;

  bool test(std::uint64_t m) const { return words[m >> 6] >> (m & 63) & 1u; }
  std::uint64_t popcount() const;
};

BitSample sample(unsigned k, StreamKey key);  // 1 <= k <= 5
BitSample from_code(unsigned k, std::uint32_t code);  // k <= 4

// Chain profiles of S_{k-1} arranged as bit planes, so that a chain count of a
// sample is a weighted popcount.
class ChainTable {
 public:
  explicit ChainTable(unsigned k);
  unsigned k() const { return k_; }
  std::uint64_t value(ChainIndex obs, const BitSample& s) const;
  // Direct sum over set bits; slow, used as a cross-check.
  std::uint64_t value_reference(ChainIndex obs, const BitSample& s) const;

 private:
  struct Column {
    std::vector<std::uint32_t> values;                // per element of S_{k-1}
    std::vector<std::vector<std::uint64_t>> planes;   // bit b of values, as membership words
  };
  const Column& column(ChainIndex obs) const;
  unsigned k_;
  std::vector<Column> h_cols_;  // index n: column for H^n (values H^{n-1})
  std::vector<Column> g_cols_;  // index n: column for G^n
};

std::vector<std::uint64_t> chain_stats(const BitSample& s, const ChainTable& t, std::span<const ChainIndex> obs);

struct ExperimentConfig {
  unsigned k = 5;
  std::uint64_t n_samples = 20000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::vector<ChainIndex> observables;
};

struct ObservableSummary {
  ChainIndex obs;
  double mean = 0, stderr_mean = 0, variance = 0;
  double exact_mean = 0, exact_variance = 0;
  double skewness = 0, excess_kurtosis = 0;  // of the normalized observable, exact normalization
  // H observables only: normalized difference to H^1
  double max_abs_diff_h1 = 0, mean_sq_diff_h1 = 0, mean_sq_diff_stderr = 0;
};

struct PairSummary {
  ChainIndex a, b;
  double correlation = 0, stderr_corr = 0, exact = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ObservableSummary> observables;
  std::vector<PairSummary> pairs;
};

// Deterministic in (seed, n_samples), independent of the worker count.
ExperimentReport run_experiment(const ExperimentConfig& c);

struct TailConfig {
  unsigned k = 5;
  std::uint64_t n_samples = 20000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::vector<double> thresholds;
};

struct TailRow {
  double x = 0;
  // {H^1 - m >= x m}, m = Z_{k-1}/2
  std::uint64_t hits_h1 = 0;
  double log_bound_h1 = 0;  // m * binom_rate(x)
  // {D >= x Z_{k-1} sqrt(Z_{k-2}) / 2}, D = 2 H^2 - Z_{k-2} H^1
  std::uint64_t hits_diff = 0;
  double log_bound_diff = 0;  // finite-k Chernoff bound
  bool within_bounds = false;
};

struct TailReport {
  TailConfig config;
  std::vector<TailRow> rows;
  std::int64_t max_diff_observed = 0;
  mpz_class max_diff_possible;
};

TailReport tail_scan(const TailConfig& c);

}  // namespace puresets
