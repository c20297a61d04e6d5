#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace puresets {

// log E[exp(u1 H^1_k + u2 H^2_k)], 2 <= k <= 6.
double cgf_h1_h2(double u1, double u2, int k);

// log E[exp(sum of a_i * chain count)] for the six counts (H^0, H^1, H^2, G^1, G^2, G^3),
// parameters in that order; 3 <= k <= 6.
double cgf_full(const std::array<double, 6>& a, int k);

struct RateResult {
  double value = 0;
  std::optional<double> u_star;  // empty when the infimum is not attained
  bool diverged = false;         // infimum is -infinity
};

// inf_{u >= 0} 2 log cosh(u/2) - u x, for 0 <= x <= 1.
double binom_rate(double x);
double binom_rate_analytic(double x);

struct RateQuery {
  double x = 0;
  double tolerance = 1e-13;
  double max_u = 1e4;
  std::size_t nodes = 128;  // Gauss-Hermite nodes
};

// inf_{u >= 0} E[log cosh(lambda u)] - u x, lambda standard normal.
RateResult gaussian_logcosh_rate(const RateQuery& q);

// E[log cosh(lambda u)] and its u-derivative E[lambda tanh(lambda u)].
double gaussian_logcosh(double u, std::size_t nodes = 128);
double gaussian_logcosh_slope(double u, std::size_t nodes = 128);
// Same quantities through u sqrt(2/pi) - log 2 + remainder, valid for all u > 0.
double gaussian_logcosh_split(double u);
double gaussian_logcosh_slope_split(double u);

struct GaussHermiteRule {
  std::vector<double> nodes, weights;  // weights sum to 1 against the standard normal
};
const GaussHermiteRule& gauss_hermite(std::size_t n);

// Extremes of D = 2 H^2_k - Z_{k-2} H^1_k.
struct DiffExtremes {
  int k = 0;
  mpz_class max_value;
  mpz_class prob_log2;       // log2 of the probability of the maximum
  mpz_class attaining_log2;  // log2 of the number of maximizing sets
  double asymptotic_ratio = 0;  // max / (2 H^2_k(S_{k-1}) / sqrt(2 pi Z_{k-2}))
};
DiffExtremes diff_extremes(int k);

// Finite-k Chernoff bound for P(D >= x Z_{k-1} sqrt(Z_{k-2}/4)), divided by Z_{k-1}; 2 <= k <= 5.
RateResult finite_k_diff_rate(double x, int k);
// Z_{k-1} * finite_k_diff_rate, i.e. the bound on the natural log of the probability.
double finite_diff_log_bound(double x, int k);

struct SandwichRow {
  double u = 0, lower = 0, value = 0, upper = 0;
};
struct SandwichReport {
  int k = 0;
  bool pass = false;
  std::vector<SandwichRow> rows;
  std::optional<double> worst_u;  // smallest margin
  double worst_margin = 0;
};
// Checks the quartic sandwich for log E[exp(2u D / sqrt(Z_{k-1} Z_{k-2}))] - u^2/2
// using the enumerated law of D over S_k; 2 <= k <= 4.
SandwichReport sandwich_check(int k, const std::vector<double>& u_grid);

// Law of D over S_k by enumeration, as (value, count) in increasing value order; 2 <= k <= 4.
std::vector<std::pair<long, unsigned long>> diff_distribution(int k);

}  // namespace puresets
