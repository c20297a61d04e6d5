#include <bit>
#include <cmath>
#include <cstring>

#include "doctest.h"
#include "puresets/chains.hpp"
#include "puresets/enumerate.hpp"
#include "puresets/errors.hpp"
#include "puresets/montecarlo.hpp"

using namespace puresets;

namespace {

std::vector<ChainIndex> indices_up_to(int k) {
  std::vector<ChainIndex> v;
  for (int n = 0; n <= k; ++n) v.push_back(ChainIndex::H(n));
  for (int n = 1; n <= k; ++n) v.push_back(ChainIndex::G(n));
  return v;
}

std::uint64_t profile_value(const ChainProfile& p, ChainIndex i) {
  return i.kind == ChainKind::H ? p.h[static_cast<std::size_t>(i.n)] : p.g[static_cast<std::size_t>(i.n)];
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("philox2x64-10 known answers") {
  using A = std::array<std::uint64_t, 2>;
  CHECK(philox2x64({0, 0}, 0) == A{0xca00a0459843d731ull, 0x66c24222c9a845b5ull});
  CHECK(philox2x64({~0ull, ~0ull}, ~0ull) == A{0x65b021d60cd8310full, 0x4d02f3222f86df20ull});
  CHECK(philox2x64({0x243f6a8885a308d3ull, 0x13198a2e03707344ull}, 0xa4093822299f31d0ull) ==
        A{0x0a5e742c2997341cull, 0xb0f883d38000de5dull});
}

TEST_CASE("sample shape and determinism") {
  BitSample s1 = sample(1, {7, 0});
  CHECK(s1.length == 1);
  CHECK(s1.words.size() == 1);
  CHECK(s1.words[0] <= 1);
  BitSample s5 = sample(5, {7, 3});
  CHECK(s5.length == 65536);
  CHECK(s5.words.size() == 1024);
  CHECK(sample(5, {7, 3}).words == s5.words);
  CHECK(sample(5, {7, 4}).words != s5.words);
  CHECK(sample(5, {8, 3}).words != s5.words);
  CHECK(sample(3, {1, 1}).words[0] < 16);
  CHECK_THROWS_AS(sample(6, {1, 1}), DomainError);
  CHECK_THROWS_AS(sample(0, {1, 1}), DomainError);

  // k=1: both values of the single bit appear about equally often
  int ones = 0;
  for (std::uint64_t i = 0; i < 4000; ++i) ones += static_cast<int>(sample(1, {11, i}).words[0]);
  CHECK(std::abs(ones - 2000) < 5 * std::sqrt(1000.0));
}

TEST_CASE("bits are balanced") {
  std::uint64_t ones = 0, total = 0;
  std::array<std::uint64_t, 64> per_pos{};
  for (std::uint64_t i = 0; i < 16; ++i) {
    BitSample s = sample(5, {2024, i});
    ones += s.popcount();
    total += s.length;
    for (auto w : s.words)
      for (int b = 0; b < 64; ++b) per_pos[static_cast<std::size_t>(b)] += w >> b & 1u;
  }
  double sd = std::sqrt(static_cast<double>(total) / 4);
  CHECK(std::fabs(static_cast<double>(ones) - static_cast<double>(total) / 2) < 5 * sd);
  double n_pos = static_cast<double>(total) / 64;
  for (auto c : per_pos) CHECK(std::fabs(static_cast<double>(c) - n_pos / 2) < 5 * std::sqrt(n_pos / 4));
}

TEST_CASE("chain_stats against the recursive chain walk over S_4") {
  ChainTable t(4);
  auto idx = indices_up_to(4);
  for (std::uint32_t c = 0; c < 65536; c += (c < 4096 ? 1 : 37)) {
    auto p = chain_profile(decode(Code(c)), 4);
    auto v = chain_stats(from_code(4, c), t, idx);
    for (std::size_t i = 0; i < idx.size(); ++i) REQUIRE(v[i] == profile_value(p, idx[i]));
  }
}

TEST_CASE("chain_stats examples") {
  ChainTable t4(4);
  BitSample ones = from_code(4, 65535);
  CHECK(t4.value(ChainIndex::H(1), ones) == 16);
  CHECK(t4.value(ChainIndex::G(1), ones) == 1);
  BitSample zeros = from_code(4, 0);
  CHECK(t4.value(ChainIndex::H(0), zeros) == 1);
  for (int n = 1; n <= 4; ++n) {
    CHECK(t4.value(ChainIndex::H(n), zeros) == 0);
    CHECK(t4.value(ChainIndex::G(n), zeros) == 0);
  }
  BitSample single = from_code(4, 1u << 14);
  auto p14 = chain_profile(decode(Code(14)), 3);
  for (int n = 1; n <= 4; ++n) CHECK(t4.value(ChainIndex::H(n), single) == p14.h[static_cast<std::size_t>(n - 1)]);
  CHECK_THROWS_AS(t4.value(ChainIndex::H(1), sample(5, {1, 0})), DomainError);
}

TEST_CASE("popcount planes agree with the reference loop at k=5") {
  ChainTable t(5);
  for (std::uint64_t i = 0; i < 6; ++i) {
    BitSample s = sample(5, {99, i});
    CHECK(t.value(ChainIndex::H(1), s) == s.popcount());
    for (auto ix : indices_up_to(5)) CHECK(t.value(ix, s) == t.value_reference(ix, s));
  }
}

TEST_CASE("exhaustive evaluation reproduces the enumerated moments") {
  for (unsigned k = 1; k <= 3; ++k) {
    ChainTable t(k);
    auto idx = all_indices(k);
    MomentTable mt = empirical_moments(k, idx);
    const std::uint32_t zk = k == 1 ? 2 : k == 2 ? 4 : 16;
    std::vector<mpz_class> s1(idx.size(), 0);
    std::vector<std::vector<mpz_class>> s2(idx.size(), std::vector<mpz_class>(idx.size(), 0));
    for (std::uint32_t c = 0; c < zk; ++c) {
      auto v = chain_stats(from_code(k, c), t, idx);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        s1[i] += static_cast<unsigned long>(v[i]);
        for (std::size_t j = 0; j < idx.size(); ++j) s2[i][j] += mpz_class(static_cast<unsigned long>(v[i] * v[j]));
      }
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      mpq_class mean(s1[i], zk);
      mean.canonicalize();
      CHECK(mean == mt.mean[i]);
      for (std::size_t j = 0; j < idx.size(); ++j) {
        mpq_class mj(s1[j], zk);
        mj.canonicalize();
        mpq_class cov = mpq_class(s2[i][j], zk) - mean * mj;
        cov.canonicalize();
        CHECK(cov == mt.cov[i][j]);
      }
    }
  }
}

TEST_CASE("run_experiment is worker invariant") {
  ExperimentConfig c;
  c.k = 4;
  c.n_samples = 3000;
  c.seed = 5;
  c.observables = {ChainIndex::H(1), ChainIndex::H(2), ChainIndex::G(2), ChainIndex::H(3)};
  c.workers = 1;
  auto a = run_experiment(c);
  c.workers = 4;
  auto b = run_experiment(c);
  REQUIRE(a.observables.size() == b.observables.size());
  for (std::size_t i = 0; i < a.observables.size(); ++i) {
    const auto &x = a.observables[i], &y = b.observables[i];
    CHECK(same_bits(x.mean, y.mean));
    CHECK(same_bits(x.variance, y.variance));
    CHECK(same_bits(x.skewness, y.skewness));
    CHECK(same_bits(x.excess_kurtosis, y.excess_kurtosis));
    CHECK(same_bits(x.max_abs_diff_h1, y.max_abs_diff_h1));
    CHECK(same_bits(x.mean_sq_diff_h1, y.mean_sq_diff_h1));
  }
  REQUIRE(a.pairs.size() == 6);
  for (std::size_t i = 0; i < a.pairs.size(); ++i) CHECK(same_bits(a.pairs[i].correlation, b.pairs[i].correlation));
}

TEST_CASE("run_experiment estimates at k=4") {
  ExperimentConfig c;
  c.k = 4;
  c.n_samples = 20000;
  c.seed = 17;
  c.workers = 2;
  c.observables = {ChainIndex::H(1), ChainIndex::H(2), ChainIndex::G(2)};
  auto r = run_experiment(c);
  for (const auto& o : r.observables) {
    CHECK(std::fabs(o.mean - o.exact_mean) < 5 * o.stderr_mean);
    CHECK(o.variance == doctest::Approx(o.exact_variance).epsilon(0.1));
  }
  for (const auto& p : r.pairs) CHECK(std::fabs(p.correlation - p.exact) < 5 * p.stderr_corr + 1e-12);
  CHECK(r.observables[0].max_abs_diff_h1 == 0.0);
  CHECK_THROWS_AS(run_experiment({4, 100, 1, 1, {ChainIndex::H(0)}}), DegenerateVariance);
  CHECK_THROWS_AS(run_experiment({6, 100, 1, 1, {ChainIndex::H(1)}}), DomainError);
}

TEST_CASE("tail scan at k=5") {
  TailConfig c;
  c.k = 5;
  c.n_samples = 4000;
  c.seed = 3;
  c.workers = 2;
  c.thresholds = {0.0, 0.01, 0.05};
  auto r = tail_scan(c);
  REQUIRE(r.rows.size() == 3);
  double f0 = static_cast<double>(r.rows[0].hits_h1) / 4000;
  CHECK(std::fabs(f0 - 0.5) < 5 * std::sqrt(0.25 / 4000) + 0.01);
  for (const auto& row : r.rows) CHECK(row.within_bounds);
  CHECK(r.rows[2].hits_h1 == 0);
  CHECK(r.max_diff_possible == 102960);
  CHECK(std::abs(r.max_diff_observed) <= 102960);
  c.workers = 1;
  auto r1 = tail_scan(c);
  CHECK(r1.max_diff_observed == r.max_diff_observed);
  for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(r1.rows[i].hits_diff == r.rows[i].hits_diff);
}
