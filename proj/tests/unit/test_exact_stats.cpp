#include <random>

#include "doctest.h"
#include "puresets/enumerate.hpp"
#include "puresets/errors.hpp"
#include "puresets/exact_stats.hpp"
#include "puresets/limits.hpp"

using namespace puresets;

namespace {

mpq_class zq(int k) {  // Z_k for k <= 5 as a rational, built by repeated squaring
  mpz_class z = k < 0 ? 0 : 1;
  for (int i = 1; i <= k; ++i) {
    mpz_class next;
    mpz_ui_pow_ui(next.get_mpz_t(), 2, z.get_ui());
    z = next;
  }
  return mpq_class(z);
}

// Closed form r / prod_{n<=j<k} Z_j + sum_{n<=i<k} 1 / prod_{i<=j<k} Z_j
mpq_class r_closed(int n, int k, const mpq_class& r) {
  mpq_class s = 0;
  for (int i = n; i < k; ++i) {
    mpq_class p = 1;
    for (int j = i; j < k; ++j) p *= zq(j);
    s += 1 / p;
  }
  mpq_class p = 1;
  for (int j = n; j < k; ++j) p *= zq(j);
  return s + r / p;
}

}  // namespace

TEST_CASE("Z tower") {
  const long small[] = {1, 2, 4, 16, 65536};
  CHECK(Z(-1).is_zero());
  for (int k = 0; k <= 4; ++k) CHECK(Z(k).to_rational() == small[k]);
  CHECK(Z(5).exponent() == 65536);
  CHECK(Z(5).to_integer().get_str().size() == 19729);
  CHECK(Z(6).exponent() == zq(5).get_num());
  CHECK_THROWS_AS(Z(7), CapacityError);
}

TEST_CASE("Ztilde values") {
  const mpq_class want[] = {1, mpq_class(1, 2), mpq_class(1, 2), 1, 8, 262144};
  for (int k = 0; k <= 5; ++k) {
    CHECK(Ztilde(k).to_rational() == want[k]);
    mpq_class prod = 1;
    for (int l = 0; l < k; ++l) prod *= zq(l) / 2;
    CHECK(Ztilde(k).to_rational() == prod);
  }
  CHECK(Ztilde(6) == ExactScalar::pow2(65553));
  CHECK(Ztilde(7).exponent() == 65553 + zq(5).get_num() - 1);
}

TEST_CASE("ExactScalar arithmetic agrees with rationals") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 300), ex(-40, 40);
  for (int i = 0; i < 500; ++i) {
    mpq_class a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    long ea = ex(rng), eb = ex(rng);
    mpq_class qa = a, qb = b;
    if (ea >= 0) mpq_mul_2exp(qa.get_mpq_t(), qa.get_mpq_t(), ea); else mpq_div_2exp(qa.get_mpq_t(), qa.get_mpq_t(), -ea);
    if (eb >= 0) mpq_mul_2exp(qb.get_mpq_t(), qb.get_mpq_t(), eb); else mpq_div_2exp(qb.get_mpq_t(), qb.get_mpq_t(), -eb);
    ExactScalar sa(a, ea), sb(b, eb);
    CHECK(sa.to_rational() == qa);
    CHECK((sa + sb).to_rational() == qa + qb);
    CHECK((sa - sb).to_rational() == qa - qb);
    CHECK((sa * sb).to_rational() == qa * qb);
    if (sgn(qb) != 0) CHECK((sa / sb).to_rational() == qa / qb);
    CHECK(compare(sa, sb) == (qa < qb ? -1 : qa > qb ? 1 : 0));
    CHECK(sa.to_double() == doctest::Approx(qa.get_d()));
  }
  ExactScalar z(mpq_class(0), 17);
  CHECK(z.exponent() == 0);
  ExactScalar six(6);
  CHECK(six.mantissa() == 3);
  CHECK(six.exponent() == 1);
}

TEST_CASE("R recursion matches the closed form") {
  for (int k = 0; k <= 6; ++k)
    for (int n = 0; n <= k; ++n)
      for (mpq_class r : {mpq_class(0), mpq_class(1), mpq_class(1, 3)}) {
        CAPTURE(n);
        CAPTURE(k);
        if (k <= 5 || n >= 0) CHECK(R(n, k, r) == r_closed(n, k, r));
      }
  CHECK(R(3, 3, mpq_class(5, 7)) == mpq_class(5, 7));
}

TEST_CASE("R bounds and shift identity") {
  for (int k = 2; k <= 6; ++k)
    for (int n = 0; n < k; ++n) {
      mpq_class t = zq(k - 1) * R(n, k, 0) - 1;
      CHECK(sgn(t) >= 0);
      CHECK(t <= 2 / zq(k - 2));
      if (k >= n + 2)
        for (mpq_class r : {mpq_class(0), mpq_class(1), mpq_class(3)}) {
          mpq_class u = zq(k - 1) * R(n, k, r) - 1;
          CHECK(u <= (2 + r) / zq(k - 2));
        }
      if (n + 1 <= k) CHECK(R(n + 1, k, 1 / zq(n)) == R(n, k, 0));
    }
}

TEST_CASE("expectations") {
  CHECK(expectation(ChainIndex::H(2), 4).to_rational() == 16);
  CHECK(expectation(ChainIndex::G(1), 6).to_rational() == mpq_class(1, 2));
  CHECK(expectation(ChainIndex::H(0), 7).to_rational() == 1);
  CHECK(expectation(ChainIndex::H(6), 5).is_zero());
  auto p = normalize_params(ChainIndex::H(1), 5);
  CHECK(p.mean.to_rational() == 32768);
  CHECK(p.variance.to_rational() == 16384);
  CHECK(p.sd() == doctest::Approx(128.0));
  CHECK_THROWS_AS(expectation(ChainIndex::G(0), 3), InvalidIndex);
  CHECK_THROWS_AS(expectation(ChainIndex::H(-1), 3), InvalidIndex);
  CHECK_THROWS_AS(normalize_params(ChainIndex::H(0), 3), DegenerateVariance);
  CHECK_THROWS_AS(expectation(ChainIndex::H(1), 8), CapacityError);
}

TEST_CASE("first and second shell moments from binomial counting") {
  for (int k = 2; k <= 6; ++k) {
    CAPTURE(k);
    ExactScalar zk1 = Z(k - 1), zk2 = Z(k - 2);
    CHECK(variance(ChainIndex::H(1), k) == zk1 / ExactScalar(4));
    CHECK(covariance(ChainIndex::H(1), ChainIndex::H(2), k) == zk1 * zk2 / ExactScalar(8));
    CHECK(variance(ChainIndex::H(2), k) == zk1 * zk2 * (zk2 + ExactScalar(1)) / ExactScalar(16));
    CHECK(variance(ChainIndex::G(1), k).to_rational() == mpq_class(1, 4));
    CHECK(correlation_squared(ChainIndex::H(1), ChainIndex::G(2), k) == mpq_class(1, 2));
  }
  CHECK(correlation_squared(ChainIndex::H(1), ChainIndex::H(2), 5) == mpq_class(16, 17));
  CHECK(correlation_squared(ChainIndex::H(1), ChainIndex::G(2), 3) == mpq_class(1, 2));
  CHECK(correlation(ChainIndex::H(1), ChainIndex::H(2), 5) == doctest::Approx(std::sqrt(16.0 / 17.0)));
}

TEST_CASE("covariance is symmetric and the matrix is consistent at k = 7") {
  for (int k = 3; k <= 7; ++k)
    for (auto a : all_indices(k))
      for (auto b : all_indices(k)) CHECK(covariance(a, b, k) == covariance(b, a, k));
  auto c2 = correlation_squared(ChainIndex::H(3), ChainIndex::H(1), 7);
  CHECK(c2 < 1);
  CHECK(c2 > mpq_class(99, 100));
}

TEST_CASE("linear relation H^{k-1} = G^{k-1} + G^k has zero variance") {
  for (int k = 2; k <= 7; ++k) {
    LinearCombination c{k, {{ChainIndex::H(k - 1), 1}, {ChainIndex::G(k - 1), -1}, {ChainIndex::G(k), -1}}};
    CHECK(raw_combo_variance(c).is_zero());
  }
  for (int k = 2; k <= 6; ++k) {
    double r = std::sqrt(r_k_squared(k).get_d());
    LinearCombination c{k, {{ChainIndex::H(k - 1), 1}, {ChainIndex::G(k - 1), mpq_class(-r)}, {ChainIndex::G(k), mpq_class(-r)}}};
    auto rep = combo_variance_and_bound(c);
    CHECK(std::fabs(static_cast<double>(rep.variance)) < 1e-12);
    // both G terms are scaled by the same r_k: their variances coincide
    CHECK(variance(ChainIndex::G(k - 1), k) == variance(ChainIndex::G(k), k));
  }
}

TEST_CASE("normalized combinations stay within the bound") {
  LinearCombination c{5, {{ChainIndex::H(3), 1}, {ChainIndex::H(1), -1}}};
  auto rep = combo_variance_and_bound(c);
  CHECK(rep.bound_holds);
  CHECK(rep.bound == doctest::Approx(0.75));
  CHECK(rep.variance == doctest::Approx(2 - 2 / std::sqrt(1.078125)));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 1), coef(-5, 5);
  for (int k = 3; k <= 6; ++k) {
    std::vector<int> fs;
    for (int f = -k; f <= k; ++f)
      if (f < -2 || f > 0) fs.push_back(f);
    for (int trial = 0; trial < 20; ++trial) {
      LinearCombination lc{k, {}};
      for (int f : fs)
        if (pick(rng)) lc.terms.push_back({ChainIndex::from_f(f), coef(rng)});
      if (lc.terms.empty()) continue;
      CHECK(combo_variance_and_bound(lc).bound_holds);
    }
  }
}

TEST_CASE("correlation bounds in rational form") {
  for (int k = 2; k <= 6; ++k) {
    CAPTURE(k);
    CHECK(check_correlation_bounds(k).ok);
  }
}

TEST_CASE("H^n - 2 G^{n+1} is centred with closed-form variance") {
  for (int k = 1; k <= 6; ++k) {
    auto m = misc_closed_forms(k);
    for (int n = 0; n < k; ++n) {
      LinearCombination c{k, {{ChainIndex::H(n), 1}, {ChainIndex::G(n + 1), -2}}};
      CHECK(expectation(ChainIndex::H(n), k) == ExactScalar(2) * expectation(ChainIndex::G(n + 1), k));
      CHECK(raw_combo_variance(c) == m.var_diff[static_cast<std::size_t>(n)]);
    }
  }
}

TEST_CASE("gamma and eta") {
  auto g5 = gamma_eta(5);
  auto dec = [](const char* s) {
    mpq_class q(s);
    q.canonicalize();
    return q;
  };
  CHECK(g5.gamma == dec("25625019073486328125/10000000000000000000"));
  CHECK(g5.eta == dec("6125003814697265625/1000000000000000000"));
  CHECK(g5.gamma.get_d() == doctest::Approx(2.5625019073486328125).epsilon(1e-15));
  CHECK(g5.eta.get_d() == doctest::Approx(6.125003814697265625).epsilon(1e-15));
  for (int k = 0; k <= 6; ++k) {
    auto g = gamma_eta(k);
    CHECK(g.eta == 2 * g.gamma + 1);
  }
}

TEST_CASE("survival probability") {
  CHECK(survival_probability(1, 3) == mpq_class(45, 128));
  CHECK(survival_probability(0, 2) == 0);
  CHECK(survival_probability(3, 0) == 1);
  mpq_class p = 1;
  for (int i = 2; i <= 5; ++i) p *= 1 - 1 / zq(i);
  CHECK(survival_probability(2, 4) == p);
  CHECK_THROWS_AS(survival_probability(5, 3), CapacityError);
}

TEST_CASE("leaf distance counts") {
  const long z3[] = {0, 0, 0, 1, 127};
  const long z4[] = {0, 0, 0, 0, 1};
  for (int k = 0; k <= 4; ++k) {
    CHECK(*leaf_distance_count(k, 3).value == z3[k]);
    CHECK(*leaf_distance_count(k, 4).value == z4[k]);
  }
  auto t53 = leaf_distance_count(5, 3);
  CHECK(t53.exponent == 32767);
  CHECK(*t53.value == (mpz_class(1) << 32767) - 1);
  CHECK(*leaf_distance_count(5, 4).value == (mpz_class(1) << 127) - 1);
  auto m6 = misc_closed_forms(6);
  CHECK(m6.leaf_distance.size() == 7);
  CHECK(*m6.leaf_distance[6].value == 1);
  CHECK(!m6.leaf_distance[0].value);
}

TEST_CASE("games") {
  const mpq_class want[] = {1, mpq_class(1, 2), mpq_class(1, 2), mpq_class(1, 4), mpq_class(1, 16)};
  for (int k = 0; k <= 4; ++k) CHECK(game_counts(k).two_fraction.to_rational() == want[k]);
  CHECK(game_counts(5).two_fraction == ExactScalar::pow2(-4096));
  CHECK(game_counts(5).two_exponent == 61440);
  CHECK(game_counts(6).two_fraction == ExactScalar::pow2(-(mpz_class(1) << 61440)));
}

TEST_CASE("limits are configurable") {
  ScopedLimits guard({1u << 20, 4, 7});
  CHECK_THROWS_AS(R(0, 5, 0), CapacityError);
  CHECK_NOTHROW(R_scaled(0, 5, 0));
}
