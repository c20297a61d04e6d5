#include <map>

#include "doctest.h"
#include "golden.hpp"
#include "puresets/chains.hpp"
#include "puresets/errors.hpp"

using namespace puresets;

namespace {

// Independent chain enumeration: walk every descending chain explicitly.
void walk(const PureSet& x, unsigned len, std::vector<std::uint64_t>& h, std::vector<std::uint64_t>& g) {
  if (len >= h.size()) h.resize(len + 1, 0), g.resize(len + 1, 0);
  h[len] += 1;
  if (x.empty() && len > 0) g[len] += 1;
  for (const auto& y : x.elements()) walk(y, len + 1, h, g);
}

}  // namespace

TEST_CASE("totals match the depth-3 table") {
  for (const auto& row : golden::rows) {
    CAPTURE(row.code);
    auto p = chain_profile(decode(row.code), 3);
    CHECK(p.h_total() == row.chains);
    CHECK(p.g_total() == row.maximal_chains);
    auto t = totals(p);
    CHECK(t.chains == row.chains);
    CHECK(t.maximal_chains == row.maximal_chains);
  }
}

TEST_CASE("profiles agree with explicit chain walking") {
  for (std::uint32_t c = 0; c < 65536; c += 13) {
    PureSet x = decode(c);
    std::vector<std::uint64_t> h, g;
    walk(x, 0, h, g);
    h.resize(5, 0);
    g.resize(5, 0);
    auto p = chain_profile(x, 4);
    CHECK(p.h == h);
    CHECK(p.g == g);
  }
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(7);
  for (int i = 0; i < 5; ++i) {
    PureSet x = decode(rng.get_z_bits(65536));  // element of S_5
    std::vector<std::uint64_t> h, g;
    walk(x, 0, h, g);
    h.resize(6, 0);
    g.resize(6, 0);
    auto p = chain_profile(x, 5);
    CHECK(p.h == h);
    CHECK(p.g == g);
  }
}

TEST_CASE("named families have closed-form profiles") {
  auto binom = [](unsigned n, unsigned k) {
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return k > n ? 0 : r;
  };
  for (unsigned k = 0; k <= 5; ++k) {
    auto m = chain_profile(matryoshka(k), k);
    auto v = chain_profile(von_neumann(k), k);
    for (unsigned n = 0; n <= k; ++n) {
      CHECK(m.h[n] == 1);
      CHECK(m.g[n] == (n == k && k >= 1 ? 1u : 0u));
      CHECK(v.h[n] == binom(k, n));
      CHECK(v.g[n] == (n >= 1 ? binom(k - 1, n - 1) : 0u));
    }
  }
}

TEST_CASE("full universe profiles") {
  // G^{(1)}(S_{k-1}) = 1, G^{(n)} = prod_{l=1}^{n-1} Z_{k-l}/2, H^{(n)} = 2 prod_{l=1}^{n} Z_{k-l}/2
  const double Z[] = {1, 2, 4, 16, 65536};
  for (unsigned k = 1; k <= 4; ++k) {
    auto p = chain_profile(decode(Z[k] - 1), k);
    CHECK(p.g[1] == 1);
    for (unsigned n = 1; n <= k; ++n) {
      double gp = 1, hp = 2;
      for (unsigned l = 1; l < n; ++l) gp *= Z[k - l] / 2;
      for (unsigned l = 1; l <= n; ++l) hp *= Z[k - l] / 2;
      CHECK(p.g[n] == static_cast<std::uint64_t>(gp));
      CHECK(p.h[n] == static_cast<std::uint64_t>(hp));
    }
  }
}

TEST_CASE("Dyck length and height track chain counts") {
  for (std::uint32_t c = 0; c < 65536; c += 101) {
    PureSet x = decode(c);
    auto p = chain_profile(x, 4);
    DyckWord w = to_dyck(x);
    CHECK(w.length() == 2 * p.h_total());
    CHECK(w.max_height() == x.depth() + 1);
  }
}

TEST_CASE("multiplicity counts chains between two sets") {
  PureSet x = decode(14), empty;
  CHECK(multiplicity(x, empty, 2) == 2);
  CHECK(multiplicity(x, empty, 3) == 2);
  CHECK(multiplicity(x, empty, 1) == 0);
  CHECK(multiplicity(x, x, 0) == 1);
  CHECK(multiplicity(x, decode(1), 1) == 1);
  CHECK(multiplicity(x, decode(1), 2) == 2);
  // summing over all targets at fixed length gives H^{(n)}
  for (unsigned n = 0; n <= 3; ++n) {
    mpz_class s = 0;
    for (std::uint32_t z = 0; z < 16; ++z) s += multiplicity(x, decode(z), n);
    CHECK(s == chain_profile(x, 3).h[n]);
    CHECK(multiplicity(x, empty, n) == chain_profile(x, 3).g[n]);
  }
}

TEST_CASE("depth guard") {
  CHECK_THROWS_AS(chain_profile(decode(4), 2), DepthError);
  CHECK_NOTHROW(chain_profile(decode(4), 7));
  auto p = chain_profile(decode(4), 7);
  CHECK(p.h.size() == 8);
  CHECK(p.h[4] == 0);
}

TEST_CASE("linear relations hold on S_k") {
  for (unsigned k = 0; k <= 4; ++k) {
    auto r = verify_linear_relations(k);
    CAPTURE(k);
    CAPTURE(r.relation);
    CHECK(r.ok);
  }
  CHECK_THROWS_AS(verify_linear_relations(5), CapacityError);
}
