#include "puresets/enumerate.hpp"

#include <bit>
#include <random>

#include "puresets/chains.hpp"
#include "puresets/errors.hpp"

namespace puresets {
namespace {

constexpr std::uint32_t kZ[] = {1, 2, 4, 16, 65536};

void require_small(unsigned k, unsigned upper, const char* what) {
  if (k > upper) throw CapacityError("k", std::string(what) + " enumerates S_k only for k <= " + std::to_string(upper));
}

mpq_class qpow(const mpq_class& q, std::uint64_t e) {
  if (e == 0) return 1;
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), e);
  return mpq_class(n, d);  // already canonical: coprime powers
}

struct Vars {
  std::vector<mpq_class> u, v, ub, vb;
};

mpq_class lookup(const Assignment& a, const std::string& name) {
  auto it = a.find(name);
  return it == a.end() ? mpq_class(1) : it->second;
}

Vars collect(const Assignment& a, unsigned k, unsigned l, FactorizationWeights w) {
  Vars vs;
  unsigned top = l + k + 1;
  bool plain = w == FactorizationWeights::full;
  for (unsigned j = 0; j <= top; ++j) {
    vs.u.push_back(plain ? lookup(a, "u" + std::to_string(j)) : mpq_class(1));
    vs.v.push_back(plain && j > 0 ? lookup(a, "v" + std::to_string(j)) : mpq_class(1));
    vs.ub.push_back(lookup(a, "ub" + std::to_string(j)));
    vs.vb.push_back(j > 0 ? lookup(a, "vb" + std::to_string(j)) : mpq_class(1));
  }
  return vs;
}

// W_{k,l} evaluated on the set with the given code
mpq_class weight(const Vars& vs, std::uint32_t code, unsigned k, unsigned l) {
  const auto& t = SmallProfileTable::instance();
  mpq_class w = 1;
  for (unsigned j = 0; j <= k; ++j) {
    w *= qpow(vs.u[l + j], t.h(code, j));
    w *= qpow(vs.ub[j], t.h(code, k - j));
    if (j >= 1) w *= qpow(vs.v[l + j], t.g(code, j));
    if (j < k) w *= qpow(vs.vb[j], t.g(code, k - j));
  }
  return w;
}

}  // namespace

std::uint32_t universe_size(unsigned k) {
  require_small(k, 4, "universe_size");
  return kZ[k];
}

std::ranges::iota_view<std::uint32_t, std::uint32_t> iterate_S(unsigned k) {
  return std::views::iota(std::uint32_t{0}, universe_size(k));
}

std::uint64_t chain_value(ChainIndex i, std::uint32_t code) {
  i.validate();
  if (i.n > 4) return 0;
  const auto& t = SmallProfileTable::instance();
  return i.kind == ChainKind::H ? t.h(code, i.n) : t.g(code, i.n);
}

std::vector<ChainIndex> all_indices(unsigned k) {
  std::vector<ChainIndex> v;
  for (unsigned n = 0; n <= k; ++n) v.push_back(ChainIndex::H(static_cast<int>(n)));
  for (unsigned n = 1; n <= k; ++n) v.push_back(ChainIndex::G(static_cast<int>(n)));
  return v;
}

MomentTable empirical_moments(unsigned k, const std::vector<ChainIndex>& indices) {
  require_small(k, 4, "empirical_moments");
  const std::size_t m = indices.size();
  std::vector<std::int64_t> s(m, 0);
  std::vector<std::vector<std::int64_t>> ss(m, std::vector<std::int64_t>(m, 0));
  std::vector<std::int64_t> val(m);
  for (auto c : iterate_S(k)) {
    for (std::size_t i = 0; i < m; ++i) val[i] = static_cast<std::int64_t>(chain_value(indices[i], c));
    for (std::size_t i = 0; i < m; ++i) {
      s[i] += val[i];
      for (std::size_t j = 0; j < m; ++j) ss[i][j] += val[i] * val[j];
    }
  }
  MomentTable t;
  t.k = k;
  t.indices = indices;
  const mpq_class z(kZ[k]);
  for (std::size_t i = 0; i < m; ++i) t.mean.push_back(mpq_class(static_cast<long>(s[i])) / z);
  t.cov.assign(m, std::vector<mpq_class>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) t.cov[i][j] = mpq_class(static_cast<long>(ss[i][j])) / z - t.mean[i] * t.mean[j];
  return t;
}

MomentCheck compare_moments_with_closed_forms(unsigned k) {
  auto idx = all_indices(k);
  auto t = empirical_moments(k, idx);
  MomentCheck r;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (t.mean[i] != expectation(idx[i], static_cast<int>(k)).to_rational()) {
      r.ok = false;
      r.first_mismatch = "E[" + idx[i].name() + "]";
      return r;
    }
    for (std::size_t j = 0; j < idx.size(); ++j)
      if (t.cov[i][j] != covariance(idx[i], idx[j], static_cast<int>(k)).to_rational()) {
        r.ok = false;
        r.first_mismatch = "Cov[" + idx[i].name() + "," + idx[j].name() + "]";
        return r;
      }
  }
  return r;
}

TransitiveTable transitive_counts(unsigned k) {
  require_small(k, 4, "transitive_counts");
  TransitiveTable t;
  t.k = k;
  if (k == 0) {
    t.counts[{0, 0}] = 1;
  } else {
    std::map<std::pair<unsigned, unsigned>, mpz_class> cur{{{0, 0}, 1}, {{1, 0}, 1}};
    for (unsigned level = 2; level <= k; ++level) {
      std::map<std::pair<unsigned, unsigned>, mpz_class> next;
      for (const auto& [mp, c] : cur) {
        auto [m, p] = mp;
        unsigned q = m + p;
        unsigned long avail = (1ul << q) - (1ul << p);
        for (unsigned long n = 0; n <= avail; ++n) next[{static_cast<unsigned>(n), q}] += binomial(avail, n) * c;
      }
      cur = std::move(next);
    }
    t.counts = std::move(cur);
  }
  t.total = 0;
  for (const auto& [nq, c] : t.counts) {
    t.by_q[nq.second] += c;
    t.total += c;
  }
  return t;
}

TransitiveTable transitive_counts_collapsed(unsigned k) {
  require_small(k, 5, "transitive_counts_collapsed");
  if (k <= 4) {
    auto t = transitive_counts(k);
    t.collapsed = true;
    t.counts.clear();
    return t;
  }
  auto prev = transitive_counts(k - 1);
  TransitiveTable t;
  t.k = k;
  t.collapsed = true;
  t.total = 0;
  for (const auto& [mp, c] : prev.counts) {
    auto [m, p] = mp;
    unsigned q = m + p;
    mpz_class w = 0;
    mpz_setbit(w.get_mpz_t(), (1ul << q) - (1ul << p));
    t.by_q[q] += w * c;
  }
  for (const auto& [q, c] : t.by_q) t.total += c;
  return t;
}

mpz_class transitive_total(unsigned k) { return transitive_counts_collapsed(k).total; }

std::uint64_t transitive_brute_force(unsigned k) {
  std::uint64_t count = 0;
  for (auto c : iterate_S(k)) {
    bool ok = true;
    for (std::uint32_t bits = c; bits && ok; bits &= bits - 1) {
      std::uint32_t y = static_cast<std::uint32_t>(std::countr_zero(bits));
      ok = (y & ~c) == 0;
    }
    count += ok;
  }
  return count;
}

mpz_class DkhDistribution::exponent_gcd() const {
  mpz_class g = 0;
  for (const auto& [h, e] : factors) g = gcd(g, e);
  return g;
}

DkhDistribution dkh_distribution(unsigned k) {
  require_small(k, 5, "dkh_distribution");
  DkhDistribution d;
  d.k = k;
  if (k == 0) {
    d.expanded = CountPolynomial::monomial({1});
    return d;
  }
  auto prev = dkh_distribution(k - 1);
  auto coeffs = prev.expanded->dense();
  for (std::uint32_t h = 0; h < coeffs.size(); ++h)
    if (sgn(coeffs[h]) != 0) d.factors.emplace_back(h, coeffs[h]);
  if (k <= 4) {
    CountPolynomial p = CountPolynomial::constant(1, 1);
    for (const auto& [h, e] : d.factors) p = p * CountPolynomial::one_plus_power({h}, e);
    d.expanded = std::move(p);
  }
  return d;
}

CountPolynomial identity_tree_series(unsigned max_nodes) {
  if (max_nodes > 30) throw CapacityError("max_nodes", "identity tree series is truncated at 30 nodes");
  const unsigned N = max_nodes;
  CountPolynomial out(2);
  if (N == 0) return out;
  // q[h][g]: coefficient of v^g u^h in the running product, h <= N - 1
  std::vector<std::vector<mpz_class>> q(N, std::vector<mpz_class>(N + 1, 0));
  q[0][0] = 1;
  if (N >= 2) q[1][1] = 1;  // the factor (1 + v u) for the empty element
  for (unsigned h = 1; h <= N; ++h) {
    std::vector<mpz_class> d = q[h - 1];  // trees with h nodes, by maximal-chain count
    for (unsigned g = 0; g <= N; ++g)
      if (sgn(d[g]) != 0) out.add({g, h}, d[g]);
    if (h > N - 1) break;
    for (unsigned g = 0; g <= N; ++g) {
      if (sgn(d[g]) == 0 || (g == 0 && h == 1)) continue;
      auto next = q;
      unsigned long top = (N - 1) / h;
      mpz_class c = 1;
      for (unsigned long i = 1; i <= top; ++i) {
        c = c * (d[g] - (i - 1)) / i;
        if (sgn(c) == 0) break;
        for (unsigned a = static_cast<unsigned>(i * h); a < N; ++a)
          for (unsigned b = static_cast<unsigned>(i * g); b <= N; ++b)
            if (sgn(q[a - i * h][b - i * g]) != 0) next[a][b] += c * q[a - i * h][b - i * g];
      }
      q = std::move(next);
    }
  }
  return out;
}

CountPolynomial finite_chain_polynomial(unsigned k) {
  require_small(k, 4, "finite_chain_polynomial");
  if (k == 0) return CountPolynomial::monomial({0, 1});
  std::map<std::pair<std::uint32_t, std::uint32_t>, mpz_class> hist;
  const auto& t = SmallProfileTable::instance();
  for (auto c : iterate_S(k - 1)) {
    if (c == 0) continue;
    std::uint32_t g = 0, h = 0;
    for (unsigned n = 0; n < 5; ++n) {
      g += t.g(c, n);
      h += t.h(c, n);
    }
    hist[{g, h}] += 1;
  }
  CountPolynomial p = CountPolynomial::monomial({0, 1}) * CountPolynomial::one_plus_power({1, 1}, 1);
  for (const auto& [gh, e] : hist) p = p * CountPolynomial::one_plus_power({gh.first, gh.second}, e);
  return p;
}

CountPolynomial finite_chain_polynomial_enumerated(unsigned k) {
  require_small(k, 4, "finite_chain_polynomial_enumerated");
  CountPolynomial p(2);
  const auto& t = SmallProfileTable::instance();
  for (auto c : iterate_S(k)) {
    std::uint32_t g = 0, h = 0;
    for (unsigned n = 0; n < 5; ++n) {
      g += t.g(c, n);
      h += t.h(c, n);
    }
    p.add({g, h}, 1);
  }
  return p;
}

Assignment random_assignment(unsigned k, unsigned l, std::uint64_t seed, FactorizationWeights w) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(1, 7);
  Assignment a;
  auto draw = [&] { return mpq_class(d(rng), d(rng)); };
  for (unsigned j = 0; j <= l + k + 1; ++j) {
    a["ub" + std::to_string(j)] = draw();
    if (j > 0) a["vb" + std::to_string(j)] = draw();
    if (w == FactorizationWeights::full) {
      a["u" + std::to_string(j)] = draw();
      if (j > 0) a["v" + std::to_string(j)] = draw();
    }
  }
  for (auto& [name, q] : a) q.canonicalize();
  return a;
}

FactorizationReport verify_factorization(unsigned k, unsigned l, const Assignment& a, FactorizationWeights w) {
  if (k < 1) throw DomainError("factorization needs k >= 1");
  require_small(k, w == FactorizationWeights::full ? 3 : 4, "verify_factorization");
  Vars vs = collect(a, k, l, w);
  FactorizationReport r;
  r.assignment = a;
  r.lhs = 0;
  for (auto c : iterate_S(k)) r.lhs += weight(vs, c, k, l);
  mpq_class rhs = vs.u[l] * vs.ub[k] * (1 + vs.u[l + 1] * vs.ub[k - 1] * vs.v[l + 1] * vs.vb[k - 1]);
  for (auto y : iterate_S(k - 1)) {
    if (y == 0) continue;
    rhs *= 1 + weight(vs, y, k - 1, l + 1);
  }
  r.rhs = rhs;
  r.ok = r.lhs == r.rhs;
  return r;
}

ShellReport second_shell_check(unsigned k, std::uint32_t z_code) {
  if (k < 2) throw DomainError("second shell needs k >= 2");
  require_small(k, 4, "second_shell_check");
  if (z_code >= kZ[k - 2]) throw DomainError("z must lie in S_{k-2}");
  const std::uint32_t zk1 = kZ[k - 1];
  std::uint32_t mask = 0;
  for (std::uint32_t y = 0; y < zk1; ++y)
    if (y >> z_code & 1u) mask |= 1u << y;
  ShellReport r;
  r.k = k;
  r.z = z_code;
  const unsigned half = zk1 / 2;
  r.enumerated.assign(half + 1, 0);
  std::vector<std::vector<std::uint64_t>> joint(zk1 + 1, std::vector<std::uint64_t>(half + 1, 0));
  for (auto c : iterate_S(k)) {
    unsigned j = static_cast<unsigned>(std::popcount(c & mask));
    unsigned i = static_cast<unsigned>(std::popcount(c));
    r.enumerated[j] += 1;
    joint[i][j] += 1;
  }
  mpz_class pre = 0;
  mpz_setbit(pre.get_mpz_t(), half);
  for (unsigned j = 0; j <= half; ++j) r.expected.push_back(pre * binomial(half, j));
  r.conditional_law_ok = true;
  for (unsigned i = 0; i <= zk1; ++i)
    for (unsigned j = 0; j <= half; ++j) {
      mpz_class want = j <= i ? binomial(half, j) * binomial(half, i - j) : mpz_class(0);
      if (want != joint[i][j]) r.conditional_law_ok = false;
    }
  r.ok = r.enumerated == r.expected && r.conditional_law_ok;
  return r;
}

GameReport game_tag(unsigned k) {
  require_small(k, 4, "game_tag");
  GameReport g;
  g.k = k;
  g.second_player_wins.assign(kZ[k], false);
  for (auto c : iterate_S(k)) {
    bool all_first = true;
    for (std::uint32_t bits = c; bits; bits &= bits - 1) {
      auto y = static_cast<std::uint32_t>(std::countr_zero(bits));
      if (g.second_player_wins[y]) {
        all_first = false;
        break;
      }
    }
    g.second_player_wins[c] = all_first;
    (all_first ? g.second_count : g.first_count) += 1;
  }
  return g;
}

}  // namespace puresets
