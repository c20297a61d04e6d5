#include "puresets/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "puresets/chains.hpp"
#include "puresets/deviations.hpp"
#include "puresets/enumerate.hpp"
#include "puresets/errors.hpp"
#include "puresets/exact_stats.hpp"
#include "puresets/montecarlo.hpp"
#include "puresets/pure_set.hpp"

namespace puresets {
namespace {

constexpr std::uint32_t kZ[] = {1, 2, 4, 16, 65536};

struct Ctx {
  bool ok = true;
  std::ostringstream msg;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (!ok) msg << "; ";
      else msg.str("");
      ok = false;
      msg << what;
    }
  }
  template <class T>
  void note(const T& v) {
    if (ok) msg << v;
  }
};

CheckResult run(const std::string& id, const std::string& desc, const std::function<void(Ctx&)>& body) {
  CheckResult r;
  r.id = id;
  r.description = desc;
  auto t0 = std::chrono::steady_clock::now();
  Ctx c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = c.ok;
  r.detail = c.msg.str();
  return r;
}

std::string binary(std::uint32_t c) {
  std::string s;
  for (; c; c >>= 1) s.insert(s.begin(), static_cast<char>('0' + (c & 1)));
  return s;
}

// log E[exp(a . (H0, H1, H2, G1, G2, G3))] over S_k from the profile table
double cgf_by_table(unsigned k, const std::array<double, 6>& a) {
  const auto& t = SmallProfileTable::instance();
  std::vector<long double> e;
  for (std::uint32_t c = 0; c < kZ[k]; ++c)
    e.push_back(a[0] * t.h(c, 0) + a[1] * t.h(c, 1) + a[2] * t.h(c, 2) + a[3] * t.g(c, 1) + a[4] * t.g(c, 2) +
                a[5] * t.g(c, 3));
  long double top = *std::max_element(e.begin(), e.end()), s = 0;
  for (auto v : e) s += std::exp(v - top);
  return static_cast<double>(top + std::log(s / kZ[k]));
}

}  // namespace

bool all_pass(const std::vector<CheckResult>& r) {
  return std::all_of(r.begin(), r.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<CheckResult> cross_checks(const VerifyOptions& o) {
  const unsigned K = std::min(o.k, 4u);
  std::vector<CheckResult> out;

  out.push_back(run("roundtrip", "encode/decode, braces and Dyck round trips over S_k", [&](Ctx& c) {
    for (std::uint32_t code = 0; code < kZ[K]; ++code) {
      PureSet x = decode(Code(code));
      c.expect(encode(x) == code, "encode(decode) at " + std::to_string(code));
      for (auto st : {BracesStyle::plain, BracesStyle::commas, BracesStyle::commas_empty})
        c.expect(parse_braces(print_braces(x, st)) == x, "braces at " + std::to_string(code));
      c.expect(from_dyck(to_dyck(x)) == x, "dyck at " + std::to_string(code));
      if (!c.ok) return;
    }
    c.note(std::to_string(kZ[K]) + " codes");
  }));

  out.push_back(run("chain_table", "profile table equals the recursive chain walk", [&](Ctx& c) {
    const auto& t = SmallProfileTable::instance();
    for (std::uint32_t code = 0; code < kZ[K]; ++code) {
      auto p = chain_profile(decode(Code(code)), K);
      for (unsigned n = 0; n <= K; ++n)
        c.expect(p.h[n] == t.h(code, n) && p.g[n] == t.g(code, n), "profile at " + std::to_string(code));
      if (!c.ok) return;
    }
  }));

  out.push_back(run("linear_relations", "linear and complement relations between chain counts", [&](Ctx& c) {
    for (unsigned k = 1; k <= K; ++k) {
      auto r = verify_linear_relations(k);
      c.expect(r.ok, "k=" + std::to_string(k) + " " + r.relation);
    }
  }));

  out.push_back(run("moments", "enumerated moments equal the closed forms", [&](Ctx& c) {
    for (unsigned k = 0; k <= K; ++k) {
      auto r = compare_moments_with_closed_forms(k);
      c.expect(r.ok, "k=" + std::to_string(k) + " " + r.first_mismatch);
    }
  }));

  out.push_back(run("correlation_bounds", "correlation bounds on I_k", [&](Ctx& c) {
    for (int k = 2; k <= std::max(2, static_cast<int>(o.k)) && k <= 6; ++k)
      c.expect(check_correlation_bounds(k).ok, "k=" + std::to_string(k));
  }));

  out.push_back(run("transitive", "transitive counts: both recursions and brute force", [&](Ctx& c) {
    for (unsigned k = 0; k <= K; ++k) {
      auto full = transitive_counts(k);
      c.expect(full.by_q == transitive_counts_collapsed(k).by_q, "recursions differ at k=" + std::to_string(k));
      c.expect(full.total == mpz_class(static_cast<unsigned long>(transitive_brute_force(k))),
               "brute force differs at k=" + std::to_string(k));
    }
  }));

  out.push_back(run("dkh", "D_{k;h} equals the histogram of H^{(k)}", [&](Ctx& c) {
    const auto& t = SmallProfileTable::instance();
    for (unsigned k = 0; k <= K; ++k) {
      CountPolynomial hist(1);
      for (auto code : iterate_S(k)) hist.add({t.h(code, k)}, 1);
      c.expect(*dkh_distribution(k).expanded == hist, "k=" + std::to_string(k));
    }
  }));

  out.push_back(run("chain_polynomials", "product formula equals enumeration of chain polynomials", [&](Ctx& c) {
    for (unsigned k = 0; k <= K; ++k)
      c.expect(finite_chain_polynomial(k) == finite_chain_polynomial_enumerated(k), "k=" + std::to_string(k));
    auto s = identity_tree_series(K + 1);
    auto fin = finite_chain_polynomial(K);
    for (const auto& [e, v] : s.terms())
      if (e[1] <= K + 1) c.expect(fin.coefficient(e) == v, "tree series disagrees with S_k");
  }));

  out.push_back(run("factorization", "factorization formula at random rational points", [&](Ctx& c) {
    for (unsigned k = 1; k <= std::min(K, 3u); ++k)
      for (unsigned l = 0; l <= 2; ++l) {
        auto a = random_assignment(k, l, o.seed + 7 * k + l, FactorizationWeights::full);
        c.expect(verify_factorization(k, l, a).ok, "k=" + std::to_string(k) + " l=" + std::to_string(l));
      }
    if (K >= 4) {
      auto a = random_assignment(4, 0, o.seed, FactorizationWeights::inverse_only);
      c.expect(verify_factorization(4, 0, a, FactorizationWeights::inverse_only).ok, "k=4 inverse weights");
    }
  }));

  out.push_back(run("second_shell", "second-shell multiplicities", [&](Ctx& c) {
    for (unsigned k = 2; k <= K; ++k)
      for (std::uint32_t z : {0u, 1u, kZ[k - 2] - 1}) {
        if (z >= kZ[k - 2]) continue;
        auto r = second_shell_check(k, z);
        c.expect(r.ok && r.conditional_law_ok, "k=" + std::to_string(k) + " z=" + std::to_string(z));
      }
  }));

  out.push_back(run("games", "tagged game enumeration equals the count recursion", [&](Ctx& c) {
    for (unsigned k = 0; k <= K; ++k) {
      auto g = game_tag(k);
      c.expect(mpz_class(static_cast<unsigned long>(g.second_count)) == *game_counts(static_cast<int>(k)).two,
               "k=" + std::to_string(k));
    }
  }));

  out.push_back(run("sampler_table", "bit-plane chain statistics equal the chain walk", [&](Ctx& c) {
    std::vector<ChainIndex> idx = all_indices(K);
    if (K == 0) return;
    ChainTable t(K);
    for (std::uint32_t code = 0; code < kZ[K]; ++code) {
      auto p = chain_profile(decode(Code(code)), K);
      auto v = chain_stats(from_code(K, code), t, idx);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        auto n = static_cast<std::size_t>(idx[i].n);
        c.expect(v[i] == (idx[i].kind == ChainKind::H ? p.h[n] : p.g[n]), "code " + std::to_string(code));
      }
      if (!c.ok) return;
    }
  }));

  out.push_back(run("cgf", "closed-form cumulant generating functions equal enumeration", [&](Ctx& c) {
    for (unsigned k = 2; k <= K; ++k) {
      double e = cgf_by_table(k, {0, 0.1, 0.01, 0, 0, 0});
      c.expect(std::fabs(cgf_h1_h2(0.1, 0.01, static_cast<int>(k)) - e) < 1e-10, "cgf_h1_h2 k=" + std::to_string(k));
      if (k >= 3) {
        std::array<double, 6> a{0.3, 0.1, 0.02, -0.2, 0.15, 0.05};
        c.expect(std::fabs(cgf_full(a, static_cast<int>(k)) - cgf_by_table(k, a)) < 1e-10,
                 "cgf_full k=" + std::to_string(k));
      }
    }
  }));

  out.push_back(run("diff_statistic", "extremes and sandwich for 2H^2 - Z_{k-2} H^1", [&](Ctx& c) {
    for (int k = 2; k <= static_cast<int>(K); ++k) {
      auto law = diff_distribution(k);
      auto ex = diff_extremes(k);
      c.expect(mpz_class(law.back().first) == ex.max_value, "max k=" + std::to_string(k));
      mpz_class cnt(law.back().second);
      c.expect(cnt == mpz_class(1) << static_cast<mp_bitcnt_t>(ex.attaining_log2.get_ui()),
               "attaining count k=" + std::to_string(k));
      c.expect(sandwich_check(k, {0.1, 0.25, 0.5, 1.0, 2.0}).pass, "sandwich k=" + std::to_string(k));
    }
  }));

  return out;
}

std::vector<CheckResult> acceptance_checks(const VerifyOptions& o) {
  std::vector<CheckResult> out;

  out.push_back(run("1", "depth <= 3 golden table", [&](Ctx& c) {
    const unsigned depths[] = {0, 1, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3};
    const unsigned chains[] = {1, 2, 3, 4, 4, 5, 6, 7, 5, 6, 7, 8, 8, 9, 10, 11};
    const unsigned maximal[] = {0, 1, 1, 2, 1, 2, 2, 3, 2, 3, 3, 4, 3, 4, 4, 5};
    const std::string e1 = "{}", e2 = "{{}}", e3 = "{{{}}}", e4 = "{{{}}{}}";
    const std::string elems[] = {e1, e2, e3, e4};
    for (std::uint32_t code = 0; code < 16; ++code) {
      std::string want = "{";
      for (int b = 3; b >= 0; --b)
        if (code >> b & 1u) want += elems[b];
      want += "}";
      PureSet x = decode(Code(code));
      auto p = chain_profile(x, 3);
      auto t = totals(p);
      c.expect(to_dyck(x).to_string(true).size() == 2 * t.chains, "dyck length at " + std::to_string(code));
      c.expect(print_braces(x) == want, "braces at " + std::to_string(code));
      std::uint32_t bits = 0;
      for (const auto& e : x.elements()) bits |= 1u << code_u64(e);
      c.expect(binary(bits) == binary(code), "binary at " + std::to_string(code));
      c.expect(depth(x) == depths[code], "depth at " + std::to_string(code));
      c.expect(t.chains == chains[code] && t.maximal_chains == maximal[code], "chains at " + std::to_string(code));
    }
  }));

  out.push_back(run("2", "exact moments over S_4 equal the closed forms", [&](Ctx& c) {
    auto r = compare_moments_with_closed_forms(4);
    c.expect(r.ok, r.first_mismatch);
  }));

  out.push_back(run("3", "corr^2(H1,G2) = 1/2 and corr^2(H1,H2) = Z/(Z+1), k = 2..6", [&](Ctx& c) {
    for (int k = 2; k <= 6; ++k) {
      c.expect(correlation_squared(ChainIndex::H(1), ChainIndex::G(2), k) == mpq_class(1, 2), "G2 k=" + std::to_string(k));
      mpq_class z(Z_integer(k - 2));
      c.expect(correlation_squared(ChainIndex::H(1), ChainIndex::H(2), k) == z / (z + 1), "H2 k=" + std::to_string(k));
    }
  }));

  out.push_back(run("4", "transitive counts", [&](Ctx& c) {
    const unsigned long want[] = {1, 2, 3, 6, 4131};
    for (unsigned k = 0; k <= 4; ++k) {
      c.expect(transitive_counts(k).total == want[k], "T_" + std::to_string(k));
      c.expect(transitive_counts_collapsed(k).total == want[k], "collapsed T_" + std::to_string(k));
    }
    auto d = transitive_total(5).get_str();
    c.expect(d.size() == 19724 && d[0] == '3', "T_5 has " + std::to_string(d.size()) + " digits");
  }));

  out.push_back(run("5", "D_{k;h} printed forms", [&](Ctx& c) {
    CountPolynomial z3 = CountPolynomial::constant(1, 4) * CountPolynomial::one_plus_power({1}, 2);
    CountPolynomial z4 = CountPolynomial::constant(1, 16) * CountPolynomial::one_plus_power({1}, 8) *
                         CountPolynomial::one_plus_power({2}, 4);
    c.expect(*dkh_distribution(3).expanded == z3, "k=3");
    c.expect(*dkh_distribution(4).expanded == z4, "k=4");
    const long e[] = {128, 512, 1408, 3008, 5248, 7680, 9600, 10336, 9600, 7680, 5248, 3008, 1408, 512, 128, 16};
    auto d5 = dkh_distribution(5);
    c.expect(d5.factors.size() == 17 && d5.factors[0] == std::pair<std::uint32_t, mpz_class>{0, 16}, "k=5 constant");
    for (std::uint32_t j = 1; j < d5.factors.size() && j <= 16; ++j)
      c.expect(d5.factors[j].first == j && d5.factors[j].second == e[j - 1], "k=5 factor " + std::to_string(j));
    for (unsigned k = 0; k <= 5; ++k) {
      mpz_class total = 0;
      auto d = dkh_distribution(k);
      if (d.expanded) {
        total = d.expanded->total();
      } else {
        // each (1 + u^h)^e contributes 2^e at u = 1
        mpz_class bits = 0;
        for (const auto& f : d.factors) bits += f.second;
        c.expect(bits == 65536, "k=5 total");
        continue;
      }
      c.expect(total == Z_integer(static_cast<int>(k)), "sum at k=" + std::to_string(k));
    }
  }));

  out.push_back(run("6", "gamma and eta at k = 5", [&](Ctx& c) {
    auto g = gamma_eta(5);
    mpq_class gw("25625019073486328125/10000000000000000000"), ew("6125003814697265625/1000000000000000000");
    gw.canonicalize();
    ew.canonicalize();
    c.expect(g.gamma == gw, "gamma");
    c.expect(g.eta == ew, "eta");
    for (int k = 0; k <= 6; ++k) c.expect(gamma_eta(k).eta == 2 * gamma_eta(k).gamma + 1, "eta = 2 gamma + 1");
  }));

  out.push_back(run("7", "games", [&](Ctx& c) {
    const mpq_class want[] = {1, mpq_class(1, 2), mpq_class(1, 2), mpq_class(1, 4), mpq_class(1, 16)};
    for (unsigned k = 0; k <= 4; ++k) {
      auto g = game_tag(k);
      mpq_class f(static_cast<unsigned long>(g.second_count), kZ[k]);
      f.canonicalize();
      c.expect(f == want[k], "enumeration k=" + std::to_string(k));
    }
    c.expect(game_counts(5).two_fraction == ExactScalar::pow2(-4096), "k=5");
  }));

  out.push_back(run("8", "Monte Carlo at k = 5", [&](Ctx& c) {
    ExperimentConfig cfg;
    cfg.k = 5;
    cfg.n_samples = o.mc_samples;
    cfg.seed = o.seed;
    cfg.workers = 1;
    cfg.observables = {ChainIndex::H(1), ChainIndex::H(2), ChainIndex::G(2), ChainIndex::H(3)};
    auto a = run_experiment(cfg);
    cfg.workers = std::max(4u, o.workers);
    auto b = run_experiment(cfg);
    const double N = static_cast<double>(o.mc_samples);
    const auto& h1 = a.observables[0];
    c.expect(std::fabs(h1.mean - 32768) < 5 * h1.stderr_mean, "mean H1 " + std::to_string(h1.mean));
    c.expect(std::fabs(a.pairs[0].correlation - std::sqrt(16.0 / 17)) < 5 * a.pairs[0].stderr_corr, "corr(H1,H2)");
    c.expect(std::fabs(a.pairs[1].correlation - 1 / std::sqrt(2.0)) < 5 * a.pairs[1].stderr_corr, "corr(H1,G2)");
    c.expect(std::fabs(h1.skewness) < 5 * std::sqrt(6 / N), "skewness");
    c.expect(std::fabs(h1.excess_kurtosis) < 5 * std::sqrt(24 / N), "kurtosis");
    const auto& h3 = a.observables[3];
    c.expect(h3.mean_sq_diff_h1 <= 12.0 / 16 + 5 * h3.mean_sq_diff_stderr, "mean square of H3 - H1");
    bool same = true;
    for (std::size_t i = 0; i < a.observables.size(); ++i)
      same = same && a.observables[i].mean == b.observables[i].mean &&
             a.observables[i].variance == b.observables[i].variance &&
             a.observables[i].skewness == b.observables[i].skewness &&
             a.observables[i].excess_kurtosis == b.observables[i].excess_kurtosis &&
             a.observables[i].mean_sq_diff_h1 == b.observables[i].mean_sq_diff_h1;
    for (std::size_t i = 0; i < a.pairs.size(); ++i) same = same && a.pairs[i].correlation == b.pairs[i].correlation;
    c.expect(same, "results depend on the worker count");
    std::ostringstream s;
    s << "mean " << h1.mean << " corr12 " << a.pairs[0].correlation << " corr1g2 " << a.pairs[1].correlation;
    c.note(s.str());
  }));

  out.push_back(run("9", "large deviations", [&](Ctx& c) {
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9})
      c.expect(std::fabs(binom_rate(x) - binom_rate_analytic(x)) < 1e-10, "binom_rate at " + std::to_string(x));
    const double crit = std::sqrt(2 / std::numbers::pi);
    auto near = gaussian_logcosh_rate({crit - 1e-3});
    std::ostringstream s;
    s.precision(6);
    s << "gaussian rate at sqrt(2/pi)-1e-3 is " << near.value << ", |gap to -log 2| = "
      << std::fabs(near.value + std::numbers::ln2);
    c.expect(std::fabs(near.value + std::numbers::ln2) < 1e-2, s.str());
    c.expect(gaussian_logcosh_rate({crit + 0.01}).diverged, "no divergence beyond sqrt(2/pi)");
    c.expect(sandwich_check(3, {0.1, 0.25, 0.5, 1.0}).pass, "sandwich k=3");
    c.expect(sandwich_check(4, {0.1, 0.5, 1.0}).pass, "sandwich k=4");
    auto ex = diff_extremes(4);
    auto law = diff_distribution(4);
    c.expect(ex.max_value == 12 && law.back().first == 12 && law.back().second == 64, "diff extremes at k=4");
  }));

  out.push_back(run("10", "identity-tree series and finite-k polynomials", [&](Ctx& c) {
    auto s = identity_tree_series(8);
    const long want[] = {1, 1, 1, 2, 3, 6, 12, 25};
    for (std::uint32_t h = 1; h <= 8; ++h) {
      mpz_class total = 0;
      for (const auto& [e, v] : s.terms())
        if (e[1] == h) total += v;
      c.expect(total == want[h - 1], "trees with " + std::to_string(h) + " nodes");
    }
    auto f = [](std::uint32_t g, std::uint32_t h) {
      CountPolynomial p = CountPolynomial::constant(2, 1);
      p.add({g, h}, 1);
      return p;
    };
    CountPolynomial z1 = CountPolynomial::monomial({0, 1}) * f(1, 1);
    CountPolynomial z2 = z1 * f(1, 2);
    CountPolynomial z3 = z2 * f(1, 3) * f(2, 4);
    c.expect(finite_chain_polynomial(1) == z1, "Z_1");
    c.expect(finite_chain_polynomial(2) == z2, "Z_2");
    c.expect(finite_chain_polynomial(3) == z3, "Z_3");
  }));

  out.push_back(run("11", "round trips", [&](Ctx& c) {
    for (std::uint32_t code = 0; code < 65536; ++code)
      if (encode(decode(Code(code))) != code) {
        c.expect(false, "code " + std::to_string(code));
        return;
      }
    std::mt19937_64 rng(o.seed);
    for (int i = 0; i < 10000; ++i) {
      Code code(static_cast<unsigned long>(rng() & ((1u << 20) - 1)));
      c.expect(encode(decode(code)) == code, "random code " + code.get_str());
      if (!c.ok) return;
    }
    for (std::uint32_t code = 0; code < 16; ++code) {
      PureSet x = decode(Code(code));
      for (auto st : {BracesStyle::plain, BracesStyle::commas, BracesStyle::commas_empty})
        c.expect(parse_braces(print_braces(x, st)) == x, "braces at " + std::to_string(code));
      c.expect(from_dyck(to_dyck(x)) == x, "dyck at " + std::to_string(code));
    }
  }));

  return out;
}

}  // namespace puresets
