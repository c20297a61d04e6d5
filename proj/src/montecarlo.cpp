#include "puresets/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <thread>

#include "puresets/chains.hpp"
#include "puresets/deviations.hpp"
#include "puresets/errors.hpp"

namespace puresets {
namespace {

constexpr std::uint32_t kZ[] = {1, 2, 4, 16, 65536};
constexpr std::uint64_t kBlock = 256;

using u128 = unsigned __int128;

mpz_class to_mpz(u128 v) {
  mpz_class hi(static_cast<unsigned long>(v >> 64)), lo(static_cast<unsigned long>(v));
  return (hi << 64) + lo;
}

void require_k(unsigned k) {
  if (k < 1 || k > 5) throw DomainError("sampling needs 1 <= k <= 5");
}

// Runs fn(block_index) for every block on `workers` threads.
template <class Fn>
void for_blocks(std::uint64_t blocks, unsigned workers, Fn fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(blocks, 1))));
  std::atomic<std::uint64_t> next{0};
  auto run = [&] {
    for (std::uint64_t b; (b = next.fetch_add(1)) < blocks;) fn(b);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

struct Accum {
  std::uint64_t n = 0;
  std::vector<u128> s1, s2, s3, s4;
  std::vector<std::vector<u128>> cross;
  std::vector<double> max_diff, sd2, sd4;

  explicit Accum(std::size_t m = 0)
      : s1(m, 0), s2(m, 0), s3(m, 0), s4(m, 0), cross(m, std::vector<u128>(m, 0)), max_diff(m, 0), sd2(m, 0), sd4(m, 0) {}

  void merge(const Accum& o) {
    n += o.n;
    for (std::size_t i = 0; i < s1.size(); ++i) {
      s1[i] += o.s1[i];
      s2[i] += o.s2[i];
      s3[i] += o.s3[i];
      s4[i] += o.s4[i];
      for (std::size_t j = 0; j < s1.size(); ++j) cross[i][j] += o.cross[i][j];
      max_diff[i] = std::max(max_diff[i], o.max_diff[i]);
      sd2[i] += o.sd2[i];
      sd4[i] += o.sd4[i];
    }
  }
};

double q2d(const mpq_class& q) { return q.get_d(); }

}  // namespace

std::array<std::uint64_t, 2> philox2x64(std::array<std::uint64_t, 2> ctr, std::uint64_t key) {
  constexpr std::uint64_t M = 0xD2B74407B1CE6E93ull, W = 0x9E3779B97F4A7C15ull;
  for (int r = 0; r < 10; ++r) {
    if (r > 0) key += W;
    u128 p = static_cast<u128>(M) * ctr[0];
    auto hi = static_cast<std::uint64_t>(p >> 64), lo = static_cast<std::uint64_t>(p);
    ctr = {hi ^ key ^ ctr[1], lo};
  }
  return ctr;
}

std::uint64_t BitSample::popcount() const {
  std::uint64_t c = 0;
  for (auto w : words) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

BitSample sample(unsigned k, StreamKey key) {
  require_k(k);
  BitSample s;
  s.k = k;
  s.length = kZ[k - 1];
  std::size_t nw = (s.length + 63) / 64;
  s.words.resize(nw);
  for (std::size_t j = 0; j < nw; j += 2) {
    auto r = philox2x64({key.index, j / 2}, key.seed);
    s.words[j] = r[0];
    if (j + 1 < nw) s.words[j + 1] = r[1];
  }
  if (s.length < 64) s.words[0] &= (std::uint64_t{1} << s.length) - 1;
  return s;
}

BitSample from_code(unsigned k, std::uint32_t code) {
  if (k < 1 || k > 4) throw DomainError("from_code needs 1 <= k <= 4");
  if (code >= kZ[k]) throw DomainError("code outside S_k");
  BitSample s;
  s.k = k;
  s.length = kZ[k - 1];
  s.words.assign((s.length + 63) / 64, 0);
  s.words[0] = code;
  return s;
}

ChainTable::ChainTable(unsigned k) : k_(k) {
  require_k(k);
  const auto& t = SmallProfileTable::instance();
  const std::uint32_t len = kZ[k - 1];
  const std::size_t nw = (len + 63) / 64;
  auto build = [&](auto f) {
    Column c;
    c.values.resize(len);
    std::uint32_t top = 0;
    for (std::uint32_t m = 0; m < len; ++m) top = std::max(top, c.values[m] = f(m));
    int bits = std::bit_width(top);
    c.planes.assign(static_cast<std::size_t>(bits), std::vector<std::uint64_t>(nw, 0));
    for (std::uint32_t m = 0; m < len; ++m)
      for (int b = 0; b < bits; ++b)
        if (c.values[m] >> b & 1u) c.planes[static_cast<std::size_t>(b)][m >> 6] |= std::uint64_t{1} << (m & 63);
    return c;
  };
  for (unsigned n = 0; n <= k; ++n) {
    if (n == 0) {
      h_cols_.push_back({});
      g_cols_.push_back({});
      continue;
    }
    h_cols_.push_back(build([&](std::uint32_t m) -> std::uint32_t { return t.h(m, n - 1); }));
    g_cols_.push_back(build([&](std::uint32_t m) -> std::uint32_t {
      return n == 1 ? (m == 0 ? 1u : 0u) : t.g(m, n - 1);
    }));
  }
}

const ChainTable::Column& ChainTable::column(ChainIndex obs) const {
  obs.validate();
  return obs.kind == ChainKind::H ? h_cols_[static_cast<std::size_t>(obs.n)] : g_cols_[static_cast<std::size_t>(obs.n)];
}

std::uint64_t ChainTable::value(ChainIndex obs, const BitSample& s) const {
  if (s.k != k_) throw DomainError("sample level does not match the table");
  obs.validate();
  if (obs.n > static_cast<int>(k_)) return 0;
  if (obs.kind == ChainKind::H && obs.n == 0) return 1;
  const auto& c = column(obs);
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < c.planes.size(); ++b) {
    const auto& p = c.planes[b];
    std::uint64_t cnt = 0;
    for (std::size_t w = 0; w < p.size(); ++w) cnt += static_cast<std::uint64_t>(std::popcount(s.words[w] & p[w]));
    v += cnt << b;
  }
  return v;
}

std::uint64_t ChainTable::value_reference(ChainIndex obs, const BitSample& s) const {
  obs.validate();
  if (obs.n > static_cast<int>(k_)) return 0;
  if (obs.kind == ChainKind::H && obs.n == 0) return 1;
  const auto& c = column(obs);
  std::uint64_t v = 0;
  for (std::uint64_t m = 0; m < s.length; ++m)
    if (s.test(m)) v += c.values[m];
  return v;
}

std::vector<std::uint64_t> chain_stats(const BitSample& s, const ChainTable& t, std::span<const ChainIndex> obs) {
  std::vector<std::uint64_t> out;
  out.reserve(obs.size());
  for (const auto& o : obs) out.push_back(t.value(o, s));
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& c) {
  require_k(c.k);
  if (c.n_samples < 2) throw DomainError("need at least two samples");
  if (c.observables.empty()) throw DomainError("no observables requested");
  const int k = static_cast<int>(c.k);
  // H^1 is always tracked (last slot) for the normalized differences.
  std::vector<ChainIndex> obs = c.observables;
  obs.push_back(ChainIndex::H(1));
  const std::size_t m = obs.size();
  std::vector<NormalizationParams> norm;
  std::vector<long double> mu(m), sd(m);
  for (std::size_t i = 0; i < m; ++i) {
    norm.push_back(normalize_params(obs[i], k));
    mu[i] = static_cast<long double>(norm[i].mean.to_double());
    sd[i] = norm[i].sd();
  }
  ChainTable table(c.k);
  const std::uint64_t blocks = (c.n_samples + kBlock - 1) / kBlock;
  std::vector<Accum> parts(blocks, Accum(m));
  for_blocks(blocks, c.workers, [&](std::uint64_t b) {
    Accum& a = parts[b];
    std::vector<std::uint64_t> v(m);
    const std::uint64_t end = std::min(c.n_samples, (b + 1) * kBlock);
    for (std::uint64_t idx = b * kBlock; idx < end; ++idx) {
      BitSample s = sample(c.k, {c.seed, idx});
      for (std::size_t i = 0; i < m; ++i) v[i] = table.value(obs[i], s);
      a.n += 1;
      for (std::size_t i = 0; i < m; ++i) {
        u128 x = v[i];
        a.s1[i] += x;
        a.s2[i] += x * x;
        a.s3[i] += x * x * x;
        a.s4[i] += x * x * x * x;
        for (std::size_t j = 0; j < m; ++j) a.cross[i][j] += x * static_cast<u128>(v[j]);
      }
      long double z1 = (static_cast<long double>(v[m - 1]) - mu[m - 1]) / sd[m - 1];
      for (std::size_t i = 0; i + 1 < m; ++i) {
        if (obs[i].kind != ChainKind::H) continue;
        long double d = (static_cast<long double>(v[i]) - mu[i]) / sd[i] - z1;
        double dd = static_cast<double>(d);
        a.max_diff[i] = std::max(a.max_diff[i], std::fabs(dd));
        a.sd2[i] += dd * dd;
        a.sd4[i] += dd * dd * dd * dd;
      }
    }
  });
  Accum tot(m);
  for (const auto& p : parts) tot.merge(p);

  ExperimentReport rep;
  rep.config = c;
  const mpq_class N(static_cast<unsigned long>(tot.n));
  const double Nd = static_cast<double>(tot.n);
  std::vector<mpq_class> mean(m), var(m);
  for (std::size_t i = 0; i < m; ++i) {
    mean[i] = mpq_class(to_mpz(tot.s1[i])) / N;
    var[i] = (mpq_class(to_mpz(tot.s2[i])) - N * mean[i] * mean[i]) / (N - 1);
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    ObservableSummary o;
    o.obs = obs[i];
    o.mean = q2d(mean[i]);
    o.variance = q2d(var[i]);
    o.stderr_mean = std::sqrt(o.variance / Nd);
    mpq_class mu_q = norm[i].mean.to_rational();
    mpq_class s1(to_mpz(tot.s1[i])), s2(to_mpz(tot.s2[i])), s3(to_mpz(tot.s3[i])), s4(to_mpz(tot.s4[i]));
    mpq_class c3 = s3 - 3 * mu_q * s2 + 3 * mu_q * mu_q * s1 - N * mu_q * mu_q * mu_q;
    mpq_class c4 = s4 - 4 * mu_q * s3 + 6 * mu_q * mu_q * s2 - 4 * mu_q * mu_q * mu_q * s1 + N * mu_q * mu_q * mu_q * mu_q;
    mpq_class v_exact = norm[i].variance.to_rational();
    o.exact_mean = q2d(mu_q);
    o.exact_variance = q2d(v_exact);
    double sdv = std::sqrt(o.exact_variance);
    o.skewness = q2d(c3 / N) / (sdv * sdv * sdv);
    o.excess_kurtosis = q2d(c4 / (N * v_exact * v_exact)) - 3.0;
    if (obs[i].kind == ChainKind::H) {
      o.max_abs_diff_h1 = tot.max_diff[i];
      o.mean_sq_diff_h1 = tot.sd2[i] / Nd;
      double var_d2 = tot.sd4[i] / Nd - o.mean_sq_diff_h1 * o.mean_sq_diff_h1;
      o.mean_sq_diff_stderr = std::sqrt(std::max(var_d2, 0.0) / Nd);
    }
    rep.observables.push_back(o);
  }
  const std::size_t req = c.observables.size();
  for (std::size_t i = 0; i < req; ++i)
    for (std::size_t j = i + 1; j < req; ++j) {
      mpq_class cov = (mpq_class(to_mpz(tot.cross[i][j])) - N * mean[i] * mean[j]) / (N - 1);
      PairSummary p;
      p.a = obs[i];
      p.b = obs[j];
      p.correlation = q2d(cov) / std::sqrt(q2d(var[i]) * q2d(var[j]));
      p.stderr_corr = (1 - p.correlation * p.correlation) / std::sqrt(Nd);
      p.exact = static_cast<double>(correlation(obs[i], obs[j], k));
      rep.pairs.push_back(p);
    }
  return rep;
}

TailReport tail_scan(const TailConfig& c) {
  require_k(c.k);
  if (c.k < 2) throw DomainError("tail scan needs k >= 2");
  const std::uint64_t zk1 = kZ[c.k - 1], zk2 = kZ[c.k - 2];
  ChainTable table(c.k);
  const std::size_t nt = c.thresholds.size();
  const double m1 = static_cast<double>(zk1) / 2;
  std::vector<double> h_cut(nt), d_cut(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    h_cut[i] = m1 + c.thresholds[i] * m1;
    d_cut[i] = c.thresholds[i] * static_cast<double>(zk1) * std::sqrt(static_cast<double>(zk2)) / 2;
  }
  const std::uint64_t blocks = (c.n_samples + kBlock - 1) / kBlock;
  struct Part {
    std::vector<std::uint64_t> h, d;
    std::int64_t max_d = std::numeric_limits<std::int64_t>::min();
  };
  std::vector<Part> parts(blocks, Part{std::vector<std::uint64_t>(nt, 0), std::vector<std::uint64_t>(nt, 0)});
  for_blocks(blocks, c.workers, [&](std::uint64_t b) {
    Part& p = parts[b];
    const std::uint64_t end = std::min(c.n_samples, (b + 1) * kBlock);
    for (std::uint64_t idx = b * kBlock; idx < end; ++idx) {
      BitSample s = sample(c.k, {c.seed, idx});
      auto h1 = static_cast<std::int64_t>(table.value(ChainIndex::H(1), s));
      auto h2 = static_cast<std::int64_t>(table.value(ChainIndex::H(2), s));
      std::int64_t d = 2 * h2 - static_cast<std::int64_t>(zk2) * h1;
      p.max_d = std::max(p.max_d, d);
      for (std::size_t i = 0; i < nt; ++i) {
        p.h[i] += static_cast<double>(h1) >= h_cut[i];
        p.d[i] += static_cast<double>(d) >= d_cut[i];
      }
    }
  });
  TailReport rep;
  rep.config = c;
  rep.max_diff_observed = std::numeric_limits<std::int64_t>::min();
  rep.max_diff_possible = diff_extremes(static_cast<int>(c.k)).max_value;
  std::vector<std::uint64_t> h(nt, 0), d(nt, 0);
  for (const auto& p : parts) {
    rep.max_diff_observed = std::max(rep.max_diff_observed, p.max_d);
    for (std::size_t i = 0; i < nt; ++i) {
      h[i] += p.h[i];
      d[i] += p.d[i];
    }
  }
  const double N = static_cast<double>(c.n_samples);
  auto allowed = [&](double log_p) {
    double p = std::exp(std::min(log_p, 0.0));
    return N * p + 5 * std::sqrt(N * p * (1 - p)) + 1;
  };
  for (std::size_t i = 0; i < nt; ++i) {
    TailRow r;
    r.x = c.thresholds[i];
    r.hits_h1 = h[i];
    r.hits_diff = d[i];
    r.log_bound_h1 = r.x >= 0 ? m1 * binom_rate(std::min(r.x, 1.0)) : 0.0;
    if (r.x > 1) r.log_bound_h1 = -std::numeric_limits<double>::infinity();
    r.log_bound_diff = r.x >= 0 ? finite_diff_log_bound(r.x, static_cast<int>(c.k)) : 0.0;
    r.within_bounds = static_cast<double>(r.hits_h1) <= allowed(r.log_bound_h1) &&
                      static_cast<double>(r.hits_diff) <= allowed(r.log_bound_diff);
    rep.rows.push_back(r);
  }
  return rep;
}

}  // namespace puresets
