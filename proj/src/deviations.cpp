#include "puresets/deviations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "puresets/chains.hpp"
#include "puresets/errors.hpp"

namespace puresets {
namespace {

constexpr double kLog2 = std::numbers::ln2;
const double kCrit = std::sqrt(2.0 / std::numbers::pi);

// Z_{k-2} for k = 2..6
unsigned long z_km2(int k) {
  static constexpr unsigned long z[] = {1, 2, 4, 16, 65536};
  return z[k - 2];
}

double log_cosh(double t) {
  t = std::fabs(t);
  return t + std::log1p(std::exp(-2 * t)) - kLog2;
}

// log((1 + e^t) / 2)
double softplus_m_log2(double t) {
  if (t <= 0) return std::log1p(std::expm1(t) / 2);
  return t + std::log1p(std::expm1(-t) / 2);
}

double log_binom(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

// Binomial(n, 1/2) probabilities.
std::vector<double> half_binomial(unsigned long n) {
  std::vector<double> p(n + 1);
  for (unsigned long l = 0; l <= n; ++l)
    p[l] = std::exp(log_binom(static_cast<double>(n), static_cast<double>(l)) - static_cast<double>(n) * kLog2);
  return p;
}

struct Rule {
  std::vector<double> x, w;
};

// Golub-Welsch for a symmetric Jacobi matrix with zero diagonal.
Rule golub_welsch(const Eigen::VectorXd& off, double mass) {
  const auto n = off.size() + 1;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw NonConvergence("Golub-Welsch eigen-decomposition failed");
  Rule r;
  r.x.resize(static_cast<std::size_t>(n));
  r.w.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    r.x[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    r.w[static_cast<std::size_t>(i)] = mass * v * v;
  }
  // enforce the symmetry of the weight function
  for (std::size_t i = 0, j = r.x.size() - 1; i < j; ++i, --j) {
    double a = (r.x[j] - r.x[i]) / 2, b = (r.w[i] + r.w[j]) / 2;
    r.x[i] = -a;
    r.x[j] = a;
    r.w[i] = r.w[j] = b;
  }
  if (r.x.size() % 2) r.x[r.x.size() / 2] = 0;
  return r;
}

const Rule& gauss_legendre20() {
  static const Rule r = [] {
    Eigen::VectorXd off(19);
    for (int i = 1; i <= 19; ++i) off(i - 1) = i / std::sqrt(4.0 * i * i - 1);
    return golub_welsch(off, 2.0);
  }();
  return r;
}

// int_0^T f(t) dt with panels of width <= h
template <class F>
double composite(F f, double T, double h) {
  const Rule& gl = gauss_legendre20();
  auto panels = static_cast<long>(std::ceil(T / h));
  double width = T / static_cast<double>(panels), s = 0;
  for (long p = 0; p < panels; ++p) {
    double a = static_cast<double>(p) * width, mid = a + width / 2, part = 0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) part += gl.w[i] * f(mid + gl.x[i] * width / 2);
    s += part * width / 2;
  }
  return s;
}

double phi(double x) { return std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi); }

// Gauss-Hermite is accurate while the nearest pole of log cosh(lambda u) stays far enough.
double gh_limit(std::size_t nodes) { return std::numbers::pi * std::sqrt(2.0 * static_cast<double>(nodes)) / 45; }

double slope_hybrid(double u, std::size_t nodes) {
  return u <= gh_limit(nodes) ? gaussian_logcosh_slope(u, nodes) : gaussian_logcosh_slope_split(u);
}
double value_hybrid(double u, std::size_t nodes) {
  return u <= gh_limit(nodes) ? gaussian_logcosh(u, nodes) : gaussian_logcosh_split(u);
}

// Smallest root of the increasing map slope(u) = x on [0, max_u].
template <class Slope>
double solve_dual(Slope slope, double x, double max_u, double tol) {
  double lo = 0, hi = 1;
  while (slope(hi) < x) {
    lo = hi;
    hi *= 2;
    if (hi > max_u) {
      hi = max_u;
      if (slope(hi) < x) throw NonConvergence("dual equation has no root below max_u");
      break;
    }
  }
  for (int it = 0; it < 300 && hi - lo > tol * std::max(1.0, hi); ++it) {
    double mid = (lo + hi) / 2;
    (slope(mid) < x ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace

double cgf_h1_h2(double u1, double u2, int k) {
  if (k < 2 || k > 6) throw DomainError("cgf_h1_h2 needs 2 <= k <= 6");
  const unsigned long n = z_km2(k);
  if (k <= 5) {
    double s = 0;
    for (unsigned long l = 0; l <= n; ++l) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), n, l);
      s += b.get_d() * softplus_m_log2(u1 + static_cast<double>(l) * u2);
    }
    return s;
  }
  auto p = half_binomial(n);
  double mean = 0;
  for (unsigned long l = 0; l <= n; ++l) mean += p[l] * softplus_m_log2(u1 + static_cast<double>(l) * u2);
  if (mean == 0) return 0;
  throw OverflowGuard("cgf_h1_h2 at k=6 is Z_5 * " + std::to_string(mean) + ", beyond double range");
}

double cgf_full(const std::array<double, 6>& a, int k) {
  if (k < 3 || k > 6) throw DomainError("cgf_full needs 3 <= k <= 6");
  const double u0 = a[0], u1 = a[1], u2 = a[2], v1 = a[3], v2 = a[4], v3 = a[5];
  if (k == 6) {
    if (u1 == 0 && u2 == 0 && v1 == 0 && v2 == 0 && v3 == 0) return u0;
    throw OverflowGuard("cgf_full at k=6 exceeds double range");
  }
  const long h = static_cast<long>(z_km2(k) / 2);
  auto binom = [](long n, long r) -> double {
    if (r < 0 || r > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return b.get_d();
  };
  double s = softplus_m_log2(u1 + v1);
  for (long i = 0; i <= 2 * h; ++i)
    for (long j = 0; j <= h; ++j) {
      double bj = binom(h, j);
      if (i != 0 || j != 0) {
        double w = binom(h - 1, i - j) * bj;
        if (w != 0) s += w * softplus_m_log2(u1 + static_cast<double>(i) * u2 + static_cast<double>(j) * v3);
      }
      double w2 = binom(h - 1, i - j - 1) * bj;
      if (w2 != 0) s += w2 * softplus_m_log2(u1 + static_cast<double>(i) * u2 + v2 + static_cast<double>(j) * v3);
    }
  return u0 + s;
}

double binom_rate(double x) {
  if (!(x >= 0 && x <= 1)) throw DomainError("binom_rate needs 0 <= x <= 1");
  if (x == 0) return 0;
  if (x == 1) return -2 * kLog2;
  double u = solve_dual([](double v) { return std::tanh(v / 2); }, x, 1e3, 1e-16);
  return 2 * log_cosh(u / 2) - u * x;
}

double binom_rate_analytic(double x) {
  if (!(x >= 0 && x <= 1)) throw DomainError("binom_rate needs 0 <= x <= 1");
  if (x == 1) return -2 * kLog2;
  return -(1 + x) * std::log1p(x) - (1 - x) * std::log1p(-x);
}

const GaussHermiteRule& gauss_hermite(std::size_t n) {
  if (n < 2) throw DomainError("Gauss-Hermite needs at least 2 nodes");
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    Eigen::VectorXd off(static_cast<Eigen::Index>(n - 1));
    for (std::size_t i = 1; i < n; ++i) off(static_cast<Eigen::Index>(i - 1)) = std::sqrt(static_cast<double>(i));
    Rule r = golub_welsch(off, 1.0);
    slot = std::make_unique<GaussHermiteRule>(GaussHermiteRule{std::move(r.x), std::move(r.w)});
  }
  return *slot;
}

double gaussian_logcosh(double u, std::size_t nodes) {
  const auto& r = gauss_hermite(nodes);
  double s = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * log_cosh(r.nodes[i] * u);
  return s;
}

double gaussian_logcosh_slope(double u, std::size_t nodes) {
  const auto& r = gauss_hermite(nodes);
  double s = 0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * r.nodes[i] * std::tanh(r.nodes[i] * u);
  return s;
}

double gaussian_logcosh_split(double u) {
  if (!(u > 0)) throw DomainError("split form needs u > 0");
  double T = std::min(25.0, 40 * u), h = std::min(0.5, u / 4);
  double rem = composite([u](double t) { return phi(t / u) * std::log1p(std::exp(-2 * t)); }, T, h);
  return u * kCrit - kLog2 + 2 * rem / u;
}

double gaussian_logcosh_slope_split(double u) {
  if (!(u > 0)) throw DomainError("split form needs u > 0");
  double T = std::min(25.0, 40 * u), h = std::min(0.5, u / 4);
  double rem = composite(
      [u](double t) {
        double e = std::exp(-2 * t);
        return phi(t / u) * t * 2 * e / (1 + e);
      },
      T, h);
  return kCrit - 2 * rem / (u * u);
}

RateResult gaussian_logcosh_rate(const RateQuery& q) {
  if (!(q.x >= 0)) throw DomainError("gaussian_logcosh_rate needs x >= 0");
  if (!(q.tolerance > 0)) throw DomainError("tolerance must be positive");
  if (q.nodes < 64) throw DomainError("at least 64 Gauss-Hermite nodes are required");
  RateResult r;
  if (q.x == 0) {
    r.u_star = 0.0;
    return r;
  }
  if (std::fabs(q.x - kCrit) <= 1e-15) {
    r.value = -kLog2;
    return r;
  }
  if (q.x > kCrit) {
    r.value = -kLog2;
    r.diverged = true;
    return r;
  }
  double u = solve_dual([&](double v) { return slope_hybrid(v, q.nodes); }, q.x, q.max_u, q.tolerance);
  r.u_star = u;
  r.value = value_hybrid(u, q.nodes) - u * q.x;
  return r;
}

DiffExtremes diff_extremes(int k) {
  if (k < 2 || k > 6) throw CapacityError("k", "diff_extremes needs 2 <= k <= 6");
  const unsigned long n = z_km2(k);
  DiffExtremes d;
  d.k = k;
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n - 1, (n - 1) / 2);
  d.max_value = mpz_class(n) * c;
  mpz_class zk1 = mpz_class(1) << static_cast<mp_bitcnt_t>(n);
  if (k == 2) {
    d.prob_log2 = -zk1;
  } else {
    mpz_class mid;
    mpz_bin_uiui(mid.get_mpz_t(), n, n / 2);
    d.prob_log2 = mid - zk1;
  }
  d.attaining_log2 = d.prob_log2 + zk1;
  long e = 0;
  double m = mpz_get_d_2exp(&e, d.max_value.get_mpz_t());
  double log2_max = std::log2(m) + static_cast<double>(e);
  double log2_ref = static_cast<double>(n) + std::log2(static_cast<double>(n)) -
                    0.5 * std::log2(2 * std::numbers::pi * static_cast<double>(n));
  d.asymptotic_ratio = std::exp2(log2_max - log2_ref);
  return d;
}

RateResult finite_k_diff_rate(double x, int k) {
  if (k < 2 || k > 6) throw DomainError("finite_k_diff_rate needs 2 <= k <= 6");
  const unsigned long n = z_km2(k);
  auto p = half_binomial(n);
  std::vector<double> lam(n + 1);
  double xmax = 0;
  for (unsigned long l = 0; l <= n; ++l) {
    lam[l] = (2.0 * static_cast<double>(l) - static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
    xmax += p[l] * std::fabs(lam[l]);
  }
  RateResult r;
  if (x <= 0) {
    r.u_star = 0.0;
    return r;
  }
  double p_mid = n % 2 == 0 ? p[n / 2] : 0.0;
  if (x >= xmax) {
    r.value = -kLog2 * (1 - p_mid);
    r.diverged = x > xmax * (1 + 1e-14);
    return r;
  }
  auto slope = [&](double u) {
    double s = 0;
    for (unsigned long l = 0; l <= n; ++l) s += p[l] * lam[l] * std::tanh(lam[l] * u);
    return s;
  };
  double u = solve_dual(slope, x, 1e6, 1e-14);
  double v = 0;
  for (unsigned long l = 0; l <= n; ++l) v += p[l] * log_cosh(lam[l] * u);
  r.u_star = u;
  r.value = v - u * x;
  return r;
}

double finite_diff_log_bound(double x, int k) {
  RateResult r = finite_k_diff_rate(x, k);
  if (r.diverged) return -std::numeric_limits<double>::infinity();
  return std::ldexp(r.value, static_cast<int>(z_km2(k)));
}

std::vector<std::pair<long, unsigned long>> diff_distribution(int k) {
  if (k < 2 || k > 4) throw DomainError("diff_distribution needs 2 <= k <= 4");
  static constexpr std::uint32_t zk[] = {1, 2, 4, 16, 65536};
  const auto& t = SmallProfileTable::instance();
  std::map<long, unsigned long> hist;
  const long n = static_cast<long>(z_km2(k));
  for (std::uint32_t c = 0; c < zk[k]; ++c) hist[2L * t.h(c, 2) - n * t.h(c, 1)]++;
  return {hist.begin(), hist.end()};
}

SandwichReport sandwich_check(int k, const std::vector<double>& u_grid) {
  if (k < 2 || k > 4) throw DomainError("sandwich_check needs 2 <= k <= 4");
  auto law = diff_distribution(k);
  const double n = static_cast<double>(z_km2(k)), zk1 = std::exp2(n);
  const double coef = (3 * n - 2) / (zk1 * n);
  SandwichReport rep;
  rep.k = k;
  rep.pass = true;
  for (double u : u_grid) {
    double c = 2 * u / std::sqrt(zk1 * n);
    long double top = -std::numeric_limits<long double>::infinity();
    for (auto [d, cnt] : law) top = std::max(top, static_cast<long double>(c) * d);
    long double s = 0, total = 0;
    for (auto [d, cnt] : law) {
      s += static_cast<long double>(cnt) * std::exp(static_cast<long double>(c) * d - top);
      total += static_cast<long double>(cnt);
    }
    SandwichRow row;
    row.u = u;
    row.value = static_cast<double>(top + std::log(s / total)) - u * u / 2;
    double u4 = u * u * u * u;
    row.lower = -coef * u4 / 12;
    row.upper = coef * u4 / 36;
    double eps = 1e-14 * (1 + u * u);
    double margin = std::min(row.value - row.lower, row.upper - row.value);
    if (!rep.worst_u || margin < rep.worst_margin) {
      rep.worst_u = u;
      rep.worst_margin = margin;
    }
    if (margin < -eps) rep.pass = false;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace puresets
