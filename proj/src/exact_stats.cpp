#include "puresets/exact_stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "puresets/errors.hpp"
#include "puresets/limits.hpp"

namespace puresets {
namespace {

void require_k(int k, int upper, const char* what) {
  if (k < 0) throw DomainError(std::string(what) + ": k must be non-negative");
  if (k > upper)
    throw CapacityError("k", std::string(what) + ": k = " + std::to_string(k) + " exceeds limit " +
                                 std::to_string(upper));
}

bool fits_budget(const mpz_class& bits) {
  return cmp(bits, mpz_class(static_cast<unsigned long>(limits().max_code_bits))) <= 0;
}

mpq_class inv(const ExactScalar& x) { return (ExactScalar(1) / x).to_rational(); }

}  // namespace

ChainIndex ChainIndex::parse(const std::string& name) {
  if (name.size() < 2) throw InvalidIndex("bad chain index '" + name + "'");
  char c = static_cast<char>(std::tolower(static_cast<unsigned char>(name[0])));
  if (c != 'h' && c != 'g') throw InvalidIndex("bad chain index '" + name + "'");
  int n = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) throw InvalidIndex("bad chain index '" + name + "'");
    n = n * 10 + (name[i] - '0');
    if (n > 1000) throw InvalidIndex("chain index too large");
  }
  ChainIndex idx{c == 'h' ? ChainKind::H : ChainKind::G, n};
  idx.validate();
  return idx;
}

std::string ChainIndex::name() const { return (kind == ChainKind::H ? "H" : "G") + std::to_string(n); }

void ChainIndex::validate() const {
  if (n < 0) throw InvalidIndex("negative chain length");
  if (kind == ChainKind::G && n == 0) throw InvalidIndex("G^0 is not defined");
}

mpz_class Z_integer(int k) {
  if (k < -1) throw DomainError("Z: k < -1");
  if (k == -1) return 0;
  mpz_class prev = Z_integer(k - 1);
  if (!fits_budget(prev + 1)) throw CapacityError("k", "Z_" + std::to_string(k) + " does not fit the bit budget");
  mpz_class v = 0;
  mpz_setbit(v.get_mpz_t(), prev.get_ui());
  return v;
}

ExactScalar Z(int k) {
  if (k < -1) throw DomainError("Z: k < -1");
  if (k == -1) return {};
  require_k(k, limits().k_max, "Z");
  return ExactScalar::pow2(Z_integer(k - 1));
}

ExactScalar Ztilde(int k) {
  require_k(k, limits().k_max, "Ztilde");
  mpz_class e = -k;
  for (int l = 0; l < k; ++l) e += Z_integer(l - 1);
  return ExactScalar::pow2(e);
}

ExactScalar R_scaled(int n, int k, const mpq_class& r) {
  if (n < 0 || n > k) throw DomainError("R: need 0 <= n <= k");
  require_k(k, limits().k_max, "R");
  ExactScalar v(r);
  for (int j = n; j < k; ++j) v = (ExactScalar(1) + v) / Z(j);
  return v;
}

mpq_class R(int n, int k, const mpq_class& r) {
  require_k(k, limits().k_exact, "R");
  return R_scaled(n, k, r).to_rational();
}

ExactScalar expectation(ChainIndex i, int k) {
  i.validate();
  require_k(k, limits().k_max, "expectation");
  if (i.n > k) return {};
  if (i.kind == ChainKind::H) return Ztilde(k) / Ztilde(k - i.n);
  return Ztilde(k) / (ExactScalar(2) * Ztilde(k - i.n + 1));
}

ExactScalar covariance(ChainIndex a, ChainIndex b, int k) {
  a.validate();
  b.validate();
  ExactScalar ea = expectation(a, k), eb = expectation(b, k);
  if (ea.is_zero() || eb.is_zero()) return {};
  int lo = std::min(a.n, b.n);
  ExactScalar r;
  if (a.kind == ChainKind::H && b.kind == ChainKind::H) {
    r = R_scaled(k - lo, k, 0);
  } else if (a.kind == ChainKind::G && b.kind == ChainKind::G) {
    r = a.n == b.n ? R_scaled(k - a.n + 1, k, 1) : R_scaled(k - lo + 1, k, 0);
  } else {
    const ChainIndex& h = a.kind == ChainKind::H ? a : b;
    const ChainIndex& g = a.kind == ChainKind::H ? b : a;
    r = g.n < h.n ? R_scaled(k - g.n + 1, k, 0) : R_scaled(k - h.n, k, 0);
  }
  return ea * eb * r;
}

ExactScalar variance(ChainIndex a, int k) { return covariance(a, a, k); }

mpq_class correlation_squared(ChainIndex a, ChainIndex b, int k) {
  ExactScalar va = variance(a, k), vb = variance(b, k);
  if (va.is_zero() || vb.is_zero())
    throw DegenerateVariance("zero variance for " + (va.is_zero() ? a : b).name() + " at k = " + std::to_string(k));
  ExactScalar c = covariance(a, b, k);
  return (c * c / (va * vb)).to_rational();
}

long double correlation(ChainIndex a, ChainIndex b, int k) {
  mpq_class q = correlation_squared(a, b, k);
  long double r = std::sqrt(static_cast<long double>(q.get_d()));
  return covariance(a, b, k).sign() < 0 ? -r : r;
}

long double NormalizationParams::sd() const {
  double f;
  mpz_class e;
  variance.to_binary_float(f, e);
  if (mpz_sizeinbase(e.get_mpz_t(), 2) > 30) throw OverflowGuard("standard deviation out of long double range");
  return std::sqrt(std::ldexp(static_cast<long double>(f), static_cast<int>(e.get_si())));
}

NormalizationParams normalize_params(ChainIndex i, int k) {
  NormalizationParams p{expectation(i, k), variance(i, k)};
  if (p.variance.is_zero()) throw DegenerateVariance(i.name() + " is constant at k = " + std::to_string(k));
  return p;
}

ComboReport combo_variance_and_bound(const LinearCombination& c) {
  if (c.k < 2) throw DomainError("combination bound needs k >= 2");
  require_k(c.k, limits().k_exact, "combo_variance_and_bound");
  ComboReport rep;
  rep.s = 0;
  rep.s_abs = 0;
  for (const auto& [idx, a] : c.terms) {
    rep.s += a;
    rep.s_abs += abs(a);
  }
  const std::size_t m = c.terms.size();
  long double v = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      long double rho = i == j ? 1.0L : correlation(c.terms[i].first, c.terms[j].first, c.k);
      v += static_cast<long double>(c.terms[i].second.get_d()) * static_cast<long double>(c.terms[j].second.get_d()) *
           rho;
    }
  rep.variance = v;
  mpq_class bound = 3 * rep.s_abs * rep.s_abs * inv(Z(c.k - 2));
  rep.bound = static_cast<long double>(bound.get_d());
  long double s = static_cast<long double>(rep.s.get_d());
  rep.bound_holds = std::fabs(v - s * s) <= rep.bound;
  return rep;
}

ExactScalar raw_combo_variance(const LinearCombination& c) {
  ExactScalar v;
  for (const auto& [a, alpha] : c.terms)
    for (const auto& [b, beta] : c.terms) v += ExactScalar(alpha * beta) * covariance(a, b, c.k);
  return v;
}

mpq_class r_k_squared(int k) {
  if (k < 2) throw DomainError("r_k needs k >= 2");
  return R(2, k, 1) / (4 * R(1, k, 0));
}

CorrelationBoundReport check_correlation_bounds(int k) {
  if (k < 2) throw DomainError("correlation bounds need k >= 2");
  require_k(k, limits().k_exact, "check_correlation_bounds");
  CorrelationBoundReport rep;
  const mpq_class eps = 3 * inv(Z(k - 2));
  const mpq_class half(1, 2);
  std::vector<int> fs;
  for (int f = -k; f <= k; ++f)
    if (f < -2 || f > 0) fs.push_back(f);
  auto fail = [&](int a, int b) {
    rep.ok = false;
    if (!rep.worst_pair) rep.worst_pair = std::make_pair(a, b);
  };
  for (int a : fs) {
    for (int b : fs) {
      auto ia = ChainIndex::from_f(a), ib = ChainIndex::from_f(b);
      if (covariance(ia, ib, k).sign() < 0) {
        fail(a, b);
        continue;
      }
      mpq_class q = correlation_squared(ia, ib, k);
      mpq_class lo = 1 - eps;
      if (q > 1 || (sgn(lo) > 0 && q < lo * lo)) fail(a, b);
    }
    auto ia = ChainIndex::from_f(a), g2 = ChainIndex::G(2);
    mpq_class q = correlation_squared(ia, g2, k);
    // |rho - 1/sqrt2| <= eps  <=>  (q - 1/2 - eps^2)^2 <= 2 eps^2, on the relevant side
    mpq_class t = q - half - eps * eps;
    bool upper_ok = sgn(t) <= 0 || t * t <= 2 * eps * eps;
    bool lower_ok = eps * eps >= half || sgn(t) >= 0 || t * t <= 2 * eps * eps;
    if (!upper_ok || !lower_ok) fail(a, -2);
  }
  return rep;
}

GammaEta gamma_eta(int terms) {
  require_k(terms, limits().k_exact, "gamma_eta");
  GammaEta r{0, 0};
  for (int l = 0; l <= terms; ++l) {
    mpq_class t = inv(Ztilde(l));
    r.eta += t;
    if (l >= 1) r.gamma += t / 2;
  }
  return r;
}

mpq_class survival_probability(int j_bar, int k_terms) {
  if (j_bar < 0 || k_terms < 0) throw DomainError("survival_probability: negative argument");
  require_k(j_bar + k_terms - 1, limits().k_exact, "survival_probability");
  mpq_class p = 1;
  for (int i = j_bar; i < j_bar + k_terms; ++i) p *= 1 - inv(Z(i));
  return p;
}

TowerValue leaf_distance_count(int k, int l) {
  if (k < 0 || l < 0) throw DomainError("leaf_distance_count: negative argument");
  TowerValue t;
  if (l > k) {
    t.is_zero = true;
    t.value = mpz_class(0);
    return t;
  }
  if (l == 0) {
    t.exponent = Z_integer(k - 1);
  } else {
    TowerValue inner = leaf_distance_count(k - 1, l - 1);
    if (!inner.value)
      throw CapacityError("k", "Z_{" + std::to_string(k) + "," + std::to_string(l) + "} does not fit the bit budget");
    t.exponent = *inner.value;
    t.offset = -1;
  }
  if (fits_budget(t.exponent + 1)) {
    mpz_class v = 0;
    mpz_setbit(v.get_mpz_t(), t.exponent.get_ui());
    t.value = v + t.offset;
  }
  return t;
}

GameCounts game_counts(int k) {
  require_k(k, limits().k_exact, "game_counts");
  GameCounts g;
  g.k = k;
  mpz_class one_prev = 0, two_prev = 1;  // player one loses on {} (no move)
  if (k == 0) {
    g.two_exponent = 0;
    g.two = mpz_class(1);
    g.one = mpz_class(0);
    g.two_fraction = ExactScalar(1);
    return g;
  }
  for (int j = 1; j < k; ++j) {
    mpz_class two = 0;
    mpz_setbit(two.get_mpz_t(), one_prev.get_ui());
    mpz_class zj = Z_integer(j);
    one_prev = zj - two;
    two_prev = two;
  }
  g.two_exponent = one_prev;
  g.two_fraction = ExactScalar::pow2(-two_prev);
  if (fits_budget(one_prev + 1)) {
    mpz_class two = 0;
    mpz_setbit(two.get_mpz_t(), one_prev.get_ui());
    g.two = two;
    if (k <= 5) g.one = Z_integer(k) - two;
  }
  return g;
}

MiscClosedForms misc_closed_forms(int k) {
  require_k(k, limits().k_exact, "misc_closed_forms");
  MiscClosedForms m;
  m.k = k;
  if (k >= 2) {
    mpz_class zk2 = Z_integer(k - 2);
    mpz_class num, den;
    mpz_ui_pow_ui(num.get_mpz_t(), 3, zk2.get_ui());
    mpz_ui_pow_ui(den.get_mpz_t(), 2, zk2.get_ui() + 1);
    m.avg_element_subsets = mpq_class(num, den);
    m.avg_element_subsets->canonicalize();
  }
  for (int l = 0; l <= k; ++l) m.leaf_distance.push_back(leaf_distance_count(k, l));
  m.games = game_counts(k);
  for (int n = 0; n < k; ++n) {
    ExactScalar e = expectation(ChainIndex::H(n), k);
    ExactScalar prod(1);
    for (int j = k - n; j < k; ++j) prod *= Z(j);
    m.var_diff.push_back(e * e / prod);
  }
  return m;
}

}  // namespace puresets
