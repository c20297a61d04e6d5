#include "puresets/chains.hpp"

#include <map>
#include <numeric>

#include "puresets/errors.hpp"

namespace puresets {
namespace {

std::uint64_t add_checked(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowGuard("chain count exceeds 64 bits");
  return r;
}

constexpr std::uint32_t kTableSize = 65536;

// Profiles truncated to `len` entries; recursion bottoms out in the table.
void profile_into(const PureSet& x, unsigned len, std::vector<std::uint64_t>& h, std::vector<std::uint64_t>& g) {
  h.assign(len, 0);
  g.assign(len, 0);
  const auto& c = x.code();
  if (c < kTableSize && len <= 5) {
    const auto& t = SmallProfileTable::instance();
    auto v = static_cast<std::uint32_t>(c.get_ui());
    for (unsigned n = 0; n < len; ++n) {
      h[n] = t.h(v, n);
      g[n] = t.g(v, n);
    }
    return;
  }
  h[0] = 1;
  std::vector<std::uint64_t> hy, gy;
  for (const auto& y : x.elements()) {
    if (y.empty() && len > 1) g[1] = 1;
    if (len < 2) break;
    profile_into(y, len - 1, hy, gy);
    for (unsigned n = 1; n < len; ++n) {
      h[n] = add_checked(h[n], hy[n - 1]);
      g[n] = add_checked(g[n], gy[n - 1]);
    }
  }
}

}  // namespace

SmallProfileTable::SmallProfileTable() : h_(kTableSize * 5, 0), g_(kTableSize * 5, 0) {
  for (std::uint32_t c = 0; c < kTableSize; ++c) {
    h_[c * 5] = 1;
    if (c & 1u) g_[c * 5 + 1] = 1;
    for (std::uint32_t y = 0; y < 16; ++y) {
      if (!(c >> y & 1u)) continue;
      for (unsigned n = 1; n < 5; ++n) {
        h_[c * 5 + n] += h_[y * 5 + n - 1];
        g_[c * 5 + n] += g_[y * 5 + n - 1];
      }
    }
  }
}

const SmallProfileTable& SmallProfileTable::instance() {
  static const SmallProfileTable t;
  return t;
}

std::uint64_t ChainProfile::g_total() const {
  std::uint64_t s = 0;
  for (auto v : g) s = add_checked(s, v);
  return s;
}

std::uint64_t ChainProfile::h_total() const {
  std::uint64_t s = 0;
  for (auto v : h) s = add_checked(s, v);
  return s;
}

ChainProfile chain_profile(const PureSet& x, unsigned k) {
  if (x.depth() > k)
    throw DepthError("set has depth " + std::to_string(x.depth()) + " > k = " + std::to_string(k));
  ChainProfile p;
  p.k = k;
  profile_into(x, k + 1, p.h, p.g);
  return p;
}

ChainTotals totals(const ChainProfile& p) { return {p.h_total(), p.g_total()}; }

mpz_class multiplicity(const PureSet& x, const PureSet& z, unsigned levels) {
  std::map<mpz_class, mpz_class> memo;
  auto rec = [&](auto&& self, const PureSet& s, unsigned l) -> mpz_class {
    if (l == 0) return s == z ? 1 : 0;
    if (s.depth() < z.depth() + l) return 0;
    mpz_class key = s.code() * mpz_class(levels + 1) + l;
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    mpz_class total = 0;
    for (const auto& y : s.elements()) total += self(self, y, l - 1);
    memo.emplace(std::move(key), total);
    return total;
  };
  return rec(rec, x, levels);
}

RelationReport verify_linear_relations(unsigned k) {
  if (k > 4) throw CapacityError("k", "linear relations are enumerated for k <= 4");
  static const std::uint32_t z[] = {1, 2, 4, 16, 65536};
  const auto& t = SmallProfileTable::instance();
  RelationReport r;
  auto fail = [&](std::uint32_t c, const char* rel) {
    r.ok = false;
    r.counterexample = c;
    r.relation = rel;
    return r;
  };
  for (std::uint32_t c = 0; c < z[k]; ++c) {
    if (k >= 1 && t.g(c, k) != t.h(c, k)) return fail(c, "g[k] = h[k]");
    if (k >= 2 && t.g(c, k - 1) + t.g(c, k) != t.h(c, k - 1)) return fail(c, "g[k-1] + g[k] = h[k-1]");
  }
  if (k >= 1) {
    std::uint32_t full = z[k] - 1;  // S_{k-1}
    for (std::uint32_t c = 0; c < z[k]; ++c) {
      std::uint32_t comp = full ^ c;
      for (unsigned n = 0; n <= k; ++n) {
        if (t.h(c, n) + t.h(comp, n) != t.h(full, n) + (n == 0 ? 1 : 0)) return fail(c, "H complement identity");
        if (t.g(c, n) + t.g(comp, n) != t.g(full, n)) return fail(c, "G complement identity");
      }
    }
  }
  return r;
}

}  // namespace puresets
