#include "puresets/pure_set.hpp"

#include <algorithm>
#include <mutex>

#include "puresets/errors.hpp"
#include "puresets/limits.hpp"

namespace puresets {
namespace {

constexpr std::uint32_t kCacheSize = 65536;

std::vector<PureSet>& small_cache() {
  static std::vector<PureSet> cache;
  return cache;
}

void check_bit_index(const Code& c) {
  if (mpz_sizeinbase(c.get_mpz_t(), 2) > 63 || c.get_ui() >= limits().max_code_bits)
    throw CapacityError("code", "element code " + (c < 1000000 ? c.get_str() : std::string("(large)")) +
                                    " exceeds bit budget of " + std::to_string(limits().max_code_bits));
}

}  // namespace

PureSet::PureSet() {
  static const auto empty = std::make_shared<const Node>();
  node_ = empty;
}

PureSet PureSet::make_trusted(std::vector<PureSet> sorted_elements, Code code) {
  auto n = std::make_shared<Node>();
  unsigned d = 0;
  for (const auto& e : sorted_elements) d = std::max(d, e.depth() + 1);
  n->depth = d;
  n->elements = std::move(sorted_elements);
  n->code = std::move(code);
  return PureSet(std::move(n));
}

PureSet PureSet::from_elements(std::vector<PureSet> elements) {
  std::sort(elements.begin(), elements.end(),
            [](const PureSet& a, const PureSet& b) { return cmp(a.code(), b.code()) > 0; });
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty()) return PureSet();
  check_bit_index(elements.front().code());
  Code code = 0;
  for (const auto& e : elements) mpz_setbit(code.get_mpz_t(), e.code().get_ui());
  return make_trusted(std::move(elements), std::move(code));
}

bool PureSet::contains(const PureSet& y) const {
  const auto& c = y.code();
  if (mpz_sizeinbase(c.get_mpz_t(), 2) > 63) return false;
  std::uint64_t bit = c.get_ui();
  if (bit >= mpz_sizeinbase(code().get_mpz_t(), 2)) return false;
  return mpz_tstbit(code().get_mpz_t(), bit) != 0;
}

PureSet decode(const Code& n) {
  if (sgn(n) < 0) throw DomainError("decode: negative code");
  static std::once_flag once;
  std::call_once(once, [] {
    auto& cache = small_cache();
    cache.reserve(kCacheSize);
    cache.emplace_back();
    for (std::uint32_t c = 1; c < kCacheSize; ++c) {
      std::vector<PureSet> elems;
      for (int b = 15; b >= 0; --b)
        if (c >> b & 1u) elems.push_back(cache[b]);
      cache.push_back(PureSet::make_trusted(std::move(elems), Code(c)));
    }
  });
  if (n < kCacheSize) return small_cache()[n.get_ui()];
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (bits > limits().max_code_bits)
    throw CapacityError("code", "code has " + std::to_string(bits) + " bits, budget is " +
                                    std::to_string(limits().max_code_bits));
  std::vector<PureSet> elems;
  for (std::size_t b = bits; b-- > 0;)
    if (mpz_tstbit(n.get_mpz_t(), b)) elems.push_back(decode(Code(static_cast<unsigned long>(b))));
  return PureSet::make_trusted(std::move(elems), n);
}

Code encode(const PureSet& x) { return x.code(); }

unsigned depth(const PureSet& x) { return x.depth(); }

bool is_transitive(const PureSet& x) {
  for (const auto& y : x.elements())
    for (const auto& z : y.elements())
      if (!x.contains(z)) return false;
  return true;
}

PureSet matryoshka(unsigned k) {
  PureSet s;
  for (unsigned i = 0; i < k; ++i) s = PureSet::from_elements({s});
  return s;
}

PureSet von_neumann(unsigned k) {
  std::vector<PureSet> elems;
  PureSet s;
  for (unsigned i = 0; i < k; ++i) {
    elems.push_back(s);
    s = PureSet::from_elements(elems);
  }
  return s;
}

PureSet universe(unsigned k) {
  if (k > 4) throw CapacityError("k", "S_k is only materialized for k <= 4");
  static const unsigned z[] = {1, 2, 4, 16, 65536};
  std::vector<PureSet> elems;
  for (unsigned c = z[k]; c-- > 0;) elems.push_back(decode(Code(c)));
  return PureSet::from_elements(std::move(elems));
}

std::uint64_t code_u64(const PureSet& x) {
  if (mpz_sizeinbase(x.code().get_mpz_t(), 2) > 64) throw CapacityError("code", "code wider than 64 bits");
  return static_cast<std::uint64_t>(x.code().get_ui());
}

}  // namespace puresets
