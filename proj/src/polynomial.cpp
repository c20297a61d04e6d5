#include "puresets/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "puresets/errors.hpp"

namespace puresets {

mpz_class binomial(const mpz_class& n, unsigned long k) {
  if (sgn(n) < 0) return 0;
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

CountPolynomial CountPolynomial::constant(std::size_t vars, const mpz_class& c) {
  CountPolynomial p(vars);
  p.add(Exponents(vars, 0), c);
  return p;
}

CountPolynomial CountPolynomial::monomial(const Exponents& e, const mpz_class& c) {
  CountPolynomial p(e.size());
  p.add(e, c);
  return p;
}

CountPolynomial CountPolynomial::one_plus_power(const Exponents& e, const mpz_class& power,
                                                std::optional<std::pair<std::size_t, std::uint32_t>> cap) {
  CountPolynomial p(e.size());
  bool constant = true;
  for (auto x : e) constant = constant && x == 0;
  if (constant) {
    if (mpz_sizeinbase(power.get_mpz_t(), 2) > 40) throw CapacityError("power", "constant factor 2^power too large");
    mpz_class two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, power.get_ui());
    p.add(e, two_pow);
    return p;
  }
  if (mpz_sizeinbase(power.get_mpz_t(), 2) > 40) throw CapacityError("power", "binomial power too large to expand");
  unsigned long top = power.get_ui();
  if (cap && e[cap->first] > 0) top = std::min<unsigned long>(top, cap->second / e[cap->first]);
  Exponents cur(e.size(), 0);
  mpz_class c = 1;
  for (unsigned long i = 0; i <= top; ++i) {
    p.add(cur, c);
    c = c * (power - i) / (i + 1);
    for (std::size_t v = 0; v < e.size(); ++v) cur[v] += e[v];
  }
  return p;
}

void CountPolynomial::add(const Exponents& e, const mpz_class& c) {
  if (e.size() != vars_) throw DomainError("exponent vector has wrong arity");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

mpz_class CountPolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

mpz_class CountPolynomial::total() const {
  mpz_class s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

std::uint32_t CountPolynomial::degree(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

CountPolynomial CountPolynomial::truncated(std::size_t var, std::uint32_t max_degree) const {
  CountPolynomial p(vars_);
  for (const auto& [e, c] : terms_)
    if (e[var] <= max_degree) p.terms_.emplace(e, c);
  return p;
}

CountPolynomial CountPolynomial::multiply(const CountPolynomial& other,
                                          std::optional<std::pair<std::size_t, std::uint32_t>> cap) const {
  if (other.vars_ != vars_) throw DomainError("polynomial arity mismatch");
  CountPolynomial p(vars_);
  Exponents e(vars_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : other.terms_) {
      for (std::size_t v = 0; v < vars_; ++v) e[v] = ea[v] + eb[v];
      if (cap && e[cap->first] > cap->second) continue;
      p.add(e, ca * cb);
    }
  return p;
}

std::vector<mpz_class> CountPolynomial::dense() const {
  if (vars_ != 1) throw DomainError("dense() needs a univariate polynomial");
  std::vector<mpz_class> d(terms_.empty() ? 0 : degree(0) + 1, 0);
  for (const auto& [e, c] : terms_) d[e[0]] = c;
  return d;
}

std::string CountPolynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool any = false;
    std::ostringstream mono;
    for (std::size_t v = 0; v < vars_; ++v) {
      if (e[v] == 0) continue;
      if (any) mono << '*';
      any = true;
      mono << (v < names.size() ? names[v] : "x" + std::to_string(v));
      if (e[v] > 1) mono << '^' << e[v];
    }
    if (!any)
      os << c.get_str();
    else if (c == 1)
      os << mono.str();
    else
      os << c.get_str() << '*' << mono.str();
  }
  return os.str();
}

}  // namespace puresets
