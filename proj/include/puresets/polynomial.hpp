#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace puresets {

// Sparse polynomial with natural-number coefficients in a fixed number of variables.
class CountPolynomial {
 public:
  using Exponents = std::vector<std::uint32_t>;

  explicit CountPolynomial(std::size_t vars = 1) : vars_(vars) {}
  static CountPolynomial constant(std::size_t vars, const mpz_class& c);
  static CountPolynomial monomial(const Exponents& e, const mpz_class& c = 1);
  // (1 + x^e)^power, dropping terms whose degree in variable `var` exceeds `max_degree`.
  static CountPolynomial one_plus_power(const Exponents& e, const mpz_class& power,
                                        std::optional<std::pair<std::size_t, std::uint32_t>> cap = {});

  std::size_t vars() const { return vars_; }
  const std::map<Exponents, mpz_class>& terms() const { return terms_; }
  void add(const Exponents& e, const mpz_class& c);
  mpz_class coefficient(const Exponents& e) const;
  mpz_class total() const;  // value at all variables = 1
  std::uint32_t degree(std::size_t var) const;
  CountPolynomial truncated(std::size_t var, std::uint32_t max_degree) const;
  CountPolynomial multiply(const CountPolynomial& other,
                           std::optional<std::pair<std::size_t, std::uint32_t>> cap = {}) const;
  // Coefficients of a univariate polynomial, dense from degree 0.
  std::vector<mpz_class> dense() const;
  std::string to_string(const std::vector<std::string>& names) const;

  friend CountPolynomial operator*(const CountPolynomial& a, const CountPolynomial& b) { return a.multiply(b); }
  friend bool operator==(const CountPolynomial&, const CountPolynomial&) = default;

 private:
  std::size_t vars_;
  std::map<Exponents, mpz_class> terms_;
};

mpz_class binomial(const mpz_class& n, unsigned long k);

}  // namespace puresets
