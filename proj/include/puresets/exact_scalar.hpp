#pragma once

#include <gmpxx.h>

#include <string>

namespace puresets {

// Exact value mantissa * 2^exponent with an arbitrary-precision exponent. The
// mantissa has odd numerator and odd denominator; zero is stored as 0 * 2^0.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long v) : ExactScalar(mpq_class(v)) {}
  explicit ExactScalar(const mpq_class& q) : ExactScalar(q, mpz_class(0)) {}
  ExactScalar(mpq_class mantissa, mpz_class exponent);

  static ExactScalar pow2(const mpz_class& e) { return ExactScalar(mpq_class(1), e); }

  const mpq_class& mantissa() const { return m_; }
  const mpz_class& exponent() const { return e_; }
  bool is_zero() const { return sgn(m_) == 0; }
  int sign() const { return sgn(m_); }

  // Throws CapacityError when |exponent| exceeds the bit budget.
  mpq_class to_rational() const;
  bool is_integer() const;
  mpz_class to_integer() const;
  double to_double() const;  // +-inf / 0 outside double range
  // Normalized binary float: value = frac * 2^exp with frac in [1, 2).
  void to_binary_float(double& frac, mpz_class& exp) const;
  // log2 |value| as long double; throws CapacityError if the exponent overflows long double.
  long double log2_abs() const;
  std::string to_string() const;  // "p/q*2^e", exponent omitted when 0

  ExactScalar operator-() const { return ExactScalar(-m_, e_); }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }
  ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }
  ExactScalar& operator/=(const ExactScalar& b) { return *this = *this / b; }
  ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
  ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }

  friend int compare(const ExactScalar& a, const ExactScalar& b);
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return a.m_ == b.m_ && a.e_ == b.e_; }
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) { return compare(a, b) < 0; }
  friend bool operator<=(const ExactScalar& a, const ExactScalar& b) { return compare(a, b) <= 0; }
  friend bool operator>(const ExactScalar& a, const ExactScalar& b) { return compare(a, b) > 0; }
  friend bool operator>=(const ExactScalar& a, const ExactScalar& b) { return compare(a, b) >= 0; }

 private:
  void normalize();
  mpq_class m_{0};
  mpz_class e_{0};
};


}  // namespace puresets
