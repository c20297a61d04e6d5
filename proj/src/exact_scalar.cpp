#include "puresets/exact_scalar.hpp"

#include <cmath>

#include "puresets/errors.hpp"
#include "puresets/limits.hpp"

namespace puresets {
namespace {

void check_gap(const mpz_class& gap) {
  if (cmp(gap, mpz_class(static_cast<unsigned long>(limits().max_code_bits))) > 0)
    throw CapacityError("exponent", "exponent gap exceeds bit budget");
}

mpq_class shifted(const mpq_class& q, const mpz_class& s) {
  // q * 2^s for small non-negative s
  mpq_class r;
  mpq_mul_2exp(r.get_mpq_t(), q.get_mpq_t(), s.get_ui());
  return r;
}

ExactScalar add_unchecked(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const ExactScalar& hi = a.exponent() >= b.exponent() ? a : b;
  const ExactScalar& lo = a.exponent() >= b.exponent() ? b : a;
  mpz_class gap = hi.exponent() - lo.exponent();
  return ExactScalar(shifted(hi.mantissa(), gap) + lo.mantissa(), lo.exponent());
}

// floor(log2 |x|) up to +-1
mpz_class magnitude(const ExactScalar& x) {
  return x.exponent() + mpz_class(static_cast<long>(mpz_sizeinbase(x.mantissa().get_num_mpz_t(), 2))) -
         mpz_class(static_cast<long>(mpz_sizeinbase(x.mantissa().get_den_mpz_t(), 2)));
}

// |x| = frac * 2^exp with frac in [1, 2)
void split(const ExactScalar& x, double& frac, mpz_class& exp) {
  long en = 0, ed = 0;
  double fn = mpz_get_d_2exp(&en, x.mantissa().get_num_mpz_t());
  double fd = mpz_get_d_2exp(&ed, x.mantissa().get_den_mpz_t());
  double f = std::fabs(fn) / fd;  // in (0.5, 2)
  long adj = 0;
  while (f >= 2.0) {
    f /= 2.0;
    ++adj;
  }
  while (f < 1.0) {
    f *= 2.0;
    --adj;
  }
  frac = f;
  exp = x.exponent() + (en - ed + adj);
}

}  // namespace

ExactScalar::ExactScalar(mpq_class mantissa, mpz_class exponent) : m_(std::move(mantissa)), e_(std::move(exponent)) {
  m_.canonicalize();
  normalize();
}

void ExactScalar::normalize() {
  if (sgn(m_) == 0) {
    e_ = 0;
    return;
  }
  mpz_ptr num = mpq_numref(m_.get_mpq_t());
  mpz_ptr den = mpq_denref(m_.get_mpq_t());
  auto tn = mpz_scan1(num, 0);
  if (tn) {
    mpz_tdiv_q_2exp(num, num, tn);
    e_ += static_cast<unsigned long>(tn);
  }
  auto td = mpz_scan1(den, 0);
  if (td) {
    mpz_tdiv_q_2exp(den, den, td);
    e_ -= static_cast<unsigned long>(td);
  }
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return ExactScalar(a.m_ * b.m_, a.e_ + b.e_);
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_zero()) return {};
  return ExactScalar(a.m_ / b.m_, a.e_ - b.e_);
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  mpz_class gap = abs(a.e_ - b.e_);
  check_gap(gap);
  return add_unchecked(a, b);
}

int compare(const ExactScalar& a, const ExactScalar& b) {
  int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  mpz_class ma = magnitude(a), mb = magnitude(b);
  mpz_class d = ma - mb;
  if (d >= 2) return sa;
  if (d <= -2) return -sa;
  return add_unchecked(a, -b).sign();
}

mpq_class ExactScalar::to_rational() const {
  if (is_zero()) return 0;
  check_gap(abs(e_));
  mpq_class r;
  if (e_ >= 0)
    mpq_mul_2exp(r.get_mpq_t(), m_.get_mpq_t(), e_.get_ui());
  else
    mpq_div_2exp(r.get_mpq_t(), m_.get_mpq_t(), mpz_class(-e_).get_ui());
  return r;
}

bool ExactScalar::is_integer() const { return is_zero() || (m_.get_den() == 1 && e_ >= 0); }

mpz_class ExactScalar::to_integer() const {
  if (!is_integer()) throw DomainError("value is not an integer");
  return to_rational().get_num();
}

double ExactScalar::to_double() const {
  if (is_zero()) return 0.0;
  double f;
  mpz_class e;
  split(*this, f, e);
  double s = sign() < 0 ? -f : f;
  if (e > 2000) return s * HUGE_VAL;
  if (e < -2000) return s * 0.0;
  return std::ldexp(s, static_cast<int>(e.get_si()));
}

void ExactScalar::to_binary_float(double& frac, mpz_class& exp) const {
  if (is_zero()) {
    frac = 0.0;
    exp = 0;
    return;
  }
  split(*this, frac, exp);
  if (sign() < 0) frac = -frac;
}

long double ExactScalar::log2_abs() const {
  if (is_zero()) throw DomainError("log2 of zero");
  double f;
  mpz_class e;
  split(*this, f, e);
  if (mpz_sizeinbase(e.get_mpz_t(), 2) > 62) throw CapacityError("exponent", "log2 does not fit a long double");
  return static_cast<long double>(e.get_si()) + std::log2(static_cast<long double>(f));
}

std::string ExactScalar::to_string() const {
  std::string s = m_.get_str();
  if (e_ != 0) s += "*2^" + e_.get_str();
  return s;
}

}  // namespace puresets
