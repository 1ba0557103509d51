#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>
#include <vector>

#include "phigamma/errors.hpp"

namespace phigamma {

// Valuation / precision sentinel for exact zeros and unbounded windows.
inline constexpr long kInf = LONG_MAX / 4;

// p^k for k >= 0, cached per thread.
const mpz_class& ppow(int p, long k);

// p-adic valuation of a nonzero integer.
long vp(int p, const mpz_class& n);
long vp(int p, long n);

// Element of Q_p with capped relative precision.  A nonzero value is
// p^val * unit with unit a residue mod p^rel not divisible by p.  A zero
// carries its absolute precision (kInf means an exact zero).
class Padic {
 public:
  Padic() = default;

  static Padic zero(int p, long abs = kInf);
  static Padic from_int(int p, const mpz_class& n, long rel);
  static Padic from_int(int p, long n, long rel) { return from_int(p, mpz_class(n), rel); }
  static Padic from_rational(int p, const mpz_class& num, const mpz_class& den, long rel);
  // Integer n known to absolute precision at least `abs`.
  static Padic integer(int p, long n, long abs);
  static Padic from_parts(int p, long val, const mpz_class& unit, long rel);

  int prime() const { return p_; }
  bool is_zero() const { return val_ == kInf; }
  bool is_exact_zero() const { return is_zero() && zabs_ == kInf; }
  long val() const { return val_; }
  long rel() const { return is_zero() ? 0 : rel_; }
  long abs() const { return is_zero() ? zabs_ : val_ + rel_; }
  const mpz_class& unit() const { return unit_; }
  std::vector<int> digits() const;

  Padic operator-() const;
  Padic operator+(const Padic& o) const;
  Padic operator-(const Padic& o) const { return *this + (-o); }
  Padic operator*(const Padic& o) const;
  Padic operator/(const Padic& o) const;
  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator-=(const Padic& o) { return *this = *this - o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }

  Padic inv() const;
  Padic pow(long e) const;
  Padic mul_int(long n) const;
  // Multiply by p^k (exact).
  Padic shift(long k) const;
  Padic cap_abs(long a) const;
  Padic cap_rel(long r) const;

  // Difference is zero at the joint precision.
  bool equals(const Padic& o) const { return (*this - o).is_zero(); }
  // Integer representative of the value mod p^a; requires val >= 0.
  mpz_class residue(long a) const;

  std::string str() const;

 private:
  int p_ = 0;
  long val_ = kInf;
  long rel_ = 0;
  long zabs_ = kInf;
  mpz_class unit_;

  void adopt_prime(int p);
};

// v(a - b) if nonzero, else the absolute precision of the difference.
long disc_val(const Padic& a, const Padic& b);

Padic binom(const Padic& a, long k);
// Exact binomial C(a, k) for integer a (negative allowed), at relative precision rel.
Padic binom_int(int p, long a, long k, long rel);

struct LogResult {
  Padic value;
  long terms = 0;
  long error_val = 0;
};

// Truncated log series with R terms; the value is capped at the certified error valuation.
LogResult plog(const Padic& a, long terms);
// R chosen minimal with (R+1) v(a-1) - floor(log_p(R+1)) >= abs(a).
LogResult plog(const Padic& a);
Padic log0(const Padic& a);

// Integer root of unity mod p^N congruent to a mod p (Hensel lift of the Teichmuller character).
mpz_class teichmuller(int p, long a, long N);

}  // namespace phigamma
