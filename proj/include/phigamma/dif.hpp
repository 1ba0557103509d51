#pragma once

#include <vector>

#include "phigamma/cyclo.hpp"
#include "phigamma/robba.hpp"

namespace phigamma {

// t^{-tshift} * sum_{i=0}^{L} c_i t^i with coefficients in K_n; known modulo t^{L+1-tshift}.
class DifElement {
 public:
  DifElement() = default;
  DifElement(FieldPtr f, long tshift, std::vector<CycloElement> c);

  static DifElement zero(FieldPtr f, long L);
  static DifElement constant(FieldPtr f, long L, const CycloElement& c);
  // c * t^e modulo t^{L+1}, e may be negative.
  static DifElement monomial(FieldPtr f, long L, long e, const CycloElement& c);

  const FieldPtr& field() const { return f_; }
  int level() const { return f_->level(); }
  long tshift() const { return tshift_; }
  long tprec() const { return static_cast<long>(c_.size()) - 1; }
  // Exponent of the first unknown power of t.
  long order_bound() const { return tprec() + 1 - tshift_; }
  const std::vector<CycloElement>& coeffs() const { return c_; }
  // Coefficient of t^e (zero below -tshift, throws above the known order).
  CycloElement coeff(long e) const;

  bool is_zero() const;
  // Smallest relative digit count over nonzero coefficients.
  long certified_digits() const;
  // Lowest power of t whose coefficient is nonzero at precision (kInf if zero).
  long lowest_power() const;

  DifElement operator+(const DifElement& o) const;
  DifElement operator-(const DifElement& o) const;
  DifElement operator-() const;
  DifElement operator*(const DifElement& o) const;
  DifElement scale(const CycloElement& s) const;
  DifElement scale(const Padic& s) const;
  // Multiply by t^e (bookkeeping only).
  DifElement tmul(long e) const;
  // Drop leading zero coefficients into the shift.
  DifElement canonical() const;
  DifElement cap_abs(long a) const;

 private:
  FieldPtr f_;
  long tshift_ = 0;
  std::vector<CycloElement> c_;
};

// Digits of agreement coefficient by coefficient; certified is measured relative to
// the size of the coefficients of x.
Agreement dif_compare(const DifElement& x, const DifElement& y, long slack = 0);

// iota_n(f) in K_n[[t]]/t^{L+1}, levels n >= 1.
DifElement iota(const LaurentWindow& f, int n, long L);
// Action of gamma with chi(gamma) = c.
DifElement dif_gamma(const DifElement& x, const Padic& c);
CycloElement teval_zero(const DifElement& x);
DifElement dif_embed_up(const DifElement& x);
// (1/p) Tr_{K_{n}/K_{n-1}} coefficientwise.
DifElement dif_normalized_trace(const DifElement& x);

}  // namespace phigamma
