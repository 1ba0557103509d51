#pragma once

#include <vector>

#include "phigamma/padic.hpp"

namespace phigamma {

using PadicScalar = Padic;

// Truncated Laurent series on the degree window [dmin, dmax].  Each stored
// coefficient carries its own precision.  Above dmax the series is either
// zero (exact_top) or unknown.  Below dmin the coefficients are zero when
// tail == kInf, otherwise unknown with valuation >= tail.
class LaurentWindow {
 public:
  LaurentWindow() = default;
  LaurentWindow(int p, long prec, long dmin, std::vector<Padic> coeffs, bool exact_top = true, long tail = kInf);

  static LaurentWindow zero(int p, long prec);
  static LaurentWindow monomial(int p, long prec, long deg, const Padic& c);
  static LaurentWindow constant(int p, long prec, const Padic& c) { return monomial(p, prec, 0, c); }

  int prime() const { return p_; }
  long prec() const { return prec_; }
  long dmin() const { return dmin_; }
  long dmax() const { return dmax_; }
  bool exact_top() const { return exact_top_; }
  long tail() const { return tail_; }
  const std::vector<Padic>& coeffs() const { return c_; }

  bool known(long d) const { return exact_top_ || d <= dmax_; }
  // Coefficient at degree d; tails below dmin appear as zeros with capped precision.
  Padic coeff(long d) const;
  void set(long d, const Padic& c);

  // Lowest degree with a coefficient that is not an exact zero.
  long lowdeg() const;
  long highdeg() const;
  // Smallest valuation among stored nonzero coefficients.
  long vmin() const;
  long vmin_range(long lo, long hi) const;
  // Heuristic valuation floor for the unknown coefficients above dmax.
  long top_val_bound() const;
  // Digits forfeited relative to the base precision.
  long loss() const;
  bool is_zero() const;
  bool is_laurent_polynomial() const { return exact_top_ && tail_ >= kInf; }

  // Forget everything above degree d (the top becomes unknown).
  LaurentWindow truncate_top(long d) const;
  LaurentWindow restrict_bottom(long d) const;
  LaurentWindow cap_abs(long a) const;
  LaurentWindow with_prec(long prec) const;
  // Drop exact zeros at the window edges while keeping 0 inside the window.
  LaurentWindow trimmed() const;

  LaurentWindow operator-() const;
  LaurentWindow operator+(const LaurentWindow& o) const;
  LaurentWindow operator-(const LaurentWindow& o) const;
  LaurentWindow operator*(const LaurentWindow& o) const;
  LaurentWindow scale(const Padic& s) const;
  LaurentWindow shift_degree(long k) const;  // multiply by T^k

 private:
  int p_ = 0;
  long prec_ = 0;
  long dmin_ = 0;
  long dmax_ = 0;
  bool exact_top_ = true;
  long tail_ = kInf;
  std::vector<Padic> c_;
};

// Guard digits used for constants so that they never limit data precision.
inline constexpr long kGuard = 24;
inline long const_rel(long prec) { return prec + kGuard; }

// Known series.
LaurentWindow t_series(int p, long prec, long dmax);
LaurentWindow t_over_T(int p, long prec, long dmax);
LaurentWindow T_over_t(int p, long prec, long dmax);
LaurentWindow one_plus_T_pow(const Padic& a, long prec, long dmax);
LaurentWindow one_plus_T_pow(int p, long a, long prec, long dmax);
// (1 + T)/T, the cyclotomic-unit fixture.
LaurentWindow cyclotomic_unit(int p, long prec);

LaurentWindow series_mul(const LaurentWindow& f, const LaurentWindow& g);
// Inverse with known coefficients up to degree dmax_out.
LaurentWindow series_invert(const LaurentWindow& f, long dmax_out);

LaurentWindow phi(const LaurentWindow& f);
LaurentWindow psi(const LaurentWindow& f);
// gamma_a with output window top dmax_out (defaults to the input window).
LaurentWindow gamma(const LaurentWindow& f, const Padic& a, long dmax_out = kInf);
LaurentWindow gamma(const LaurentWindow& f, long a, long dmax_out = kInf);
LaurentWindow partial(const LaurentWindow& f);

// nabla_i in closed form: t * partial(f) - i f.
LaurentWindow nabla(const LaurentWindow& f, long i);

struct SeriesNablaResult {
  LaurentWindow value;
  long terms = 0;
};
// nabla_i through the log series of gamma with chi(gamma) = a, truncated at R terms
// (R <= 0 chooses the minimal R certifying the base precision).
SeriesNablaResult nabla_series(const LaurentWindow& f, long i, const Padic& a, long R = 0);
// nabla_0/(gamma-1) := (1/log a) sum_{k>=1} (-1)^{k-1}/k (gamma-1)^{k-1} with gamma acting as
// a^twist gamma_a, same truncation rule.
SeriesNablaResult nabla_over_gamma_minus_one(const LaurentWindow& f, const Padic& a, long twist = 0, long R = 0);

// (1/p) sum_{zeta^p = 1} f(zeta(1+T) - 1) computed with coefficients in K_1, for Laurent polynomials.
LaurentWindow phi_psi_by_trace(const LaurentWindow& f);
// Solve g = phi(h) for h; throws NotInPhiImage if g is not in the image at precision.
LaurentWindow phi_inverse(const LaurentWindow& g);

// gamma_a on the degree window [lo, hi] as a precomputed triangular matrix, for repeated use.
class GammaOperator {
 public:
  GammaOperator(int p, long prec, const Padic& a, long lo, long hi);
  // Output window [lo, min(hi, f.dmax)]; f must vanish below lo unless it carries a tail.
  LaurentWindow apply(const LaurentWindow& f) const;
  long lo() const { return lo_; }
  long hi() const { return hi_; }

 private:
  int p_;
  long prec_;
  long lo_, hi_;
  std::vector<std::vector<Padic>> cols_;  // cols_[n - lo][j - lo] = coefficient of T^j in gamma(T^n)
};

Padic res(const LaurentWindow& f);
Padic reslog(const LaurentWindow& f);

// Coefficient-wise agreement on the jointly known window.
struct Agreement {
  bool ok = true;
  long worst_disc = kInf;  // smallest discrepancy valuation
  long certified = kInf;   // smallest precision among compared coefficients
  long lo = 0, hi = 0;
};
Agreement compare(const LaurentWindow& f, const LaurentWindow& g, long slack = 0, long lo = -kInf, long hi = kInf);

// Exact integer rows of psi on monomials: psi(T^n) for n >= 0 has degrees 0..n/p,
// psi(T^{-m}) for m >= 1 has degrees -m..-1 (stored from degree -m).
const std::vector<mpz_class>& psi_row_pos(int p, long n);
const std::vector<mpz_class>& psi_row_neg(int p, long m);

}  // namespace phigamma
