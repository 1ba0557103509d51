#pragma once

#include <vector>

#include "phigamma/robba.hpp"

namespace phigamma {

// Locally analytic function on Z_p as Taylor jets: on the coset a + p^h Z_p,
// f(a + p^h y) = sum_{n < L} a_n(a) y^n.  Jets are treated as polynomials in y.
class LocAnFunction {
 public:
  LocAnFunction() = default;
  LocAnFunction(int p, int h, long L, long prec);

  int prime() const { return p_; }
  int level() const { return h_; }
  long taylor_length() const { return L_; }
  long prec() const { return prec_; }
  long coset_count() const { return static_cast<long>(c_.size()); }
  const std::vector<Padic>& jet(long a) const { return c_[static_cast<size_t>(a)]; }
  std::vector<Padic>& jet(long a) { return c_[static_cast<size_t>(a)]; }

  LocAnFunction operator+(const LocAnFunction& o) const;
  LocAnFunction scale(const Padic& s) const;
  // The same function on the cosets mod p^{h+1}.
  LocAnFunction refine() const;
  bool is_zero() const;

 private:
  int p_ = 0;
  int h_ = 0;
  long L_ = 0;
  long prec_ = 0;
  std::vector<std::vector<Padic>> c_;
};

// Jet-wise agreement; the coarser function is refined first.
Agreement la_compare(const LocAnFunction& f, const LocAnFunction& g, long slack = 0);

// x -> x^k.
LocAnFunction monomial(int p, long k, int h = 2, long L = 6, long prec = 30);

// phi(f)(x) = f(x/p) on pZ_p and 0 on Z_p^x; the level goes up by one.
LocAnFunction la_phi(const LocAnFunction& f);
// psi(f)(x) = f(px); the level goes down by one (stays 0 at level 0).
LocAnFunction la_psi(const LocAnFunction& f);
// gamma_a(f)(x) = a^{-1} f(x/a) for a unit a.
LocAnFunction la_gamma(const LocAnFunction& f, const Padic& a);

// Col(f)(x) = sum_{m <= -1} f_m C(x - 1, -1 - m), on the cosets mod p^h.
LocAnFunction colmez(const LaurentWindow& f, int h = 2, long L = 6);
// sum_j c_j T^{-1-j} with Col = the polynomial sum_n poly[n] x^n.
LaurentWindow colmez_preimage(const std::vector<Padic>& poly, long prec);

}  // namespace phigamma
