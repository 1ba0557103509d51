#pragma once

#include <map>
#include <vector>

#include "phigamma/dif.hpp"
#include "phigamma/robba.hpp"

namespace phigamma {

// D(alpha, k): phi(e) = alpha e, gamma(e) = chi(gamma)^k e.  D_dR is spanned by t^{-k} e.
struct RankOneCharacter {
  Padic alpha;
  long k = 0;
};

// Graded element sum_j t^{-j} f_j e of D[1/t].  Keeping the powers of t apart makes
// nabla exact on Laurent polynomials; collapse() gives the single-shift form.
class RankOneElement {
 public:
  RankOneElement() = default;
  RankOneElement(RankOneCharacter chr, int p, long prec) : chr_(std::move(chr)), p_(p), prec_(prec) {}
  // t^{-j} f e
  static RankOneElement single(const RankOneCharacter& chr, long j, const LaurentWindow& f);

  const RankOneCharacter& character() const { return chr_; }
  int prime() const { return p_; }
  long prec() const { return prec_; }
  long weight() const { return chr_.k; }
  const std::map<long, LaurentWindow>& parts() const { return parts_; }
  LaurentWindow part(long j) const;
  // Largest j with a part that is nonzero at precision (-kInf for zero).
  long max_shift() const;
  bool is_zero() const { return max_shift() == -kInf; }

  void add(long j, const LaurentWindow& f);
  RankOneElement operator+(const RankOneElement& o) const;
  RankOneElement operator-(const RankOneElement& o) const;
  RankOneElement scale(const Padic& s) const;
  // Same parts read in another character (twisting by Q_p(d) changes the weight only).
  RankOneElement with_character(const RankOneCharacter& chr) const;

 private:
  RankOneCharacter chr_;
  int p_ = 0;
  long prec_ = 0;
  std::map<long, LaurentWindow> parts_;
};

// Part-wise agreement of the graded data.
Agreement rank1_compare(const RankOneElement& x, const RankOneElement& y, long slack = 0);

RankOneElement mod_phi(const RankOneElement& x);
RankOneElement mod_psi(const RankOneElement& x);
RankOneElement mod_gamma(const RankOneElement& x, const Padic& a, long dmax_out = kInf);
RankOneElement nabla_i(const RankOneElement& x, long i);

// t^{-J} f e with J >= max_shift; the t-multiplications use t known up to degree dmax.
LaurentWindow collapse(const RankOneElement& x, long J, long dmax);

// iota_m(x) written in the basis t^{-k} e of D_dR, as an element of K_m((t)).
DifElement frame_iota(const RankOneElement& x, int m, long L);

// N_rig(D(alpha,k)) = t^{-k} B e: the frame at levels 1..levels has no negative power of t.
bool nrig_check(const RankOneElement& x, int levels = 2, long L = 8);

// nabla_{h-1} ... nabla_0 (x) for x in N_rig; the result lies in D (all parts j <= 0).
RankOneElement nabla_chain(const RankOneElement& x, long h);
// Same operator through t^h d^h (t^{k-j} g) expanded by Leibniz, used as an oracle.
RankOneElement nabla_chain_closed(const RankOneElement& x, long h);

// x -> nabla_0(x) (x) e_{-1}, from N_rig(D) to N_rig(D(-1)).
RankOneElement tilde_partial(const RankOneElement& x);

// chi of the generators: gamma_K with chi = 1 + p and gamma_n = gamma_K^{p^{n-1}}.
Padic chi_gamma(int p, int n, long rel);
// m(K_n) = v_p(log chi(gamma_n)).
long m_of_level(int p, int n);

// Image of x in H^1_Iw modeled by D^{psi=1}.
struct IwasawaClass {
  RankOneElement y;
  long h = 0;
  Padic norm;  // |Gamma_tor| log_0(chi(gamma_K))
};

// Throws NotPsiFixed unless mod_psi(x) = x at precision.
IwasawaClass big_exp(const RankOneElement& x, long h);
// pr_{K_n}(y) = log_0(chi(gamma_n)) y, the psi-component of the H^1 class.
RankOneElement project_level(const IwasawaClass& c, int n);

// T_L: iota at level m, frame t^{-k} e, t -> 0, normalized trace down to target_level.
CycloElement T_L_project(const RankOneElement& x, int m, int target_level, long L = 8);

// alpha = 1 psi-fixed element c0 e + c1 u e + sum_{i>=1} c_i t^i d^i(u) e with u = (1+T)/T.
RankOneElement psi_fixed_element(int p, long prec, long k, const Padic& c0, const Padic& c1,
                                 const std::vector<Padic>& ci);

struct InterpolationReport {
  CycloElement lhs, rhs;   // constant term of iota_n(x~) and the predicted value
  long discrepancy = kInf; // valuation of lhs - rhs
  long certified = kInf;   // absolute precision of the comparison
  long low_terms = kInf;   // smallest discrepancy among the t^1..t^{h-1} coefficients (should be 0)
  long phi_disc = kInf;    // smallest valuation among t^0..t^{h-1} of iota_{n+1}((phi-1) x~)
  long phi_certified = kInf;
  long terms = 0;          // terms of the nabla_0/(gamma_n - 1) series
};

// Checks iota_n(x~) = (-1)^{h-1}(h-1)!/log chi(gamma_n) T_{K_n}(x) mod t^h for weight 0,
// x~ = nabla_{h-1} ... nabla_1 (nabla_0/(gamma_n - 1)) x.  dmax widens exact-top parts.
InterpolationReport interpolation_identity_check(const RankOneElement& x, long h, int n, long L = 8,
                                                 long dmax = 120);
// The reports for h = 1..h_max, sharing the series nabla_0/(gamma_n - 1).
std::vector<InterpolationReport> interpolation_identity_checks(const RankOneElement& x, long h_max, int n, long L = 8,
                                                               long dmax = 120);

}  // namespace phigamma
