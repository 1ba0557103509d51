#pragma once

#include <vector>

#include "phigamma/rank1.hpp"

namespace phigamma {

enum class Flavor { Phi, Psi };

// Degree 0: one entry, degree 1: two entries (x, y), degree 2: one entry.
struct Cochain {
  Flavor flavor = Flavor::Phi;
  int degree = 0;
  std::vector<RankOneElement> entries;
};

// c t^{-k} e in D_dR(D(alpha, k)).
struct DRFrameVector {
  RankOneCharacter chr;
  Padic c;
  int p = 0;
  long prec = 0;
  bool in_fil0() const { return chr.k <= 0 || c.is_zero(); }
};

// Default degree bound for the outputs of gamma inside the complex.
inline constexpr long kComplexDmax = 60;

// chi(gamma_K) = 1 + p.
Padic gamma_K(int p, long rel);

// (1/(p-1)) sum over the Teichmuller lifts w of w^{k-j} gamma_w on each part.
RankOneElement delta_project(const RankOneElement& x, long dmax = kComplexDmax);

Cochain d1(const RankOneElement& x, long dmax = kComplexDmax);
Cochain d2(const Cochain& z, long dmax = kComplexDmax);
Cochain d1psi(const RankOneElement& x, long dmax = kComplexDmax);
Cochain d2psi(const Cochain& z, long dmax = kComplexDmax);
// (id, id + (-psi), -psi) from the phi-complex to the psi-complex.
Cochain to_psi(const Cochain& z);
// Entry-wise comparison; flavors and degrees must match.
Agreement cochain_compare(const Cochain& a, const Cochain& b, long slack = 0);
// d2 of a degree-1 cochain against zero.
Agreement cocycle_check(const Cochain& z, long dmax = kComplexDmax);

// Tensor of rank-1 elements: characters multiply alphas and add weights.
RankOneElement tensor(const RankOneElement& x, const RankOneElement& y);
Cochain cup01(const RankOneElement& a, const Cochain& z);
Cochain cup11(const Cochain& z, const Cochain& zp, long dmax = kComplexDmax);

// Unknowns: the coefficients of T^d, d in [lo, hi], in x~ = t^{-k} f e.  Equations: the
// coefficients of t^e, e < k, of iota_m(x~) - x in the frame, for m in [level_lo, level_hi].
// Level 0 means T -> exp(t) - 1 and needs lo >= 0.
struct LiftWindow {
  long lo = 0;
  long hi = 40;
  int level_lo = 0;
  int level_hi = 2;
};

RankOneElement lift_solver(const DRFrameVector& x, const LiftWindow& w = {});
// Residual of iota_m(x~) - x on t^e, e < k, over the levels of w.
Agreement lift_residual(const RankOneElement& xt, const DRFrameVector& x, const LiftWindow& w = {});

// [(gamma_K - 1) x~, (phi - 1) x~] with x~ Delta-projected.
Cochain exp_class(const DRFrameVector& x, const LiftWindow& w = {}, long dmax = kComplexDmax);
Cochain exp_from_lift(const RankOneElement& xt, long dmax = kComplexDmax);

// Checks that z = d1(w) and that w has no poles in the frame at the given levels.
struct CoboundaryWitness {
  Agreement match;
  bool regular = false;
};
CoboundaryWitness coboundary_witness(const Cochain& z, const RankOneElement& w, const LiftWindow& levels = {},
                                     long dmax = kComplexDmax);

// log chi(gamma_K) c, constant in the frame at level n.
DifElement g_class(const DRFrameVector& x, int n = 1, long L = 8);
// Invariant t^0 line of iota_n(x-entry), averaged down to Q_p, divided by log chi(gamma_K).
DRFrameVector dual_exp(const Cochain& z, int n = 1, long L = 8);
// D_dR(D) x D_dR(D^v(1)) -> Q_p, (a/t) e_1 -> a.
Padic pair_dR(const DRFrameVector& x, const DRFrameVector& y);
RankOneCharacter dual_character(const RankOneCharacter& chr);

// Residue functional on the module of weight 1 and alpha = 1.  Parts with j <= 0 are collapsed
// and go through reslog; a part t^{-j} g with j >= 1 (g a power series) contributes its
// residues at the zeros of t on levels 0..levels.
Padic h2_functional(const RankOneElement& f, int levels = 2);
// psi-flavor representatives are used as they are; a phi representative w stands for -psi(w).
Padic h2_class(const Cochain& z, int levels = 2);

}  // namespace phigamma
