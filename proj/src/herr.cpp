#include "phigamma/herr.hpp"

#include <algorithm>

#include "phigamma/linalg.hpp"

namespace phigamma {

namespace {

void merge(Agreement& acc, const Agreement& a) {
  acc.ok = acc.ok && a.ok;
  acc.worst_disc = std::min(acc.worst_disc, a.worst_disc);
  acc.certified = std::min(acc.certified, a.certified);
  acc.lo = std::min(acc.lo, a.lo);
  acc.hi = std::max(acc.hi, a.hi);
}

Agreement fresh() {
  Agreement a;
  a.lo = kInf;
  a.hi = -kInf;
  return a;
}

// Fold one coordinate difference into an agreement record; mag is the size of the target.
void note_diff(Agreement& a, const Padic& d, long mag, long slack = 0) {
  if (d.is_exact_zero()) return;
  long dv = d.is_zero() ? d.abs() : d.val();
  a.worst_disc = std::min(a.worst_disc, dv);
  if (!d.is_zero() && d.val() < d.abs() - slack) a.ok = false;
  a.certified = std::min(a.certified, d.abs() - (mag < kInf ? mag : 0));
}

RankOneElement zero_like(const RankOneElement& x) { return RankOneElement(x.character(), x.prime(), x.prec()); }

Padic minus_one(int p, long prec) { return Padic::from_int(p, -1, const_rel(prec)); }

Padic log_chi(int p, long prec) { return plog(gamma_K(p, const_rel(prec) + 8)).value; }

void require_degree(const Cochain& z, int degree) {
  size_t want = degree == 1 ? 2 : 1;
  if (z.degree != degree || z.entries.size() != want) fail(ErrorCode::DomainError, "cochain of unexpected degree");
}

// [t^i] (exp(t) - 1)^d for i <= L and 0 <= d <= L.
std::vector<std::vector<Padic>> exp_minus_one_powers(int p, long L, long rel) {
  std::vector<Padic> E(static_cast<size_t>(L + 1), Padic::zero(p));
  mpz_class fact = 1;
  for (long i = 1; i <= L; ++i) {
    fact *= i;
    E[static_cast<size_t>(i)] = Padic::from_rational(p, 1, fact, rel);
  }
  std::vector<std::vector<Padic>> pw;
  std::vector<Padic> cur(static_cast<size_t>(L + 1), Padic::zero(p));
  cur[0] = Padic::from_int(p, 1, rel);
  for (long d = 0; d <= L; ++d) {
    pw.push_back(cur);
    std::vector<Padic> next(static_cast<size_t>(L + 1), Padic::zero(p));
    for (long i = 0; i <= L; ++i)
      for (long j = 1; i + j <= L; ++j) next[static_cast<size_t>(i + j)] += cur[static_cast<size_t>(i)] * E[static_cast<size_t>(j)];
    cur = next;
  }
  return pw;
}

// [t^i] f(exp(t) - 1), i = 0..L, for a power series f.
std::vector<Padic> level0_series(const LaurentWindow& f, long L) {
  if (f.lowdeg() < 0 || f.tail() < kInf) fail(ErrorCode::DomainError, "level 0 needs a power series");
  const int p = f.prime();
  auto pw = exp_minus_one_powers(p, L, const_rel(f.prec()) + L);
  std::vector<Padic> r(static_cast<size_t>(L + 1), Padic::zero(p));
  for (long d = 0; d <= L; ++d) {
    if (!f.known(d)) {
      for (long i = d; i <= L; ++i) r[static_cast<size_t>(i)] = r[static_cast<size_t>(i)].cap_abs(f.top_val_bound());
      break;
    }
    Padic c = f.coeff(d);
    if (c.is_exact_zero()) continue;
    for (long i = d; i <= L; ++i) r[static_cast<size_t>(i)] += c * pw[static_cast<size_t>(d)][static_cast<size_t>(i)];
  }
  return r;
}

// Frame at level 0: sum_j t^{k-j} f_j(exp(t) - 1), exponents from emin up to L.
struct Frame0 {
  int p = 0;
  long emin = 0;
  std::vector<Padic> c;
  Padic coeff(long e) const {
    long i = e - emin;
    return i < 0 || i >= static_cast<long>(c.size()) ? Padic::zero(p) : c[static_cast<size_t>(i)];
  }
};

Frame0 frame_level0(const RankOneElement& x, long L) {
  Frame0 r;
  r.p = x.prime();
  for (const auto& [j, f] : x.parts()) r.emin = std::min(r.emin, x.weight() - j);
  r.c.assign(static_cast<size_t>(L - r.emin + 1), Padic::zero(x.prime()));
  for (const auto& [j, f] : x.parts()) {
    long sh = x.weight() - j;
    if (L - sh < 0) continue;
    std::vector<Padic> s = level0_series(f, L - sh);
    for (long i = 0; i + sh <= L; ++i) r.c[static_cast<size_t>(i + sh - r.emin)] += s[static_cast<size_t>(i)];
  }
  return r;
}

bool frame_regular(const RankOneElement& w, const LiftWindow& lv) {
  const long k = w.weight();
  for (int m = lv.level_lo; m <= lv.level_hi; ++m) {
    if (m == 0) {
      Frame0 f0 = frame_level0(w, std::max(0L, k - 1));
      for (long e = f0.emin; e < k; ++e)
        if (!f0.coeff(e).is_zero()) return false;
      continue;
    }
    DifElement y = frame_iota(w, m, std::max(0L, k - 1));
    for (long e = -y.tshift(); e < k; ++e)
      if (!y.coeff(e).is_zero()) return false;
  }
  return true;
}

}  // namespace

Padic gamma_K(int p, long rel) { return chi_gamma(p, 1, rel); }

RankOneElement delta_project(const RankOneElement& x, long dmax) {
  const int p = x.prime();
  const long rel = const_rel(x.prec());
  RankOneElement r = zero_like(x);
  for (long c = 1; c < p; ++c) {
    Padic w = Padic::from_int(p, teichmuller(p, c, rel), rel);
    r = r + (c == 1 ? x : mod_gamma(x, w, dmax));
  }
  return r.scale(Padic::from_rational(p, 1, p - 1, rel));
}

Cochain d1(const RankOneElement& x, long dmax) {
  Padic g = gamma_K(x.prime(), const_rel(x.prec()));
  return {Flavor::Phi, 1, {mod_gamma(x, g, dmax) - x, mod_phi(x) - x}};
}

Cochain d2(const Cochain& z, long dmax) {
  require_degree(z, 1);
  const RankOneElement& x = z.entries[0];
  const RankOneElement& y = z.entries[1];
  Padic g = gamma_K(x.prime(), const_rel(x.prec()));
  return {Flavor::Phi, 2, {(mod_phi(x) - x) - (mod_gamma(y, g, dmax) - y)}};
}

Cochain d1psi(const RankOneElement& x, long dmax) {
  Padic g = gamma_K(x.prime(), const_rel(x.prec()));
  return {Flavor::Psi, 1, {mod_gamma(x, g, dmax) - x, mod_psi(x) - x}};
}

Cochain d2psi(const Cochain& z, long dmax) {
  require_degree(z, 1);
  const RankOneElement& x = z.entries[0];
  const RankOneElement& y = z.entries[1];
  Padic g = gamma_K(x.prime(), const_rel(x.prec()));
  return {Flavor::Psi, 2, {(mod_psi(x) - x) - (mod_gamma(y, g, dmax) - y)}};
}

Cochain to_psi(const Cochain& z) {
  if (z.flavor == Flavor::Psi) return z;
  Cochain r{Flavor::Psi, z.degree, z.entries};
  if (z.degree == 1) r.entries[1] = mod_psi(z.entries[1]).scale(minus_one(z.entries[1].prime(), z.entries[1].prec()));
  if (z.degree == 2) r.entries[0] = mod_psi(z.entries[0]).scale(minus_one(z.entries[0].prime(), z.entries[0].prec()));
  return r;
}

Agreement cochain_compare(const Cochain& a, const Cochain& b, long slack) {
  if (a.flavor != b.flavor || a.degree != b.degree || a.entries.size() != b.entries.size())
    fail(ErrorCode::DomainError, "comparing cochains of different shapes");
  Agreement acc = fresh();
  for (size_t i = 0; i < a.entries.size(); ++i) merge(acc, rank1_compare(a.entries[i], b.entries[i], slack));
  return acc;
}

Agreement cocycle_check(const Cochain& z, long dmax) {
  Cochain b = z.flavor == Flavor::Phi ? d2(z, dmax) : d2psi(z, dmax);
  return rank1_compare(b.entries[0], zero_like(b.entries[0]));
}

RankOneElement tensor(const RankOneElement& x, const RankOneElement& y) {
  RankOneCharacter chr{x.character().alpha * y.character().alpha, x.weight() + y.weight()};
  RankOneElement r(chr, x.prime(), std::min(x.prec(), y.prec()));
  for (const auto& [i, f] : x.parts())
    for (const auto& [j, g] : y.parts()) r.add(i + j, f * g);
  return r;
}

Cochain cup01(const RankOneElement& a, const Cochain& z) {
  require_degree(z, 1);
  return {z.flavor, 1, {tensor(a, z.entries[0]), tensor(a, z.entries[1])}};
}

Cochain cup11(const Cochain& z, const Cochain& zp, long dmax) {
  require_degree(z, 1);
  require_degree(zp, 1);
  if (z.flavor != Flavor::Phi || zp.flavor != Flavor::Phi) fail(ErrorCode::DomainError, "cup product on the phi-complex only");
  const RankOneElement& x = z.entries[0];
  const RankOneElement& y = z.entries[1];
  Padic g = gamma_K(x.prime(), const_rel(x.prec()));
  return {Flavor::Phi, 2, {tensor(y, mod_phi(zp.entries[0])) - tensor(x, mod_gamma(zp.entries[1], g, dmax))}};
}

RankOneElement lift_solver(const DRFrameVector& x, const LiftWindow& w) {
  const int p = x.p;
  const long k = x.chr.k;
  RankOneElement zero(x.chr, p, x.prec);
  if (k <= 0 || x.c.is_zero()) return zero;
  if (w.level_lo == 0 && w.lo < 0) fail(ErrorCode::DomainError, "level 0 needs a window without negative degrees");
  if (w.level_lo < 0 || w.level_hi < w.level_lo || w.hi < w.lo) fail(ErrorCode::DomainError, "empty lift window");
  const long rel = const_rel(x.prec);
  const long ncols = w.hi - w.lo + 1;
  PMatrix A;
  std::vector<Padic> b;
  for (int m = w.level_lo; m <= w.level_hi; ++m) {
    if (m == 0) {
      auto pw = exp_minus_one_powers(p, k - 1, rel);
      for (long e = 0; e < k; ++e) {
        std::vector<Padic> row(static_cast<size_t>(ncols), Padic::zero(p));
        for (long d = w.lo; d <= std::min(w.hi, k - 1); ++d) row[static_cast<size_t>(d - w.lo)] = pw[static_cast<size_t>(d)][static_cast<size_t>(e)];
        A.push_back(row);
        b.push_back(e == 0 ? x.c : Padic::zero(p));
      }
      continue;
    }
    FieldPtr F = cyclo_field(p, m);
    Padic fac = x.chr.alpha.pow(-m) * Padic::from_int(p, 1, rel).shift(m * k);
    std::vector<DifElement> cols;
    for (long d = w.lo; d <= w.hi; ++d)
      cols.push_back(iota(LaurentWindow::monomial(p, x.prec, d, Padic::from_int(p, 1, rel)), m, k - 1).scale(fac));
    for (long e = 0; e < k; ++e) {
      for (long i = 0; i < F->degree(); ++i) {
        std::vector<Padic> row;
        for (const auto& col : cols) row.push_back(col.coeff(e).coord(i));
        A.push_back(row);
        b.push_back(e == 0 && i == 0 ? x.c : Padic::zero(p));
      }
    }
  }
  SolveResult s = solve_linear(A, b, p);
  if (!s.consistent)
    fail(ErrorCode::NoSolutionInWindow, "no lift with degrees in [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) +
                                            "]; enlarge the window and retry");
  return RankOneElement::single(x.chr, k, LaurentWindow(p, x.prec, w.lo, s.x, true).trimmed());
}

Agreement lift_residual(const RankOneElement& xt, const DRFrameVector& x, const LiftWindow& w) {
  Agreement acc = fresh();
  const long k = x.chr.k;
  const long L = std::max(0L, k - 1);
  const long mag = x.c.is_zero() ? kInf : x.c.val();
  for (int m = w.level_lo; m <= w.level_hi; ++m) {
    if (m == 0) {
      Frame0 f0 = frame_level0(xt, L);
      for (long e = f0.emin; e < k; ++e) note_diff(acc, e == 0 ? f0.coeff(e) - x.c : f0.coeff(e), mag);
      continue;
    }
    DifElement y = frame_iota(xt, m, L);
    FieldPtr F = y.field();
    for (long e = -y.tshift(); e < k; ++e) {
      CycloElement d = e == 0 ? y.coeff(e) - CycloElement::scalar(F, x.c) : y.coeff(e);
      for (const auto& c : d.coords()) note_diff(acc, c, mag);
    }
  }
  acc.lo = w.level_lo;
  acc.hi = w.level_hi;
  return acc;
}

Cochain exp_from_lift(const RankOneElement& xt, long dmax) { return d1(delta_project(xt, dmax), dmax); }

Cochain exp_class(const DRFrameVector& x, const LiftWindow& w, long dmax) { return exp_from_lift(lift_solver(x, w), dmax); }

CoboundaryWitness coboundary_witness(const Cochain& z, const RankOneElement& w, const LiftWindow& levels, long dmax) {
  CoboundaryWitness r;
  Cochain b = z.flavor == Flavor::Phi ? d1(w, dmax) : d1psi(w, dmax);
  r.match = cochain_compare(z, b);
  r.regular = w.max_shift() <= 0 || frame_regular(w, levels);
  return r;
}

DifElement g_class(const DRFrameVector& x, int n, long L) {
  FieldPtr F = cyclo_field(x.p, n);
  return DifElement::constant(F, L, CycloElement::scalar(F, log_chi(x.p, x.prec) * x.c));
}

DRFrameVector dual_exp(const Cochain& z, int n, long L) {
  require_degree(z, 1);
  const RankOneElement& xe = z.entries[0];
  const int p = xe.prime();
  DifElement fr = frame_iota(xe, n, L);
  Padic c0 = t_project(fr.coeff(0), 0).coord(0);
  Padic lc = log_chi(p, xe.prec());
  if (!c0.is_zero() && c0.abs() - c0.val() <= 0) fail(ErrorCode::AccuracyFloorTooLow, "invariant line has no certified digits");
  if (c0.is_zero() && c0.abs() <= lc.val()) fail(ErrorCode::AccuracyFloorTooLow, "invariant line has no certified digits");
  Padic c = c0.is_zero() ? Padic::zero(p, c0.abs() - lc.val()) : c0 / lc;
  return {xe.character(), c, p, xe.prec()};
}

RankOneCharacter dual_character(const RankOneCharacter& chr) { return {chr.alpha.inv(), 1 - chr.k}; }

Padic pair_dR(const DRFrameVector& x, const DRFrameVector& y) {
  if (x.chr.k + y.chr.k != 1 || !(x.chr.alpha * y.chr.alpha - Padic::from_int(x.p, 1, const_rel(x.prec))).is_zero())
    fail(ErrorCode::DomainError, "pair_dR needs the dual character");
  return x.c * y.c;
}

Padic h2_functional(const RankOneElement& f, int levels) {
  const int p = f.prime();
  const long rel = const_rel(f.prec());
  if (f.weight() != 1 || !(f.character().alpha - Padic::from_int(p, 1, rel)).is_zero())
    fail(ErrorCode::DomainError, "h2_functional is defined on alpha = 1, weight 1");
  RankOneElement low = zero_like(f);
  long dmax = 0;
  bool polar = false;
  for (const auto& [j, g] : f.parts()) {
    if (j <= 0) {
      low.add(j, g);
      dmax = std::max(dmax, g.dmax());
    } else if (!g.is_zero() || g.tail() < kInf) {
      polar = true;
    }
  }
  Padic acc = Padic::zero(p);
  if (!low.parts().empty()) acc = reslog(collapse(low, 0, dmax + 40));
  if (!polar) return acc;
  for (const auto& [j, g] : f.parts()) {
    if (j <= 0) continue;
    if (g.lowdeg() < 0 || g.tail() < kInf) fail(ErrorCode::DomainError, "t-polar parts must be power series");
    // residue of t^{-j} g dt at T = 0 and at the primitive p^m-th roots of unity minus 1
    acc += level0_series(g, j - 1)[static_cast<size_t>(j - 1)];
    for (int m = 1; m <= levels; ++m) {
      CycloElement r = iota(g, m, j - 1).coeff(j - 1).shift(m * (j - 1));
      for (int s = m; s > 0; --s) r = trace_down(r);
      acc += r.coord(0);
    }
  }
  return acc;
}

Padic h2_class(const Cochain& z, int levels) {
  require_degree(z, 2);
  Padic v = h2_functional(z.entries[0], levels);
  return z.flavor == Flavor::Psi ? v : -v;
}

}  // namespace phigamma
