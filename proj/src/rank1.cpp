#include "phigamma/rank1.hpp"

#include <algorithm>

namespace phigamma {

namespace {

Padic ppow_padic(int p, long j, long rel) { return Padic::from_int(p, 1, rel).shift(j); }

Padic int_scalar(int p, const mpz_class& n, long rel) { return n == 0 ? Padic::zero(p) : Padic::from_int(p, n, rel); }

void merge(Agreement& acc, const Agreement& a) {
  acc.ok = acc.ok && a.ok;
  acc.worst_disc = std::min(acc.worst_disc, a.worst_disc);
  acc.certified = std::min(acc.certified, a.certified);
  acc.lo = std::min(acc.lo, a.lo);
  acc.hi = std::max(acc.hi, a.hi);
}

// Pad an exact-top window with exact zeros up to dmax so that gamma keeps that many degrees.
LaurentWindow widen(const LaurentWindow& f, long dmax) {
  if (!f.exact_top() || f.dmax() >= dmax) return f;
  std::vector<Padic> c = f.coeffs();
  c.resize(static_cast<size_t>(dmax - f.dmin() + 1), Padic::zero(f.prime()));
  return LaurentWindow(f.prime(), f.prec(), f.dmin(), std::move(c), true, f.tail());
}

bool structurally_in_nrig(const RankOneElement& x) { return x.max_shift() <= x.weight(); }

// Rewrite parts above the weight as lower parts by dividing by t, once nrig_check has
// confirmed that these parts vanish at the zeros of t.
RankOneElement normalize_nrig(const RankOneElement& x, long dmax) {
  RankOneElement r = x;
  const int p = x.prime();
  LaurentWindow t_inv_T = T_over_t(p, x.prec(), dmax);
  while (r.max_shift() > r.weight()) {
    long j = r.max_shift();
    RankOneElement next(r.character(), p, r.prec());
    for (const auto& [jj, f] : r.parts()) {
      if (jj == j)
        next.add(j - 1, (f * t_inv_T).shift_degree(-1));
      else
        next.add(jj, f);
    }
    r = next;
  }
  return r;
}

RankOneElement require_nrig(const RankOneElement& x) {
  if (structurally_in_nrig(x)) return x;
  if (!nrig_check(x)) fail(ErrorCode::NotInNrig, "element has a pole beyond t^{-k} in the D_dR frame");
  long dmax = 0;
  for (const auto& [j, f] : x.parts()) dmax = std::max(dmax, f.dmax());
  return normalize_nrig(x, dmax + 40);
}

}  // namespace

RankOneElement RankOneElement::single(const RankOneCharacter& chr, long j, const LaurentWindow& f) {
  RankOneElement r(chr, f.prime(), f.prec());
  r.add(j, f);
  return r;
}

LaurentWindow RankOneElement::part(long j) const {
  auto it = parts_.find(j);
  return it == parts_.end() ? LaurentWindow::zero(p_, prec_) : it->second;
}

long RankOneElement::max_shift() const {
  for (auto it = parts_.rbegin(); it != parts_.rend(); ++it)
    if (!it->second.is_zero()) return it->first;
  return -kInf;
}

void RankOneElement::add(long j, const LaurentWindow& f) {
  auto it = parts_.find(j);
  if (it == parts_.end())
    parts_.emplace(j, f);
  else
    it->second = it->second + f;
}

RankOneElement RankOneElement::operator+(const RankOneElement& o) const {
  RankOneElement r = *this;
  for (const auto& [j, f] : o.parts_) r.add(j, f);
  return r;
}

RankOneElement RankOneElement::operator-(const RankOneElement& o) const { return *this + o.scale(Padic::from_int(p_, -1, const_rel(prec_))); }

RankOneElement RankOneElement::scale(const Padic& s) const {
  RankOneElement r = *this;
  for (auto& [j, f] : r.parts_) f = f.scale(s);
  return r;
}

RankOneElement RankOneElement::with_character(const RankOneCharacter& chr) const {
  RankOneElement r = *this;
  r.chr_ = chr;
  return r;
}

Agreement rank1_compare(const RankOneElement& x, const RankOneElement& y, long slack) {
  Agreement acc;
  acc.lo = kInf;
  acc.hi = -kInf;
  std::vector<long> keys;
  for (const auto& kv : x.parts()) keys.push_back(kv.first);
  for (const auto& kv : y.parts()) keys.push_back(kv.first);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (long j : keys) merge(acc, compare(x.part(j), y.part(j), slack));
  return acc;
}

RankOneElement mod_phi(const RankOneElement& x) {
  RankOneElement r(x.character(), x.prime(), x.prec());
  const long rel = const_rel(x.prec());
  for (const auto& [j, f] : x.parts()) r.add(j, phi(f).scale(x.character().alpha * ppow_padic(x.prime(), -j, rel)));
  return r;
}

RankOneElement mod_psi(const RankOneElement& x) {
  RankOneElement r(x.character(), x.prime(), x.prec());
  const long rel = const_rel(x.prec());
  Padic ainv = x.character().alpha.inv();
  for (const auto& [j, f] : x.parts()) r.add(j, psi(f).scale(ainv * ppow_padic(x.prime(), j, rel)));
  return r;
}

RankOneElement mod_gamma(const RankOneElement& x, const Padic& a, long dmax_out) {
  RankOneElement r(x.character(), x.prime(), x.prec());
  for (const auto& [j, f] : x.parts()) r.add(j, gamma(f, a, dmax_out).scale(a.pow(x.weight() - j)));
  return r;
}

// nabla_0(t^{-j} f e) = t^{-(j-1)} partial(f) e + (k - j) t^{-j} f e.
RankOneElement nabla_i(const RankOneElement& x, long i) {
  RankOneElement r(x.character(), x.prime(), x.prec());
  const long rel = const_rel(x.prec());
  for (const auto& [j, f] : x.parts()) {
    if (f.is_zero() && f.tail() >= kInf) continue;
    r.add(j - 1, partial(f));
    long w = x.weight() - j - i;
    if (w != 0) r.add(j, f.scale(Padic::from_int(x.prime(), w, rel)));
  }
  return r;
}

LaurentWindow collapse(const RankOneElement& x, long J, long dmax) {
  if (x.max_shift() > J) fail(ErrorCode::DomainError, "collapse below the largest t-shift");
  LaurentWindow t = t_series(x.prime(), x.prec(), dmax);
  LaurentWindow acc = LaurentWindow::zero(x.prime(), x.prec());
  for (const auto& [j, f] : x.parts()) {
    if (j > J) continue;
    LaurentWindow g = f;
    for (long r = 0; r < J - j; ++r) g = g * t;
    acc = acc + g;
  }
  return acc;
}

DifElement frame_iota(const RankOneElement& x, int m, long L) {
  FieldPtr F = cyclo_field(x.prime(), m);
  const long rel = const_rel(x.prec());
  Padic am = x.character().alpha.pow(-m);
  DifElement acc = DifElement::zero(F, L);
  bool first = true;
  for (const auto& [j, f] : x.parts()) {
    DifElement term = iota(f, m, L).scale(am * ppow_padic(x.prime(), m * j, rel)).tmul(x.weight() - j);
    acc = first ? term : acc + term;
    first = false;
  }
  return acc;
}

bool nrig_check(const RankOneElement& x, int levels, long L) {
  for (int m = 1; m <= levels; ++m) {
    DifElement y = frame_iota(x, m, L);
    for (long e = -y.tshift(); e < 0; ++e)
      if (!y.coeff(e).is_zero()) return false;
  }
  return true;
}

RankOneElement nabla_chain(const RankOneElement& x, long h) {
  if (h < std::max(1L, x.weight())) fail(ErrorCode::HTooSmall, "h must be at least max(1, k)");
  RankOneElement y = require_nrig(x);
  for (long i = 0; i < h; ++i) y = nabla_i(y, i);
  if (y.max_shift() > x.weight() - h) fail(ErrorCode::DomainError, "nabla chain left t^h N_rig");
  return y;
}

RankOneElement nabla_chain_closed(const RankOneElement& x, long h) {
  RankOneElement r(x.character(), x.prime(), x.prec());
  const long rel = const_rel(x.prec());
  for (const auto& [j, g] : x.parts()) {
    long a = x.weight() - j;
    std::vector<LaurentWindow> d{g};
    for (long s = 1; s <= h; ++s) d.push_back(partial(d.back()));
    mpz_class binom = 1, falling = 1;
    for (long i = 0; i <= h; ++i) {
      if (i > 0) {
        binom = binom * (h - i + 1) / i;
        falling *= a - i + 1;
      }
      mpz_class c = binom * falling;
      if (c == 0) continue;
      r.add(i + j - h, d[static_cast<size_t>(h - i)].scale(int_scalar(x.prime(), c, rel)));
    }
  }
  return r;
}

RankOneElement tilde_partial(const RankOneElement& x) {
  RankOneElement y = nabla_i(require_nrig(x), 0);
  return y.with_character({x.character().alpha, x.weight() - 1});
}

Padic chi_gamma(int p, int n, long rel) {
  if (p == 2) fail(ErrorCode::DomainError, "odd primes only");
  mpz_class e = ppow(p, n - 1);
  return Padic::from_int(p, 1 + p, rel).pow(e.get_si());
}

long m_of_level(int p, int n) { return plog(chi_gamma(p, n, 40 + 2 * n)).value.val(); }

IwasawaClass big_exp(const RankOneElement& x, long h) {
  if (!rank1_compare(mod_psi(x), x).ok) fail(ErrorCode::NotPsiFixed, "psi(x) != x at precision");
  const int p = x.prime();
  const long rel = const_rel(x.prec());
  IwasawaClass c;
  c.y = nabla_chain(x, h);
  c.h = h;
  c.norm = Padic::from_int(p, p - 1, rel) * log0(Padic::from_int(p, 1 + p, rel));
  return c;
}

RankOneElement project_level(const IwasawaClass& c, int n) {
  return c.y.scale(log0(chi_gamma(c.y.prime(), n, const_rel(c.y.prec()))));
}

CycloElement T_L_project(const RankOneElement& x, int m, int target_level, long L) {
  CycloElement c = teval_zero(frame_iota(x, m, L));
  if (c.min_abs() <= 0) fail(ErrorCode::AccuracyFloorTooLow, "no certified digits left after iota");
  return t_project(c, target_level);
}

RankOneElement psi_fixed_element(int p, long prec, long k, const Padic& c0, const Padic& c1,
                                 const std::vector<Padic>& ci) {
  const long rel = const_rel(prec);
  RankOneCharacter chr{Padic::from_int(p, 1, rel), k};
  LaurentWindow u = cyclotomic_unit(p, prec);
  RankOneElement r(chr, p, prec);
  r.add(0, LaurentWindow::constant(p, prec, c0) + u.scale(c1));
  LaurentWindow g = u;
  for (size_t i = 0; i < ci.size(); ++i) {
    g = partial(g);
    if (!ci[i].is_exact_zero()) r.add(-static_cast<long>(i + 1), g.scale(ci[i]));
  }
  return r;
}

std::vector<InterpolationReport> interpolation_identity_checks(const RankOneElement& x, long h_max, int n, long L,
                                                               long dmax) {
  if (x.weight() != 0) fail(ErrorCode::DomainError, "the constant-term identity is checked for weight 0");
  if (h_max < 1) fail(ErrorCode::HTooSmall, "h must be at least 1");
  const int p = x.prime();
  const long rel = const_rel(x.prec());
  Padic a = chi_gamma(p, n, rel);
  long terms = 0;
  RankOneElement xt(x.character(), p, x.prec());
  for (const auto& [j, f] : x.parts()) {
    SeriesNablaResult s = nabla_over_gamma_minus_one(widen(f, dmax), a, x.weight() - j);
    terms = std::max(terms, s.terms);
    xt.add(j, s.value);
  }
  CycloElement t0 = teval_zero(frame_iota(x, n, L));
  Padic inv_log = plog(a).value.inv();
  auto low_val = [](const CycloElement& c) { return c.is_zero() ? c.min_abs() : c.min_val(); };
  std::vector<InterpolationReport> out;
  mpz_class fact = 1;
  for (long h = 1; h <= h_max; ++h) {
    if (h > 1) {
      xt = nabla_i(xt, h - 1);
      fact *= -(h - 1);
    }
    InterpolationReport rep;
    rep.terms = terms;
    DifElement lhs = frame_iota(xt, n, L);
    rep.lhs = lhs.coeff(0);
    rep.rhs = t0.scale(Padic::from_int(p, fact, rel) * inv_log);
    rep.discrepancy = disc_val(rep.lhs, rep.rhs);
    rep.certified = std::min(rep.lhs.min_abs(), rep.rhs.min_abs());
    for (long e = 1; e < h; ++e) rep.low_terms = std::min(rep.low_terms, low_val(lhs.coeff(e)));
    DifElement z = frame_iota(mod_phi(xt) - xt, n + 1, L);
    for (long e = -z.tshift(); e < h; ++e) {
      CycloElement c = z.coeff(e);
      rep.phi_disc = std::min(rep.phi_disc, low_val(c));
      rep.phi_certified = std::min(rep.phi_certified, c.min_abs());
    }
    out.push_back(rep);
  }
  return out;
}

InterpolationReport interpolation_identity_check(const RankOneElement& x, long h, int n, long L, long dmax) {
  return interpolation_identity_checks(x, h, n, L, dmax).back();
}

}  // namespace phigamma
