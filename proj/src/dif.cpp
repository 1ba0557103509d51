#include "phigamma/dif.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace phigamma {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long vfact(int p, long i) {
  long v = 0;
  for (long q = p; q <= i; q *= p) v += i / q;
  return v;
}

using Series = std::vector<CycloElement>;

Series mul_trunc(const Series& a, const Series& b, long L, const FieldPtr& F) {
  Series r(static_cast<size_t>(L + 1), CycloElement::zero(F));
  for (size_t i = 0; i < a.size() && static_cast<long>(i) <= L; ++i) {
    if (a[i].is_zero() && a[i].min_abs() >= kInf) continue;
    for (size_t j = 0; j < b.size() && static_cast<long>(i + j) <= L; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

struct UPowers {
  Series u, uinv;
  std::vector<Series> pos{}, neg{};
};

// Cached powers of u = zeta exp(t/p^n) - 1.  Power-basis coordinates of u^{-s} lose one
// absolute digit per factor, so the working precision grows with the deepest power requested.
UPowers& upowers(int p, int n, long L, long rel) {
  thread_local std::map<std::tuple<int, int, long>, std::pair<long, UPowers>> cache;
  auto key = std::make_tuple(p, n, L);
  auto it = cache.find(key);
  if (it != cache.end() && it->second.first >= rel) return it->second.second;
  rel = std::max(rel, it != cache.end() ? 2 * it->second.first : rel);
  FieldPtr F = cyclo_field(p, n);
  UPowers up;
  CycloElement one = CycloElement::zeta_pow(F, 0, rel);
  CycloElement z = CycloElement::zeta_pow(F, 1, rel);
  up.u.assign(static_cast<size_t>(L + 1), CycloElement::zero(F));
  up.u[0] = z - one;
  mpz_class fact = 1;
  for (long i = 1; i <= L; ++i) {
    fact *= i;
    up.u[static_cast<size_t>(i)] = z.scale(Padic::from_rational(p, 1, fact, rel).shift(-n * i));
  }
  up.uinv.assign(static_cast<size_t>(L + 1), CycloElement::zero(F));
  CycloElement b0 = up.u[0].inv();
  up.uinv[0] = b0;
  for (long k = 1; k <= L; ++k) {
    CycloElement s = CycloElement::zero(F);
    for (long i = 1; i <= k; ++i) s += up.u[static_cast<size_t>(i)] * up.uinv[static_cast<size_t>(k - i)];
    up.uinv[static_cast<size_t>(k)] = -(b0 * s);
  }
  Series unit(static_cast<size_t>(L + 1), CycloElement::zero(F));
  unit[0] = one;
  up.pos.push_back(unit);
  up.neg.push_back(unit);
  auto& slot = cache[key];
  slot = {rel, std::move(up)};
  return slot.second;
}

const Series& upow(UPowers& up, long m, long L, const FieldPtr& F) {
  auto& v = m >= 0 ? up.pos : up.neg;
  const Series& base = m >= 0 ? up.u : up.uinv;
  long am = m >= 0 ? m : -m;
  while (static_cast<long>(v.size()) <= am) v.push_back(mul_trunc(v.back(), base, L, F));
  return v[static_cast<size_t>(am)];
}

}  // namespace

DifElement::DifElement(FieldPtr f, long tshift, std::vector<CycloElement> c)
    : f_(std::move(f)), tshift_(tshift), c_(std::move(c)) {
  if (c_.empty()) c_.push_back(CycloElement::zero(f_));
  if (tshift_ < 0) {
    c_.insert(c_.begin(), static_cast<size_t>(-tshift_), CycloElement::zero(f_));
    tshift_ = 0;
  }
}

DifElement DifElement::zero(FieldPtr f, long L) {
  std::vector<CycloElement> c(static_cast<size_t>(L + 1), CycloElement::zero(f));
  return DifElement(f, 0, std::move(c));
}

DifElement DifElement::constant(FieldPtr f, long L, const CycloElement& c) { return monomial(std::move(f), L, 0, c); }

DifElement DifElement::monomial(FieldPtr f, long L, long e, const CycloElement& c) {
  long shift = std::max(0L, -e);
  std::vector<CycloElement> v(static_cast<size_t>(L + 1 + shift), CycloElement::zero(f));
  if (e + shift <= L + shift) v[static_cast<size_t>(e + shift)] = c;
  return DifElement(f, shift, std::move(v));
}

CycloElement DifElement::coeff(long e) const {
  long i = e + tshift_;
  if (i < 0) return CycloElement::zero(f_);
  if (i > tprec()) fail(ErrorCode::WindowExhausted, "t-coefficient beyond the known order");
  return c_[static_cast<size_t>(i)];
}

bool DifElement::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

long DifElement::certified_digits() const {
  long d = kInf;
  for (const auto& c : c_)
    if (!c.is_zero()) d = std::min(d, c.min_abs() - c.min_val());
  return d;
}

long DifElement::lowest_power() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return static_cast<long>(i) - tshift_;
  return kInf;
}

DifElement DifElement::operator+(const DifElement& o) const {
  if (f_ != o.f_) fail(ErrorCode::DomainError, "dif elements at different levels");
  long ts = std::max(tshift_, o.tshift_);
  long ord = std::min(order_bound(), o.order_bound());
  std::vector<CycloElement> v;
  for (long e = -ts; e < ord; ++e) v.push_back(coeff(e) + o.coeff(e));
  return DifElement(f_, ts, std::move(v));
}

DifElement DifElement::operator-() const {
  DifElement r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

DifElement DifElement::operator-(const DifElement& o) const { return *this + (-o); }

DifElement DifElement::operator*(const DifElement& o) const {
  if (f_ != o.f_) fail(ErrorCode::DomainError, "dif elements at different levels");
  long la = lowest_power(), lb = o.lowest_power();
  if (la >= kInf) la = -tshift_;
  if (lb >= kInf) lb = -o.tshift_;
  long ord = std::min(order_bound() + lb, o.order_bound() + la);
  long ts = tshift_ + o.tshift_;
  long len = ord + ts;
  std::vector<CycloElement> v = mul_trunc(c_, o.c_, len - 1, f_);
  return DifElement(f_, ts, std::move(v));
}

DifElement DifElement::scale(const CycloElement& s) const {
  DifElement r = *this;
  for (auto& c : r.c_) c = c * s;
  return r;
}

DifElement DifElement::scale(const Padic& s) const {
  DifElement r = *this;
  for (auto& c : r.c_) c = c.scale(s);
  return r;
}

DifElement DifElement::tmul(long e) const { return DifElement(f_, tshift_ - e, c_); }

DifElement DifElement::canonical() const {
  DifElement r = *this;
  while (r.tshift_ > 0 && r.c_.size() > 1 && r.c_[0].is_zero()) {
    r.c_.erase(r.c_.begin());
    --r.tshift_;
  }
  return r;
}

DifElement DifElement::cap_abs(long a) const {
  DifElement r = *this;
  for (auto& c : r.c_) c = c.cap_abs(a);
  return r;
}

Agreement dif_compare(const DifElement& x, const DifElement& y, long slack) {
  Agreement a;
  a.lo = std::min(-x.tshift(), -y.tshift());
  a.hi = std::min(x.order_bound(), y.order_bound()) - 1;
  for (long e = a.lo; e <= a.hi; ++e) {
    CycloElement cx = x.coeff(e), cy = y.coeff(e);
    CycloElement d = cx - cy;
    long mag = !cx.is_zero() ? cx.min_val() : (!cy.is_zero() ? cy.min_val() : kInf);
    for (const auto& c : d.coords()) {
      if (c.is_exact_zero()) continue;
      long dv = c.is_zero() ? c.abs() : c.val();
      a.worst_disc = std::min(a.worst_disc, dv);
      if (!c.is_zero() && c.val() < c.abs() - slack) a.ok = false;
      if (mag < kInf) a.certified = std::min(a.certified, c.abs() - mag);
    }
  }
  return a;
}

DifElement iota(const LaurentWindow& f, int n, long L) {
  if (n < 1) fail(ErrorCode::DomainError, "iota needs level >= 1");
  const int p = f.prime();
  FieldPtr F = cyclo_field(p, n);
  const long dn = F->degree();
  long hi = f.exact_top() ? f.highdeg() : f.dmax();
  long lo = f.tail() < kInf ? f.dmin() : std::min(0L, f.lowdeg());
  long depth = ((-lo + 63) / 64) * 64;
  const long rel = const_rel(f.prec()) + (n + 2) * L + depth + 16;
  UPowers& up = upowers(p, n, L, rel);
  Series acc(static_cast<size_t>(L + 1), CycloElement::zero(F));
  for (long m = lo; m <= hi; ++m) {
    Padic c = f.coeff(m);
    if (c.is_exact_zero()) continue;
    const Series& um = upow(up, m, L, F);
    for (long i = 0; i <= L; ++i) acc[static_cast<size_t>(i)] += um[static_cast<size_t>(i)].scale(c);
  }
  if (!f.exact_top()) {
    long vt = f.top_val_bound();
    if (vt < kInf) {
      for (long i = 0; i <= L; ++i) {
        long cap = floor_div(vt * dn + f.dmax() + 1 - i, dn) - n * i - vfact(p, i);
        acc[static_cast<size_t>(i)] = acc[static_cast<size_t>(i)].cap_abs(cap);
      }
    }
  }
  if (f.tail() < kInf) {
    // Unknown polar coefficients are modeled as growing at least like the image of phi.
    long s0 = -f.dmin();
    for (long i = 0; i <= L; ++i) {
      long cap = floor_div(f.tail() * dn - (s0 + 1 + i), dn) - n * i - vfact(p, i) - 1;
      acc[static_cast<size_t>(i)] = acc[static_cast<size_t>(i)].cap_abs(cap);
    }
  }
  return DifElement(F, 0, std::move(acc));
}

DifElement dif_gamma(const DifElement& x, const Padic& c) {
  const FieldPtr& F = x.field();
  long cm = mpz_class(c.residue(F->level()) % F->order()).get_si();
  std::vector<CycloElement> v;
  for (long i = 0; i <= x.tprec(); ++i) {
    long e = i - x.tshift();
    v.push_back(galois(x.coeffs()[static_cast<size_t>(i)], cm).scale(c.pow(e)));
  }
  return DifElement(F, x.tshift(), std::move(v));
}

CycloElement teval_zero(const DifElement& x) {
  DifElement y = x.canonical();
  if (y.tshift() > 0) fail(ErrorCode::PoleAtZero, "pole at t = 0");
  return y.coeff(0);
}

DifElement dif_embed_up(const DifElement& x) {
  std::vector<CycloElement> v;
  for (const auto& c : x.coeffs()) v.push_back(embed_up(c));
  return DifElement(cyclo_field(x.field()->prime(), x.level() + 1), x.tshift(), std::move(v));
}

DifElement dif_normalized_trace(const DifElement& x) {
  std::vector<CycloElement> v;
  for (const auto& c : x.coeffs()) v.push_back(normalized_trace(c));
  return DifElement(cyclo_field(x.field()->prime(), x.level() - 1), x.tshift(), std::move(v));
}

}  // namespace phigamma
