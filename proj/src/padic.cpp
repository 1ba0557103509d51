#include "phigamma/padic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace phigamma {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::WindowExhausted: return "WindowExhausted";
    case ErrorCode::NotInPhiImage: return "NotInPhiImage";
    case ErrorCode::AccuracyFloorTooLow: return "AccuracyFloorTooLow";
    case ErrorCode::PoleAtZero: return "PoleAtZero";
    case ErrorCode::NotInNrig: return "NotInNrig";
    case ErrorCode::HTooSmall: return "HTooSmall";
    case ErrorCode::NotPsiFixed: return "NotPsiFixed";
    case ErrorCode::SeriesNotConverged: return "SeriesNotConverged";
    case ErrorCode::NoSolutionInWindow: return "NoSolutionInWindow";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
  }
  return "KernelError";
}

const mpz_class& ppow(int p, long k) {
  thread_local std::map<int, std::vector<mpz_class>> cache;
  auto& v = cache[p];
  if (v.empty()) v.emplace_back(1);
  while (static_cast<long>(v.size()) <= k) v.push_back(v.back() * p);
  return v[k];
}

long vp(int p, const mpz_class& n) {
  if (n == 0) return kInf;
  mpz_class t = n;
  return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

long vp(int p, long n) {
  if (n == 0) return kInf;
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

static long sat_add(long a, long b) {
  if (a >= kInf || b >= kInf) return kInf;
  return a + b;
}

void Padic::adopt_prime(int p) {
  if (p_ == 0) p_ = p;
}

Padic Padic::zero(int p, long abs) {
  Padic z;
  z.p_ = p;
  z.zabs_ = abs;
  return z;
}

Padic Padic::from_parts(int p, long val, const mpz_class& unit, long rel) {
  if (rel <= 0) return zero(p, val);
  mpz_class u = unit;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), ppow(p, rel).get_mpz_t());
  if (u == 0) return zero(p, val + rel);
  long k = static_cast<long>(mpz_remove(u.get_mpz_t(), u.get_mpz_t(), mpz_class(p).get_mpz_t()));
  if (k >= rel) return zero(p, val + rel);
  Padic r;
  r.p_ = p;
  r.val_ = val + k;
  r.rel_ = rel - k;
  r.zabs_ = kInf;
  r.unit_ = u;
  if (k > 0) mpz_fdiv_r(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), ppow(p, r.rel_).get_mpz_t());
  return r;
}

Padic Padic::from_int(int p, const mpz_class& n, long rel) {
  if (n == 0) return zero(p);
  mpz_class u = n;
  long v = static_cast<long>(mpz_remove(u.get_mpz_t(), u.get_mpz_t(), mpz_class(p).get_mpz_t()));
  return from_parts(p, v, u, rel);
}

Padic Padic::integer(int p, long n, long abs) {
  if (n == 0) return zero(p);
  long v = vp(p, n);
  return from_int(p, mpz_class(n), std::max(1L, abs - v));
}

Padic Padic::from_rational(int p, const mpz_class& num, const mpz_class& den, long rel) {
  if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
  if (num == 0) return zero(p);
  mpz_class a = num, b = den;
  mpz_class pp(p);
  long va = static_cast<long>(mpz_remove(a.get_mpz_t(), a.get_mpz_t(), pp.get_mpz_t()));
  long vb = static_cast<long>(mpz_remove(b.get_mpz_t(), b.get_mpz_t(), pp.get_mpz_t()));
  const mpz_class& m = ppow(p, rel);
  mpz_class binv;
  mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
  mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), m.get_mpz_t());
  return from_parts(p, va - vb, a * binv, rel);
}

std::vector<int> Padic::digits() const {
  std::vector<int> d;
  if (is_zero()) return d;
  mpz_class u = unit_;
  for (long i = 0; i < rel_; ++i) {
    d.push_back(static_cast<int>(mpz_fdiv_ui(u.get_mpz_t(), p_)));
    mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p_);
  }
  return d;
}

Padic Padic::operator-() const {
  if (is_zero()) return *this;
  Padic r = *this;
  r.unit_ = ppow(p_, rel_) - unit_;
  return r;
}

Padic Padic::operator+(const Padic& o) const {
  if (is_zero()) {
    Padic r = o.cap_abs(zabs_);
    r.adopt_prime(p_);
    return r;
  }
  if (o.is_zero()) return cap_abs(o.zabs_);
  const int p = p_;
  long v = std::min(val_, o.val_);
  long a = std::min(abs(), o.abs());
  long n = a - v;
  mpz_class s;
  if (val_ < a) s += unit_ * ppow(p, val_ - v);
  if (o.val_ < a) s += o.unit_ * ppow(p, o.val_ - v);
  return from_parts(p, v, s, n);
}

Padic Padic::operator*(const Padic& o) const {
  int p = p_ ? p_ : o.p_;
  if (is_zero() || o.is_zero()) {
    long za = is_zero() ? zabs_ : kInf;
    long zb = o.is_zero() ? o.zabs_ : kInf;
    long r = kInf;
    if (is_zero() && o.is_zero()) {
      if (za < kInf && zb < kInf) r = za + zb;
    } else if (is_zero()) {
      r = sat_add(za, o.val_);
    } else {
      r = sat_add(zb, val_);
    }
    return zero(p, r);
  }
  long rel = std::min(rel_, o.rel_);
  Padic r;
  r.p_ = p;
  r.val_ = val_ + o.val_;
  r.rel_ = rel;
  r.unit_ = unit_ * o.unit_;
  mpz_fdiv_r(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), ppow(p, rel).get_mpz_t());
  return r;
}

Padic Padic::inv() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero at precision");
  Padic r = *this;
  r.val_ = -val_;
  mpz_invert(r.unit_.get_mpz_t(), unit_.get_mpz_t(), ppow(p_, rel_).get_mpz_t());
  return r;
}

Padic Padic::operator/(const Padic& o) const {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero at precision");
  if (is_zero()) return zero(p_ ? p_ : o.p_, zabs_ >= kInf ? kInf : zabs_ - o.val_);
  return *this * o.inv();
}

Padic Padic::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  Padic base = *this;
  Padic r = from_int(p_, 1, is_zero() ? 1 : rel_);
  if (is_zero() && e > 0) {
    return zero(p_, zabs_ >= kInf ? kInf : zabs_ * e);
  }
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Padic Padic::mul_int(long n) const {
  if (n == 0) return zero(p_);
  long v = vp(p_, n);
  if (is_zero()) return zero(p_, sat_add(zabs_, v));
  Padic r = *this;
  mpz_class m(n);
  for (long i = 0; i < v; ++i) m /= p_;
  r.val_ += v;
  r.unit_ *= m;
  mpz_fdiv_r(r.unit_.get_mpz_t(), r.unit_.get_mpz_t(), ppow(p_, rel_).get_mpz_t());
  return r;
}

Padic Padic::shift(long k) const {
  Padic r = *this;
  if (is_zero()) {
    r.zabs_ = sat_add(zabs_, k);
    return r;
  }
  r.val_ += k;
  return r;
}

Padic Padic::cap_abs(long a) const {
  if (a >= abs()) return *this;
  if (is_zero()) return zero(p_, a);
  if (a <= val_) return zero(p_, a);
  return cap_rel(a - val_);
}

Padic Padic::cap_rel(long r) const {
  if (is_zero() || r >= rel_) return *this;
  if (r <= 0) return zero(p_, val_);
  Padic out = *this;
  out.rel_ = r;
  mpz_fdiv_r(out.unit_.get_mpz_t(), unit_.get_mpz_t(), ppow(p_, r).get_mpz_t());
  return out;
}

mpz_class Padic::residue(long a) const {
  if (is_zero()) return 0;
  if (val_ < 0) fail(ErrorCode::DomainError, "residue of a non-integral value");
  if (a <= val_) return 0;
  mpz_class u = unit_;
  mpz_fdiv_r(u.get_mpz_t(), u.get_mpz_t(), ppow(p_, std::min(rel_, a - val_)).get_mpz_t());
  return u * ppow(p_, val_);
}

std::string Padic::str() const {
  std::ostringstream os;
  if (is_zero()) {
    os << "O(" << p_ << "^";
    if (zabs_ >= kInf) os << "inf";
    else os << zabs_;
    os << ")";
    return os.str();
  }
  os << p_ << "^" << val_ << "*" << unit_.get_str() << "+O(" << p_ << "^" << abs() << ")";
  return os.str();
}

long disc_val(const Padic& a, const Padic& b) {
  Padic d = a - b;
  return d.is_zero() ? d.abs() : d.val();
}

Padic binom(const Padic& a, long k) {
  int p = a.prime();
  if (k < 0) return Padic::zero(p);
  if (!a.is_zero() && a.val() < 0) fail(ErrorCode::DomainError, "binom needs an integral argument");
  long a_abs = a.abs() >= kInf ? 64 : a.abs();
  long guard = a_abs + 2 * k + 8;
  Padic num = Padic::from_int(p, 1, guard);
  for (long i = 0; i < k; ++i) num *= a - Padic::integer(p, i, guard);
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  Padic r = num / Padic::from_int(p, f, guard);
  if (!r.is_exact_zero() && r.abs() <= 0) fail(ErrorCode::PrecisionExhausted, "binom consumed all digits");
  return r;
}

Padic binom_int(int p, long a, long k, long rel) {
  if (k < 0) return Padic::zero(p);
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), mpz_class(a).get_mpz_t(), static_cast<unsigned long>(k));
  return Padic::from_int(p, r, rel);
}

static long floor_log(int p, long n) {
  long k = 0;
  while (n >= p) {
    n /= p;
    ++k;
  }
  return k;
}

LogResult plog(const Padic& a, long terms) {
  int p = a.prime();
  if (a.is_zero() || a.val() != 0) fail(ErrorCode::DomainError, "log needs a principal unit");
  Padic one = Padic::from_int(p, 1, a.abs() + 8);
  Padic x = a - one;
  if (!x.is_zero() && x.val() < 1) fail(ErrorCode::DomainError, "log needs a principal unit");
  LogResult out;
  out.terms = terms;
  if (x.is_zero()) {
    out.value = Padic::zero(p, x.abs());
    out.error_val = x.abs();
    return out;
  }
  long v = x.val();
  long guard = a.abs() + 8 + floor_log(p, terms + 1);
  Padic sum = Padic::zero(p);
  Padic xk = x;
  for (long k = 1; k <= terms; ++k) {
    Padic term = xk / Padic::from_int(p, k, guard);
    sum = (k % 2 == 1) ? sum + term : sum - term;
    xk = xk * x;
  }
  out.error_val = (terms + 1) * v - floor_log(p, terms + 1);
  out.value = sum.cap_abs(out.error_val);
  return out;
}

LogResult plog(const Padic& a) {
  int p = a.prime();
  if (a.is_zero() || a.val() != 0) fail(ErrorCode::DomainError, "log needs a principal unit");
  Padic x = a - Padic::from_int(p, 1, a.abs() + 8);
  if (x.is_zero()) return plog(a, 1);
  if (x.val() < 1) fail(ErrorCode::DomainError, "log needs a principal unit");
  long v = x.val();
  long target = a.abs();
  long r = 1;
  while ((r + 1) * v - floor_log(p, r + 1) < target) ++r;
  return plog(a, r);
}

Padic log0(const Padic& a) {
  Padic l = plog(a).value;
  if (l.is_zero()) return l;
  return l.shift(-l.val());
}

mpz_class teichmuller(int p, long a, long N) {
  const mpz_class& m = ppow(p, N);
  mpz_class x(a);
  mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  if (x % p == 0) fail(ErrorCode::DomainError, "Teichmuller lift of a non-unit");
  for (long i = 0; i < N; ++i) mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), p, m.get_mpz_t());
  return x;
}

}  // namespace phigamma
