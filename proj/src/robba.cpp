#include "phigamma/robba.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "phigamma/cyclo.hpp"

namespace phigamma {

namespace {

size_t ix(long d, long lo) { return static_cast<size_t>(d - lo); }

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

long vfloor(const Padic& x) { return x.is_zero() ? x.abs() : x.val(); }

// Product of coefficient vectors a (from degree alo) and b (from degree blo)
// restricted to output degrees [lo, hi].
std::vector<Padic> mul_range(int p, long alo, const std::vector<Padic>& a, long blo, const std::vector<Padic>& b,
                             long lo, long hi) {
  std::vector<Padic> out(static_cast<size_t>(std::max(0L, hi - lo + 1)), Padic::zero(p));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_exact_zero()) continue;
    long di = alo + static_cast<long>(i);
    long jlo = std::max(0L, lo - di - blo);
    long jhi = std::min(static_cast<long>(b.size()) - 1, hi - di - blo);
    for (long j = jlo; j <= jhi; ++j) {
      const Padic& y = b[static_cast<size_t>(j)];
      if (y.is_exact_zero()) continue;
      out[ix(di + blo + j, lo)] += a[i] * y;
    }
  }
  return out;
}

Padic int_const(int p, const mpz_class& n, long rel) { return n == 0 ? Padic::zero(p) : Padic::from_int(p, n, rel); }

}  // namespace

LaurentWindow::LaurentWindow(int p, long prec, long dmin, std::vector<Padic> coeffs, bool exact_top, long tail)
    : p_(p), prec_(prec), dmin_(dmin), exact_top_(exact_top), tail_(tail), c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(tail_ >= kInf ? Padic::zero(p) : Padic::zero(p, tail_));
  dmax_ = dmin_ + static_cast<long>(c_.size()) - 1;
  if (dmin_ > 0) {
    Padic pad = tail_ >= kInf ? Padic::zero(p) : Padic::zero(p, tail_);
    c_.insert(c_.begin(), static_cast<size_t>(dmin_), pad);
    dmin_ = 0;
  }
  if (dmax_ < 0 && exact_top_) {
    c_.resize(c_.size() + static_cast<size_t>(-dmax_), Padic::zero(p));
    dmax_ = 0;
  }
}

LaurentWindow LaurentWindow::zero(int p, long prec) { return LaurentWindow(p, prec, 0, {Padic::zero(p)}); }

LaurentWindow LaurentWindow::monomial(int p, long prec, long deg, const Padic& c) {
  long lo = std::min(0L, deg), hi = std::max(0L, deg);
  std::vector<Padic> v(static_cast<size_t>(hi - lo + 1), Padic::zero(p));
  v[ix(deg, lo)] = c;
  return LaurentWindow(p, prec, lo, std::move(v));
}

Padic LaurentWindow::coeff(long d) const {
  if (d >= dmin_ && d <= dmax_) return c_[ix(d, dmin_)];
  if (d > dmax_) {
    if (exact_top_) return Padic::zero(p_);
    fail(ErrorCode::WindowExhausted, "coefficient above the known window");
  }
  return tail_ >= kInf ? Padic::zero(p_) : Padic::zero(p_, tail_);
}

void LaurentWindow::set(long d, const Padic& c) {
  if (d < dmin_ || d > dmax_) fail(ErrorCode::WindowExhausted, "set outside the window");
  c_[ix(d, dmin_)] = c;
}

long LaurentWindow::lowdeg() const {
  if (tail_ < kInf) return dmin_;
  for (long d = dmin_; d <= dmax_; ++d)
    if (!c_[ix(d, dmin_)].is_exact_zero()) return d;
  return 0;
}

long LaurentWindow::highdeg() const {
  if (!exact_top_) return dmax_;
  for (long d = dmax_; d >= dmin_; --d)
    if (!c_[ix(d, dmin_)].is_exact_zero()) return d;
  return 0;
}

long LaurentWindow::vmin_range(long lo, long hi) const {
  long v = kInf;
  for (long d = std::max(lo, dmin_); d <= std::min(hi, dmax_); ++d) {
    const Padic& x = c_[ix(d, dmin_)];
    if (!x.is_exact_zero()) v = std::min(v, vfloor(x));
  }
  return v;
}

long LaurentWindow::vmin() const { return vmin_range(dmin_, dmax_); }

long LaurentWindow::top_val_bound() const {
  if (exact_top_) return kInf;
  long span = std::max(8L, (dmax_ - dmin_) / 2);
  long v = vmin_range(dmax_ - span, dmax_);
  if (v >= kInf) return kInf;
  return v - 1;
}

long LaurentWindow::loss() const {
  long l = 0;
  for (const auto& x : c_)
    if (!x.is_zero()) l = std::max(l, prec_ - x.rel());
  return l;
}

bool LaurentWindow::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

LaurentWindow LaurentWindow::truncate_top(long d) const {
  if (d >= dmax_ && !exact_top_) return *this;
  LaurentWindow r = *this;
  if (d < dmax_) {
    r.c_.resize(static_cast<size_t>(std::max(0L, d - dmin_ + 1)));
    r.dmax_ = d;
  } else {
    r.c_.resize(static_cast<size_t>(d - dmin_ + 1), Padic::zero(p_));
    r.dmax_ = d;
  }
  r.exact_top_ = false;
  return r;
}

LaurentWindow LaurentWindow::restrict_bottom(long d) const {
  if (d <= dmin_) return *this;
  LaurentWindow r = *this;
  long t = tail_;
  for (long k = dmin_; k < d && k <= dmax_; ++k) t = std::min(t, vfloor(c_[ix(k, dmin_)]));
  r.c_.erase(r.c_.begin(), r.c_.begin() + static_cast<long>(std::min(d, dmax_ + 1) - dmin_));
  r.dmin_ = d;
  r.tail_ = t;
  return r;
}

LaurentWindow LaurentWindow::cap_abs(long a) const {
  LaurentWindow r = *this;
  for (auto& x : r.c_) x = x.cap_abs(a);
  r.tail_ = std::min(r.tail_, a);
  return r;
}

LaurentWindow LaurentWindow::with_prec(long prec) const {
  LaurentWindow r = *this;
  r.prec_ = prec;
  return r;
}

LaurentWindow LaurentWindow::trimmed() const {
  long lo = dmin_, hi = dmax_;
  if (exact_top_)
    while (hi > 0 && hi > lo && c_[ix(hi, dmin_)].is_exact_zero()) --hi;
  if (tail_ >= kInf)
    while (lo < 0 && lo < hi && c_[ix(lo, dmin_)].is_exact_zero()) ++lo;
  std::vector<Padic> v(c_.begin() + (lo - dmin_), c_.begin() + (hi - dmin_ + 1));
  return LaurentWindow(p_, prec_, lo, std::move(v), exact_top_, tail_);
}

LaurentWindow LaurentWindow::operator-() const {
  LaurentWindow r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

LaurentWindow LaurentWindow::operator+(const LaurentWindow& o) const {
  int p = p_ ? p_ : o.p_;
  long lo = std::min(dmin_, o.dmin_);
  bool ex = exact_top_ && o.exact_top_;
  long hi;
  if (ex) {
    hi = std::max(dmax_, o.dmax_);
  } else {
    hi = std::min(exact_top_ ? kInf : dmax_, o.exact_top_ ? kInf : o.dmax_);
  }
  std::vector<Padic> v;
  v.reserve(static_cast<size_t>(std::max(0L, hi - lo + 1)));
  for (long d = lo; d <= hi; ++d) v.push_back(coeff(d) + o.coeff(d));
  return LaurentWindow(p, std::max(prec_, o.prec_), lo, std::move(v), ex, std::min(tail_, o.tail_));
}

LaurentWindow LaurentWindow::operator-(const LaurentWindow& o) const { return *this + (-o); }

LaurentWindow LaurentWindow::scale(const Padic& s) const {
  LaurentWindow r = *this;
  for (auto& x : r.c_) x = x * s;
  if (tail_ < kInf) r.tail_ = s.is_zero() ? s.abs() + tail_ : tail_ + s.val();
  return r;
}

LaurentWindow LaurentWindow::shift_degree(long k) const {
  return LaurentWindow(p_, prec_, dmin_ + k, c_, exact_top_, tail_);
}

LaurentWindow LaurentWindow::operator*(const LaurentWindow& g) const {
  const LaurentWindow& f = *this;
  int p = f.p_ ? f.p_ : g.p_;
  long fl = f.lowdeg(), gl = g.lowdeg();
  bool ex = f.exact_top_ && g.exact_top_;
  long hi;
  if (ex) {
    hi = std::max({f.dmax_, g.dmax_, f.highdeg() + g.highdeg()});
  } else {
    hi = std::min(f.exact_top_ ? kInf : f.dmax_ + gl, g.exact_top_ ? kInf : g.dmax_ + fl);
  }
  long lo = (f.tail_ < kInf || g.tail_ < kInf) ? f.dmin_ + g.dmin_ : std::min({f.dmin_, g.dmin_, fl + gl});
  if (hi < lo) hi = lo;
  std::vector<Padic> v = mul_range(p, f.dmin_, f.c_, g.dmin_, g.c_, lo, hi);
  auto vall = [](const LaurentWindow& w) {
    long v0 = std::min(w.vmin(), w.tail_);
    return std::min(v0, w.top_val_bound());
  };
  auto apply_tail_caps = [&](const LaurentWindow& a, const LaurentWindow& b) {
    if (a.tail_ >= kInf) return;
    // suffix minima of b's valuations
    std::vector<long> suf(b.c_.size() + 1, b.top_val_bound());
    for (long k = static_cast<long>(b.c_.size()) - 1; k >= 0; --k) {
      const Padic& x = b.c_[static_cast<size_t>(k)];
      suf[static_cast<size_t>(k)] = std::min(suf[static_cast<size_t>(k) + 1], x.is_exact_zero() ? kInf : vfloor(x));
    }
    for (long n = lo; n <= hi; ++n) {
      long kmin = n - a.dmin_ + 1 - b.dmin_;
      long bound = kInf;
      if (kmin <= 0) bound = suf[0];
      else if (kmin < static_cast<long>(suf.size())) bound = suf[static_cast<size_t>(kmin)];
      else bound = b.top_val_bound();
      if (bound < kInf) v[ix(n, lo)] = v[ix(n, lo)].cap_abs(a.tail_ + bound);
    }
  };
  apply_tail_caps(f, g);
  apply_tail_caps(g, f);
  long tail = kInf;
  if (f.tail_ < kInf || g.tail_ < kInf) {
    long a = f.tail_ < kInf ? f.tail_ + vall(g) : kInf;
    long b = g.tail_ < kInf ? g.tail_ + vall(f) : kInf;
    tail = std::min(a, b);
  }
  return LaurentWindow(p, std::max(f.prec_, g.prec_), lo, std::move(v), ex, tail);
}

LaurentWindow series_mul(const LaurentWindow& f, const LaurentWindow& g) { return f * g; }

LaurentWindow t_series(int p, long prec, long dmax) {
  long rel = const_rel(prec);
  std::vector<Padic> v(static_cast<size_t>(dmax + 1), Padic::zero(p));
  for (long n = 1; n <= dmax; ++n) v[static_cast<size_t>(n)] = Padic::from_rational(p, n % 2 ? 1 : -1, n, rel);
  return LaurentWindow(p, prec, 0, std::move(v), false);
}

LaurentWindow t_over_T(int p, long prec, long dmax) {
  long rel = const_rel(prec);
  std::vector<Padic> v(static_cast<size_t>(dmax + 1), Padic::zero(p));
  for (long n = 0; n <= dmax; ++n) v[static_cast<size_t>(n)] = Padic::from_rational(p, n % 2 ? -1 : 1, n + 1, rel);
  return LaurentWindow(p, prec, 0, std::move(v), false);
}

LaurentWindow T_over_t(int p, long prec, long dmax) { return series_invert(t_over_T(p, prec, dmax), dmax); }

LaurentWindow one_plus_T_pow(const Padic& a, long prec, long dmax) {
  int p = a.prime();
  std::vector<Padic> v;
  for (long k = 0; k <= dmax; ++k) v.push_back(binom(a, k).cap_rel(const_rel(prec)));
  return LaurentWindow(p, prec, 0, std::move(v), false);
}

LaurentWindow one_plus_T_pow(int p, long a, long prec, long dmax) {
  long rel = const_rel(prec);
  if (a >= 0) {
    std::vector<Padic> v;
    for (long k = 0; k <= std::max(a, dmax); ++k) v.push_back(k <= a ? binom_int(p, a, k, rel) : Padic::zero(p));
    return LaurentWindow(p, prec, 0, std::move(v), true);
  }
  std::vector<Padic> v;
  for (long k = 0; k <= dmax; ++k) v.push_back(binom_int(p, a, k, rel));
  return LaurentWindow(p, prec, 0, std::move(v), false);
}

LaurentWindow cyclotomic_unit(int p, long prec) {
  long rel = const_rel(prec);
  return LaurentWindow(p, prec, -1, {Padic::from_int(p, 1, rel), Padic::from_int(p, 1, rel)});
}

LaurentWindow series_invert(const LaurentWindow& f, long dmax_out) {
  int p = f.prime();
  if (f.tail() < kInf) fail(ErrorCode::NotInvertible, "cannot invert a series with an unbounded polar tail");
  long m = -kInf;
  for (long d = f.dmin(); d <= f.dmax(); ++d) {
    if (!f.coeff(d).is_zero()) {
      m = d;
      break;
    }
  }
  if (m == -kInf) fail(ErrorCode::NotInvertible, "no invertible leading coefficient");
  Padic c = f.coeff(m);
  Padic ci = c.inv();
  long K = dmax_out + m;
  bool monomial = f.exact_top() && f.highdeg() == m;
  if (!f.exact_top()) K = std::min(K, f.dmax() - m);
  if (K < 0) fail(ErrorCode::WindowExhausted, "inverse window is empty");
  std::vector<Padic> h(static_cast<size_t>(K + 1), Padic::zero(p));
  for (long k = 1; k <= K; ++k) h[static_cast<size_t>(k)] = f.coeff(k + m) * ci;
  std::vector<Padic> b(static_cast<size_t>(K + 1), Padic::zero(p));
  b[0] = Padic::from_int(p, 1, const_rel(f.prec()));
  for (long k = 1; k <= K; ++k) {
    Padic s = Padic::zero(p);
    for (long i = 1; i <= k; ++i) {
      if (h[static_cast<size_t>(i)].is_exact_zero()) continue;
      s += h[static_cast<size_t>(i)] * b[static_cast<size_t>(k - i)];
    }
    b[static_cast<size_t>(k)] = -s;
  }
  for (auto& x : b) x = x * ci;
  if (monomial) {
    b.resize(1);
    return LaurentWindow(p, f.prec(), -m, std::move(b), true);
  }
  return LaurentWindow(p, f.prec(), -m, std::move(b), false);
}

namespace {

// Coefficients of u(S)^{-1}, u(S) = sum_{i<p} C(p, p-i) S^i, exact integers.
const std::vector<mpz_class>& u_inverse(int p, long n) {
  thread_local std::map<int, std::vector<mpz_class>> cache;
  auto& v = cache[p];
  std::vector<mpz_class> u(static_cast<size_t>(p));
  for (int i = 0; i < p; ++i) mpz_bin_uiui(u[static_cast<size_t>(i)].get_mpz_t(), p, p - i);
  if (v.empty()) v.emplace_back(1);
  while (static_cast<long>(v.size()) <= n) {
    long k = static_cast<long>(v.size());
    mpz_class s = 0;
    for (int i = 1; i < p && i <= k; ++i) s += u[static_cast<size_t>(i)] * v[static_cast<size_t>(k - i)];
    v.push_back(-s);
  }
  return v;
}

}  // namespace

LaurentWindow phi(const LaurentWindow& f) {
  const int p = f.prime();
  const long rel = const_rel(f.prec());
  const bool ex = f.exact_top();
  // Positive part by Horner in P = (1+T)^p - 1.
  long hi_in = ex ? f.highdeg() : f.dmax();
  long top = ex ? std::max(p * std::max(0L, f.dmax()), 0L) : f.dmax();
  std::vector<Padic> P(static_cast<size_t>(p + 1), Padic::zero(p));
  for (int k = 1; k <= p; ++k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), p, k);
    P[static_cast<size_t>(k)] = Padic::from_int(p, b, rel);
  }
  std::vector<Padic> acc(1, Padic::zero(p));
  long acc_hi = 0;
  for (long d = hi_in; d >= 0; --d) {
    long new_hi = std::min(top, acc_hi + p);
    std::vector<Padic> next = mul_range(p, 0, acc, 0, P, 0, new_hi);
    next[0] += f.coeff(d);
    acc = std::move(next);
    acc_hi = new_hi;
  }
  // Negative part by Horner in W = phi(1/T) as a series in S = 1/T.
  long M = f.tail() < kInf ? -f.dmin() : -std::min(0L, f.lowdeg());
  std::vector<Padic> neg;  // index s = S-degree
  long s_max = 0;
  long tail_out = kInf;
  if (M > 0) {
    long vneg = kInf, targ = 0;
    for (long m = 1; m <= M; ++m) {
      Padic c = f.coeff(-m);
      if (c.is_exact_zero()) continue;
      vneg = std::min(vneg, vfloor(c));
      targ = std::max(targ, std::min(c.abs(), rel));
    }
    if (f.tail() < kInf) targ = std::max(targ, f.tail());
    if (vneg >= kInf) vneg = targ;
    // Deep enough that the dropped tail stays below targ after localizing at level >= 2.
    long E = p * (std::max(0L, targ - vneg) + 2) + M;
    s_max = p * M + E;
    const auto& U = u_inverse(p, s_max);
    std::vector<Padic> W(static_cast<size_t>(s_max + 1), Padic::zero(p));
    for (long s = p; s <= s_max; ++s) W[static_cast<size_t>(s)] = int_const(p, U[static_cast<size_t>(s - p)], rel);
    std::vector<Padic> a(1, f.coeff(-M));
    for (long m = M - 1; m >= 0; --m) {
      std::vector<Padic> next = mul_range(p, 0, a, 0, W, 0, s_max);
      if (m >= 1) next[0] += f.coeff(-m);
      a = std::move(next);
    }
    neg = std::move(a);
    tail_out = vneg + ceil_div(E + 1, p - 1);
    if (f.tail() < kInf) {
      for (long s = p * (M + 1); s <= s_max; ++s) neg[static_cast<size_t>(s)] = neg[static_cast<size_t>(s)].cap_abs(f.tail());
      tail_out = std::min(tail_out, f.tail());
    }
  }
  long lo = -s_max;
  std::vector<Padic> v(static_cast<size_t>(top - lo + 1), Padic::zero(p));
  for (long s = 1; s <= s_max; ++s) v[ix(-s, lo)] = neg[static_cast<size_t>(s)];
  for (long d = 0; d <= std::min(top, acc_hi); ++d) v[ix(d, lo)] = acc[static_cast<size_t>(d)];
  return LaurentWindow(p, f.prec(), lo, std::move(v), ex, tail_out);
}

const std::vector<mpz_class>& psi_row_pos(int p, long n) {
  thread_local std::map<int, std::vector<std::vector<mpz_class>>> cache;
  auto& rows = cache[p];
  std::vector<mpz_class> cp(static_cast<size_t>(p + 1));
  for (int k = 0; k <= p; ++k) mpz_bin_uiui(cp[static_cast<size_t>(k)].get_mpz_t(), p, k);
  while (static_cast<long>(rows.size()) <= n) {
    long m = static_cast<long>(rows.size());
    if (m < p) {
      rows.push_back({mpz_class(m % 2 ? -1 : 1)});
      continue;
    }
    // psi(T^m) = T psi(T^{m-p}) - sum_{k=1}^{p-1} C(p,k) psi(T^{m-p+k})
    std::vector<mpz_class> r(static_cast<size_t>(m / p + 1), 0);
    const auto& base = rows[static_cast<size_t>(m - p)];
    for (size_t j = 0; j < base.size(); ++j) r[j + 1] += base[j];
    for (int k = 1; k < p; ++k) {
      const auto& row = rows[static_cast<size_t>(m - p + k)];
      for (size_t j = 0; j < row.size(); ++j) r[j] -= cp[static_cast<size_t>(k)] * row[j];
    }
    rows.push_back(std::move(r));
  }
  return rows[static_cast<size_t>(n)];
}

const std::vector<mpz_class>& psi_row_neg(int p, long m) {
  thread_local std::map<int, std::vector<std::vector<mpz_class>>> cache;
  auto& rows = cache[p];
  if (rows.empty()) rows.push_back({mpz_class(1)});  // psi(1) = 1, stored from degree 0
  std::vector<mpz_class> cp(static_cast<size_t>(p + 1));
  for (int k = 0; k <= p; ++k) mpz_bin_uiui(cp[static_cast<size_t>(k)].get_mpz_t(), p, k);
  while (static_cast<long>(rows.size()) <= m) {
    long M = static_cast<long>(rows.size());
    std::vector<mpz_class> r(static_cast<size_t>(M), 0);  // degrees -M .. -1
    if (M < p) {
      // psi(T^{-M}) = T^{-M} psi(Q_M), Q_M = ((1+T)^p - 1)/T)^M
      std::vector<mpz_class> q(1, 1);
      for (long i = 0; i < M; ++i) {
        std::vector<mpz_class> nq(q.size() + static_cast<size_t>(p - 1), 0);
        for (size_t a = 0; a < q.size(); ++a)
          for (int k = 1; k <= p; ++k) nq[a + static_cast<size_t>(k - 1)] += q[a] * cp[static_cast<size_t>(k)];
        q = std::move(nq);
      }
      std::vector<mpz_class> ps;
      for (size_t n = 0; n < q.size(); ++n) {
        const auto& row = psi_row_pos(p, static_cast<long>(n));
        if (ps.size() < row.size()) ps.resize(row.size(), 0);
        for (size_t j = 0; j < row.size(); ++j) ps[j] += q[n] * row[j];
      }
      for (size_t j = 0; j < ps.size(); ++j) {
        long deg = -M + static_cast<long>(j);
        if (deg <= -1) r[static_cast<size_t>(deg + M)] += ps[j];
        else if (ps[j] != 0) fail(ErrorCode::DomainError, "psi of a negative power has nonnegative degrees");
      }
    } else {
      // psi(T^{-M}) = T^{-1}[psi(T^{-(M-p)}) + sum_{k=1}^{p-1} C(p,k) psi(T^{-(M-k)})]
      auto add_row = [&](long mm, const mpz_class& c) {
        const auto& row = rows[static_cast<size_t>(mm)];
        // row for mm >= 1 covers degrees -mm..-1, for mm == 0 degree 0
        for (size_t j = 0; j < row.size(); ++j) {
          long deg = (mm == 0 ? 0 : -mm + static_cast<long>(j)) - 1;
          r[static_cast<size_t>(deg + M)] += c * row[j];
        }
      };
      add_row(M - p, 1);
      for (int k = 1; k < p; ++k) add_row(M - k, cp[static_cast<size_t>(k)]);
    }
    rows.push_back(std::move(r));
  }
  return rows[static_cast<size_t>(m)];
}

namespace {

// Minimal valuation of psi(T^n)_j over n in (D, D + span].
std::vector<long> psi_tail_bounds(int p, long D, long jmax, long span) {
  std::vector<long> b(static_cast<size_t>(jmax + 1), kInf);
  for (long n = D + 1; n <= D + span; ++n) {
    const auto& row = psi_row_pos(p, n);
    for (long j = 0; j <= jmax && j < static_cast<long>(row.size()); ++j) {
      if (row[static_cast<size_t>(j)] != 0) b[static_cast<size_t>(j)] = std::min(b[static_cast<size_t>(j)], vp(p, row[static_cast<size_t>(j)]));
    }
  }
  return b;
}

}  // namespace

LaurentWindow psi(const LaurentWindow& f) {
  const int p = f.prime();
  const long rel = const_rel(f.prec());
  const bool ex = f.exact_top();
  long hi_in = ex ? f.highdeg() : f.dmax();
  long top = ex ? std::max(0L, f.dmax() / p) : std::max(0L, f.dmax()) / p;
  long lo = f.dmin();
  std::vector<Padic> v(static_cast<size_t>(top - lo + 1), Padic::zero(p));
  for (long n = 0; n <= hi_in; ++n) {
    Padic c = f.coeff(n);
    if (c.is_exact_zero()) continue;
    const auto& row = psi_row_pos(p, n);
    for (size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) v[ix(static_cast<long>(j), lo)] += c * Padic::from_int(p, row[j], rel);
  }
  long M = -std::min(0L, f.dmin());
  for (long m = 1; m <= M; ++m) {
    Padic c = f.coeff(-m);
    if (c.is_exact_zero()) continue;
    const auto& row = psi_row_neg(p, m);
    for (size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) v[ix(-m + static_cast<long>(j), lo)] += c * Padic::from_int(p, row[j], rel);
  }
  if (f.tail() < kInf) {
    for (long d = lo; d < 0; ++d) v[ix(d, lo)] = v[ix(d, lo)].cap_abs(f.tail());
  }
  if (!ex) {
    long vt = f.top_val_bound();
    if (vt < kInf) {
      long span = p * (const_rel(f.prec()) + 2 * top + 16);
      auto b = psi_tail_bounds(p, f.dmax(), top, span);
      for (long j = 0; j <= top; ++j)
        if (b[static_cast<size_t>(j)] < kInf) v[ix(j, lo)] = v[ix(j, lo)].cap_abs(vt + b[static_cast<size_t>(j)]);
    }
  }
  return LaurentWindow(p, f.prec(), lo, std::move(v), ex, f.tail());
}

GammaOperator::GammaOperator(int p, long prec, const Padic& a, long lo, long hi) : p_(p), prec_(prec), lo_(lo), hi_(hi) {
  const long rel = const_rel(prec);
  const long len = hi - lo + 1;
  cols_.assign(static_cast<size_t>(len), std::vector<Padic>(static_cast<size_t>(len), Padic::zero(p)));
  // G = (1+T)^a - 1 up to degree hi.
  long K = std::max(1L, hi + std::max(0L, -lo) + 1);
  std::vector<Padic> Gc(static_cast<size_t>(K + 1), Padic::zero(p));
  for (long k = 1; k <= K; ++k) Gc[static_cast<size_t>(k)] = binom(a, k).cap_rel(rel);
  if (lo <= 0 && 0 <= hi) cols_[ix(0, lo)][ix(0, lo)] = Padic::from_int(p, 1, rel);
  if (hi >= 1) {
    std::vector<Padic> pw(1, Padic::from_int(p, 1, rel));  // G^n from degree 0
    for (long n = 1; n <= hi; ++n) {
      pw = mul_range(p, 0, pw, 0, Gc, 0, hi);
      if (n >= lo)
        for (long j = std::max(0L, lo); j <= hi; ++j) cols_[ix(n, lo)][ix(j, lo)] = pw[static_cast<size_t>(j)];
    }
  }
  if (lo < 0) {
    long M = -lo;
    // V = G/T, H = T^{-1} V^{-1}
    long vlen = hi + M + 1;
    std::vector<Padic> V(static_cast<size_t>(vlen + 1), Padic::zero(p));
    for (long k = 0; k <= vlen; ++k) V[static_cast<size_t>(k)] = k + 1 <= K ? Gc[static_cast<size_t>(k + 1)] : binom(a, k + 1).cap_rel(rel);
    LaurentWindow Vw(p, prec, 0, V, false);
    LaurentWindow Vi = series_invert(Vw, vlen);
    std::vector<Padic> H(static_cast<size_t>(vlen + 1), Padic::zero(p));  // degrees -1..vlen-1
    for (long k = 0; k <= vlen; ++k) H[static_cast<size_t>(k)] = Vi.coeff(k);
    std::vector<Padic> pw(1, Padic::from_int(p, 1, rel));
    long pw_lo = 0;
    for (long m = 1; m <= M; ++m) {
      // each factor lowers degrees by one, so keep M - m extra terms on top
      pw = mul_range(p, pw_lo, pw, -1, H, pw_lo - 1, hi + M - m);
      pw_lo -= 1;
      for (long j = pw_lo; j <= hi; ++j) cols_[ix(-m, lo)][ix(j, lo)] = pw[ix(j, pw_lo)];
    }
  }
}

LaurentWindow GammaOperator::apply(const LaurentWindow& f) const {
  long hi = f.exact_top() ? hi_ : std::min(hi_, f.dmax());
  std::vector<Padic> v(static_cast<size_t>(hi - lo_ + 1), Padic::zero(p_));
  long nlo = std::max(lo_, f.dmin());
  for (long n = nlo; n <= hi; ++n) {
    Padic c = f.coeff(n);
    if (c.is_exact_zero()) continue;
    const auto& col = cols_[ix(n, lo_)];
    for (long j = lo_; j <= hi; ++j) {
      const Padic& x = col[ix(j, lo_)];
      if (!x.is_exact_zero()) v[ix(j, lo_)] += c * x;
    }
  }
  long tail = f.tail();
  if (f.dmin() < lo_) {
    for (long d = f.dmin(); d < lo_; ++d) {
      Padic c = f.coeff(d);
      if (!c.is_exact_zero()) tail = std::min(tail, vfloor(c));
    }
  }
  if (tail < kInf)
    for (auto& x : v) x = x.cap_abs(tail);
  return LaurentWindow(p_, f.prec(), lo_, std::move(v), false, tail);
}

LaurentWindow gamma(const LaurentWindow& f, const Padic& a, long dmax_out) {
  if (a.is_zero() || a.val() != 0) fail(ErrorCode::DomainError, "gamma needs a unit");
  long hi = dmax_out >= kInf ? f.dmax() : dmax_out;
  if (!f.exact_top()) hi = std::min(hi, f.dmax());
  long lo = f.tail() < kInf ? f.dmin() : std::min(0L, f.lowdeg());
  lo = std::min(lo, f.dmin());
  // The same generator and window recur across a computation, so operators are reused.
  thread_local std::map<std::tuple<int, long, std::string, long, long>, GammaOperator> cache;
  auto key = std::make_tuple(f.prime(), f.prec(), a.str(), lo, hi);
  auto it = cache.find(key);
  if (it == cache.end()) {
    if (cache.size() >= 64) cache.clear();
    it = cache.emplace(key, GammaOperator(f.prime(), f.prec(), a, lo, hi)).first;
  }
  return it->second.apply(f);
}

LaurentWindow gamma(const LaurentWindow& f, long a, long dmax_out) {
  const int p = f.prime();
  if (a % p == 0) fail(ErrorCode::DomainError, "gamma needs a unit");
  if (a >= 1 && f.exact_top() && f.tail() >= kInf && f.lowdeg() >= 0) {
    const long rel = const_rel(f.prec());
    std::vector<Padic> G(static_cast<size_t>(a + 1), Padic::zero(p));
    for (long k = 1; k <= a; ++k) G[static_cast<size_t>(k)] = binom_int(p, a, k, rel);
    long hd = f.highdeg();
    long top = std::max(f.dmax(), a * hd);
    std::vector<Padic> acc(1, Padic::zero(p));
    for (long d = hd; d >= 0; --d) {
      std::vector<Padic> next = mul_range(p, 0, acc, 0, G, 0, std::min(top, static_cast<long>(acc.size()) - 1 + a));
      next[0] += f.coeff(d);
      acc = std::move(next);
    }
    acc.resize(static_cast<size_t>(top + 1), Padic::zero(p));
    std::vector<Padic> v;
    for (long d = f.dmin(); d < 0; ++d) v.push_back(Padic::zero(p));
    v.insert(v.end(), acc.begin(), acc.end());
    return LaurentWindow(p, f.prec(), f.dmin(), std::move(v), true);
  }
  return gamma(f, Padic::from_int(p, a, const_rel(f.prec())), dmax_out);
}

LaurentWindow partial(const LaurentWindow& f) {
  bool ex = f.exact_top();
  long hi = ex ? f.dmax() : f.dmax() - 1;
  long lo = (f.tail() >= kInf && f.dmin() >= 0) ? f.dmin() : f.dmin() - 1;
  std::vector<Padic> v;
  for (long n = lo; n <= hi; ++n) v.push_back(f.coeff(n).mul_int(n) + f.coeff(n + 1).mul_int(n + 1));
  return LaurentWindow(f.prime(), f.prec(), lo, std::move(v), ex, f.tail());
}

LaurentWindow nabla(const LaurentWindow& f, long i) {
  LaurentWindow d = partial(f);
  long lowd = d.lowdeg();
  long top = d.dmax();
  LaurentWindow t = t_series(f.prime(), f.prec(), std::max(1L, top - lowd));
  LaurentWindow out = t * d;
  if (i != 0) out = out - f.scale(Padic::from_int(f.prime(), i, const_rel(f.prec())));
  return out;
}

namespace {

// sum_{k=1}^{R} (-1)^{k-1}/k (gamma-1)^{k-1+shift} f / log(a), with a certified tail bound.
SeriesNablaResult gamma_log_series(const LaurentWindow& f, const Padic& a, long R, long shift, long twist) {
  const int p = f.prime();
  Padic am1 = a - Padic::from_int(p, 1, const_rel(f.prec()));
  if (am1.is_zero() || am1.val() < 1 || (p == 2 && am1.val() < 2))
    fail(ErrorCode::SeriesNotConverged, "chi(gamma) must be congruent to 1");
  Padic la = plog(a).value;
  long vla = la.val();
  long lo = f.tail() < kInf ? f.dmin() : std::min(0L, f.lowdeg());
  lo = std::min(lo, f.dmin());
  long D = f.dmax();
  long v0 = std::min(f.vmin(), f.tail());
  if (v0 >= kInf) return {LaurentWindow::zero(p, f.prec()), 0};
  long targ = v0;
  for (const auto& c : f.coeffs())
    if (!c.is_exact_zero()) targ = std::max(targ, c.abs());
  if (targ >= kInf) targ = v0 + f.prec();
  long spread = floor_div(D - lo, p - 1);
  // Error bound of the discarded terms k > R.
  auto err_after = [&](long r) {
    long e = kInf;
    for (long k = r + 1; k <= r + 64 + p * 8; ++k) e = std::min(e, v0 + k - 1 + shift - vp(p, k) - spread - vla);
    return e;
  };
  if (R <= 0) {
    R = 1;
    while (err_after(R) < targ) ++R;
  }
  long err = err_after(R);
  GammaOperator op(p, f.prec(), a, lo, D);
  LaurentWindow acc = LaurentWindow::zero(p, f.prec()).truncate_top(D);
  LaurentWindow g = f.truncate_top(D);
  const long rel = const_rel(f.prec()) + 8;
  const Padic tw = a.pow(twist);
  auto step = [&](const LaurentWindow& x) { return twist == 0 ? op.apply(x) - x : op.apply(x).scale(tw) - x; };
  for (long k = 0; k < shift; ++k) g = step(g);
  for (long k = 1; k <= R; ++k) {
    if (k > 1) g = step(g);
    Padic c = Padic::from_rational(p, k % 2 ? 1 : -1, k, rel);
    acc = acc + g.scale(c);
  }
  return {acc.scale(la.inv()).cap_abs(err), R};
}

}  // namespace

SeriesNablaResult nabla_series(const LaurentWindow& f, long i, const Padic& a, long R) {
  SeriesNablaResult r = gamma_log_series(f, a, R, 1, 0);
  if (i != 0) r.value = r.value - f.scale(Padic::from_int(f.prime(), i, const_rel(f.prec())));
  return r;
}

SeriesNablaResult nabla_over_gamma_minus_one(const LaurentWindow& f, const Padic& a, long twist, long R) {
  return gamma_log_series(f, a, R, 0, twist);
}

LaurentWindow phi_psi_by_trace(const LaurentWindow& f) {
  if (!f.is_laurent_polynomial()) fail(ErrorCode::DomainError, "trace formula needs a Laurent polynomial");
  const int p = f.prime();
  const long rel = const_rel(f.prec());
  auto F = cyclo_field(p, 1);
  CycloElement one = CycloElement::zeta_pow(F, 0, rel);
  CycloElement z = CycloElement::zeta_pow(F, 1, rel);
  CycloElement zm1 = z - one;
  CycloElement zero = CycloElement::zero(F);
  // Positive part: Horner in B = (zeta - 1) + zeta T.
  long H = std::max(0L, f.highdeg());
  std::vector<CycloElement> acc(1, zero);
  for (long d = H; d >= 0; --d) {
    std::vector<CycloElement> next(acc.size() + 1, zero);
    for (size_t j = 0; j < acc.size(); ++j) {
      next[j] += acc[j] * zm1;
      next[j + 1] += acc[j] * z;
    }
    Padic c = f.coeff(d);
    if (!c.is_exact_zero()) next[0] += CycloElement::scalar(F, c);
    acc = std::move(next);
  }
  // Negative part: zeta^{-m} S^m (1 + c S)^{-m} with c = (zeta - 1)/zeta.
  long M = -std::min(0L, f.lowdeg());
  long vneg = kInf, targ = 0;
  for (long m = 1; m <= M; ++m) {
    Padic c = f.coeff(-m);
    if (c.is_exact_zero()) continue;
    vneg = std::min(vneg, vfloor(c));
    targ = std::max(targ, std::min(c.abs(), rel));
  }
  long kmax = 0;
  std::vector<CycloElement> neg;
  long tail_out = kInf;
  if (vneg < kInf) {
    kmax = (p - 1) * (targ - vneg + 2);
    neg.assign(static_cast<size_t>(M + kmax + 1), zero);
    CycloElement cc = zm1 / z;
    std::vector<CycloElement> cpow(1, one);
    for (long k = 1; k <= kmax; ++k) cpow.push_back(cpow.back() * cc);
    for (long m = 1; m <= M; ++m) {
      Padic c = f.coeff(-m);
      if (c.is_exact_zero()) continue;
      CycloElement lead = CycloElement::zeta_pow(F, -m, rel).scale(c);
      for (long k = 0; k <= kmax; ++k)
        neg[static_cast<size_t>(m + k)] += lead * cpow[static_cast<size_t>(k)].scale(binom_int(p, -m, k, rel));
    }
    tail_out = vneg - 1 + floor_div(kmax + 1, p - 1);
  }
  long lo = -(M + kmax);
  long hi = std::max(f.dmax(), H);
  std::vector<Padic> v(static_cast<size_t>(hi - lo + 1), Padic::zero(p));
  for (long d = 0; d < static_cast<long>(acc.size()) && d <= hi; ++d)
    v[ix(d, lo)] = trace_down(acc[static_cast<size_t>(d)]).coord(0);
  for (long s = 1; s < static_cast<long>(neg.size()); ++s) v[ix(-s, lo)] = trace_down(neg[static_cast<size_t>(s)]).coord(0);
  for (long d = lo; d <= hi; ++d) v[ix(d, lo)] = (v[ix(d, lo)] + f.coeff(d)).shift(-1);
  if (tail_out < kInf)
    for (long s = kmax + 2; s <= M + kmax; ++s) v[ix(-s, lo)] = v[ix(-s, lo)].cap_abs(tail_out);
  return LaurentWindow(p, f.prec(), lo, std::move(v), true, tail_out);
}

LaurentWindow phi_inverse(const LaurentWindow& g) {
  const int p = g.prime();
  const long rel = const_rel(g.prec());
  if (!g.exact_top()) fail(ErrorCode::DomainError, "phi inversion needs a known top");
  std::vector<Padic> P(static_cast<size_t>(p + 1), Padic::zero(p));
  for (int k = 1; k <= p; ++k) P[static_cast<size_t>(k)] = binom_int(p, p, k, rel);
  // Positive part, top-down against P^n which is monic of degree pn.
  long H = std::max(0L, g.highdeg());
  std::vector<Padic> r(static_cast<size_t>(H + 1), Padic::zero(p));
  for (long d = 0; d <= H; ++d) r[static_cast<size_t>(d)] = g.coeff(d);
  long htop = H / p;
  std::vector<std::vector<Padic>> Pn(1, std::vector<Padic>(1, Padic::from_int(p, 1, rel)));
  for (long n = 1; n <= htop; ++n) Pn.push_back(mul_range(p, 0, Pn.back(), 0, P, 0, p * n));
  std::vector<Padic> hpos(static_cast<size_t>(htop + 1), Padic::zero(p));
  for (long n = htop; n >= 0; --n) {
    for (long d = p * n + 1; d <= std::min(H, p * n + p - 1); ++d)
      if (!r[static_cast<size_t>(d)].is_zero()) fail(ErrorCode::NotInPhiImage, "residual off the image of phi");
    Padic h = r[static_cast<size_t>(p * n)];
    hpos[static_cast<size_t>(n)] = h;
    if (h.is_exact_zero()) continue;
    const auto& row = Pn[static_cast<size_t>(n)];
    for (size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_exact_zero()) r[j] -= h * row[j];
  }
  // Negative part, bottom-up in S = 1/T against W^m = S^{pm} U(S)^m.
  long Smax = -std::min(0L, g.tail() < kInf ? g.dmin() : g.lowdeg());
  long mtop = Smax / p;
  std::vector<Padic> hneg(static_cast<size_t>(mtop + 1), Padic::zero(p));
  long vh = kInf;
  if (Smax > 0) {
    std::vector<Padic> rs(static_cast<size_t>(Smax + 1), Padic::zero(p));
    for (long s = 1; s <= Smax; ++s) rs[static_cast<size_t>(s)] = g.coeff(-s);
    const auto& U = u_inverse(p, Smax);
    std::vector<Padic> W(static_cast<size_t>(Smax + 1), Padic::zero(p));
    for (long s = p; s <= Smax; ++s) W[static_cast<size_t>(s)] = int_const(p, U[static_cast<size_t>(s - p)], rel);
    std::vector<Padic> Wm(1, Padic::from_int(p, 1, rel));
    for (long m = 1; m <= mtop; ++m) {
      Wm = mul_range(p, 0, Wm, 0, W, 0, Smax);
      for (long s = p * (m - 1) + 1; s < p * m; ++s)
        if (!rs[static_cast<size_t>(s)].is_zero()) fail(ErrorCode::NotInPhiImage, "residual off the image of phi");
      Padic h = rs[static_cast<size_t>(p * m)];
      hneg[static_cast<size_t>(m)] = h;
      if (h.is_exact_zero()) continue;
      if (!h.is_zero()) vh = std::min(vh, h.val());
      for (long s = p * m; s <= Smax; ++s)
        if (!Wm[static_cast<size_t>(s)].is_exact_zero()) rs[static_cast<size_t>(s)] -= h * Wm[static_cast<size_t>(s)];
    }
    if (g.tail() >= kInf)
      for (long s = p * mtop + 1; s <= Smax; ++s)
        if (!rs[static_cast<size_t>(s)].is_zero()) fail(ErrorCode::NotInPhiImage, "residual off the image of phi");
  }
  std::vector<Padic> v;
  for (long m = mtop; m >= 1; --m) v.push_back(hneg[static_cast<size_t>(m)]);
  for (long n = 0; n <= htop; ++n) v.push_back(hpos[static_cast<size_t>(n)]);
  long tail = g.tail() < kInf ? std::min(g.tail(), vh == kInf ? g.tail() : vh + 1) : kInf;
  long top = std::max(htop, g.dmax() / p);
  v.resize(static_cast<size_t>(top + mtop + 1), Padic::zero(p));
  return LaurentWindow(p, g.prec(), -mtop, std::move(v), true, tail);
}

Padic res(const LaurentWindow& f) { return f.coeff(-1); }

Padic reslog(const LaurentWindow& f) {
  Padic s = Padic::zero(f.prime());
  for (long j = std::min(-1L, f.dmax()); j >= f.dmin(); --j) {
    Padic c = f.coeff(j);
    if (c.is_exact_zero()) continue;
    s += ((-1 - j) % 2 == 0) ? c : -c;
  }
  if (f.tail() < kInf) s = s.cap_abs(f.tail());
  return s;
}

Agreement compare(const LaurentWindow& f, const LaurentWindow& g, long slack, long lo, long hi) {
  Agreement a;
  a.lo = std::max(lo, std::min(f.dmin(), g.dmin()));
  long top = std::min(f.exact_top() ? kInf : f.dmax(), g.exact_top() ? kInf : g.dmax());
  if (top >= kInf) top = std::max(f.dmax(), g.dmax());
  a.hi = std::min(hi, top);
  for (long d = a.lo; d <= a.hi; ++d) {
    Padic diff = f.coeff(d) - g.coeff(d);
    if (diff.is_exact_zero()) continue;
    a.certified = std::min(a.certified, diff.abs());
    if (diff.is_zero()) {
      a.worst_disc = std::min(a.worst_disc, diff.abs());
      continue;
    }
    a.worst_disc = std::min(a.worst_disc, diff.val());
    if (diff.val() < diff.abs() - slack) a.ok = false;
  }
  return a;
}

}  // namespace phigamma
