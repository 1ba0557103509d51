#include "phigamma/colmez.hpp"

#include <algorithm>

namespace phigamma {

namespace {

// sum_n a_n (u + v y)^n truncated to degree < L.
std::vector<Padic> compose_linear(const std::vector<Padic>& a, const Padic& u, const Padic& v, long L) {
  const int p = u.prime();
  std::vector<Padic> acc(static_cast<size_t>(L), Padic::zero(p));
  for (size_t n = a.size(); n-- > 0;) {
    std::vector<Padic> next(static_cast<size_t>(L), Padic::zero(p));
    for (long i = 0; i < L; ++i) {
      if (acc[static_cast<size_t>(i)].is_exact_zero()) continue;
      next[static_cast<size_t>(i)] += acc[static_cast<size_t>(i)] * u;
      if (i + 1 < L) next[static_cast<size_t>(i + 1)] += acc[static_cast<size_t>(i)] * v;
    }
    next[0] += a[n];
    acc = std::move(next);
  }
  return acc;
}

long ipow(long b, long e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

LocAnFunction::LocAnFunction(int p, int h, long L, long prec) : p_(p), h_(h), L_(L), prec_(prec) {
  if (h < 0 || L < 1) fail(ErrorCode::DomainError, "locally analytic model needs h >= 0 and L >= 1");
  c_.assign(static_cast<size_t>(ipow(p, h)), std::vector<Padic>(static_cast<size_t>(L), Padic::zero(p)));
}

LocAnFunction LocAnFunction::operator+(const LocAnFunction& o) const {
  if (o.h_ != h_ || o.L_ != L_) fail(ErrorCode::DomainError, "adding functions at different levels");
  LocAnFunction r = *this;
  for (size_t a = 0; a < c_.size(); ++a)
    for (size_t n = 0; n < c_[a].size(); ++n) r.c_[a][n] += o.c_[a][n];
  return r;
}

LocAnFunction LocAnFunction::scale(const Padic& s) const {
  LocAnFunction r = *this;
  for (auto& jet : r.c_)
    for (auto& c : jet) c = c * s;
  return r;
}

LocAnFunction LocAnFunction::refine() const {
  LocAnFunction r(p_, h_ + 1, L_, prec_);
  const long q = coset_count();
  const long rel = const_rel(prec_);
  Padic pp = Padic::from_int(p_, p_, rel);
  for (long a = 0; a < q; ++a)
    for (long j = 0; j < p_; ++j) r.jet(a + q * j) = compose_linear(jet(a), Padic::from_int(p_, j, rel), pp, L_);
  return r;
}

bool LocAnFunction::is_zero() const {
  for (const auto& jet : c_)
    for (const auto& c : jet)
      if (!c.is_zero()) return false;
  return true;
}

Agreement la_compare(const LocAnFunction& f, const LocAnFunction& g, long slack) {
  if (f.taylor_length() != g.taylor_length()) fail(ErrorCode::DomainError, "comparing jets of different lengths");
  LocAnFunction x = f, y = g;
  while (x.level() < y.level()) x = x.refine();
  while (y.level() < x.level()) y = y.refine();
  Agreement a;
  a.lo = 0;
  a.hi = x.coset_count() - 1;
  for (long c = 0; c < x.coset_count(); ++c)
    for (long n = 0; n < x.taylor_length(); ++n) {
      Padic d = x.jet(c)[static_cast<size_t>(n)] - y.jet(c)[static_cast<size_t>(n)];
      if (d.is_exact_zero()) continue;
      a.certified = std::min(a.certified, d.abs());
      a.worst_disc = std::min(a.worst_disc, d.is_zero() ? d.abs() : d.val());
      if (!d.is_zero() && d.val() < d.abs() - slack) a.ok = false;
    }
  return a;
}

LocAnFunction monomial(int p, long k, int h, long L, long prec) {
  if (k < 0) fail(ErrorCode::DomainError, "monomial needs k >= 0");
  LocAnFunction f(p, h, L, prec);
  const long rel = const_rel(prec);
  std::vector<Padic> xk(static_cast<size_t>(k + 1), Padic::zero(p));
  xk[static_cast<size_t>(k)] = Padic::from_int(p, 1, rel);
  Padic ph = Padic::from_int(p, 1, rel).shift(h);
  for (long a = 0; a < f.coset_count(); ++a) f.jet(a) = compose_linear(xk, Padic::from_int(p, a, rel), ph, L);
  return f;
}

LocAnFunction la_phi(const LocAnFunction& f) {
  const int p = f.prime();
  LocAnFunction r(p, f.level() + 1, f.taylor_length(), f.prec());
  for (long a = 0; a < r.coset_count(); a += p) r.jet(a) = f.jet(a / p);
  return r;
}

LocAnFunction la_psi(const LocAnFunction& f) {
  const int p = f.prime();
  if (f.level() == 0) {
    LocAnFunction r = f;
    for (long n = 0; n < f.taylor_length(); ++n) r.jet(0)[static_cast<size_t>(n)] = f.jet(0)[static_cast<size_t>(n)].shift(n);
    return r;
  }
  LocAnFunction r(p, f.level() - 1, f.taylor_length(), f.prec());
  for (long b = 0; b < r.coset_count(); ++b) r.jet(b) = f.jet(p * b);
  return r;
}

LocAnFunction la_gamma(const LocAnFunction& f, const Padic& a) {
  if (a.is_zero() || a.val() != 0) fail(ErrorCode::DomainError, "gamma needs a unit");
  const int p = f.prime();
  const int h = f.level();
  const long q = f.coset_count();
  const long rel = const_rel(f.prec());
  Padic ainv = a.inv();
  LocAnFunction r(p, h, f.taylor_length(), f.prec());
  for (long c = 0; c < q; ++c) {
    // c / a = c' + p^h delta with 0 <= c' < p^h
    Padic ca = Padic::from_int(p, c, rel) * ainv;
    long cp = c == 0 ? 0 : mpz_class(ca.residue(h)).get_si();
    Padic delta = (ca - Padic::from_int(p, cp, rel)).shift(-h);
    r.jet(c) = compose_linear(f.jet(cp), delta, ainv, f.taylor_length());
  }
  return r.scale(ainv);
}

LocAnFunction colmez(const LaurentWindow& f, int h, long L) {
  const int p = f.prime();
  LocAnFunction r(p, h, L, f.prec());
  const long lo = std::min(f.dmin(), 0L);
  const long R = -1 - lo;  // largest binomial order
  if (R < 0) return r;
  const long rel = const_rel(f.prec()) + R;
  Padic ph = Padic::from_int(p, 1, rel).shift(h);
  for (long a = 0; a < r.coset_count(); ++a) {
    std::vector<Padic> B(static_cast<size_t>(L), Padic::zero(p));  // C(a - 1 + p^h y, r)
    B[0] = Padic::from_int(p, 1, rel);
    std::vector<Padic>& acc = r.jet(a);
    for (long k = 0; k <= R; ++k) {
      Padic c = f.coeff(-1 - k);
      if (!c.is_exact_zero())
        for (long n = 0; n < L; ++n) acc[static_cast<size_t>(n)] += c * B[static_cast<size_t>(n)];
      // B <- B ((a - 1 - k) + p^h y) / (k + 1)
      Padic u = Padic::from_int(p, a - 1 - k, rel);
      Padic inv = Padic::from_rational(p, 1, k + 1, rel);
      std::vector<Padic> next(static_cast<size_t>(L), Padic::zero(p));
      for (long n = 0; n < L; ++n) {
        if (B[static_cast<size_t>(n)].is_exact_zero()) continue;
        next[static_cast<size_t>(n)] += B[static_cast<size_t>(n)] * u;
        if (n + 1 < L) next[static_cast<size_t>(n + 1)] += B[static_cast<size_t>(n)] * ph;
      }
      for (auto& x : next) x = x * inv;
      B = std::move(next);
    }
    // Dropped coefficients below dmin move values by at most p^tail; jets get the same cap.
    if (f.tail() < kInf)
      for (auto& c : acc) c = c.cap_abs(f.tail());
  }
  return r;
}

LaurentWindow colmez_preimage(const std::vector<Padic>& poly, long prec) {
  if (poly.empty()) return LaurentWindow::zero(2, prec);
  const int p = poly[0].prime();
  const long deg = static_cast<long>(poly.size()) - 1;
  const long rel = const_rel(prec);
  // c_j = (Delta^j P)(1), the coefficients of P in the basis C(x - 1, j)
  std::vector<Padic> vals;
  for (long i = 0; i <= deg; ++i) {
    Padic x = Padic::from_int(p, 1 + i, rel), v = Padic::zero(p), xn = Padic::from_int(p, 1, rel);
    for (long n = 0; n <= deg; ++n) {
      v += poly[static_cast<size_t>(n)] * xn;
      xn = xn * x;
    }
    vals.push_back(v);
  }
  std::vector<Padic> c(static_cast<size_t>(deg + 1), Padic::zero(p));
  for (long j = 0; j <= deg; ++j)
    for (long i = 0; i <= j; ++i) {
      Padic term = vals[static_cast<size_t>(i)] * binom_int(p, j, i, rel);
      c[static_cast<size_t>(j)] += (j - i) % 2 ? -term : term;
    }
  // degree -1 - j carries c_j
  std::vector<Padic> coeffs(c.rbegin(), c.rend());
  return LaurentWindow(p, prec, -1 - deg, std::move(coeffs), true);
}

}  // namespace phigamma
