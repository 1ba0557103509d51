#include "phigamma/cyclo.hpp"

#include <map>
#include <mutex>

#include "phigamma/linalg.hpp"

namespace phigamma {

CycloField::CycloField(int p, int level) : p_(p), n_(level) {
  if (level < 0) fail(ErrorCode::DomainError, "negative cyclotomic level");
  q_ = 1;
  for (int i = 0; i < level; ++i) q_ *= p;
  d_ = level == 0 ? 1 : (q_ / p) * (p - 1);
  powers_.assign(static_cast<size_t>(q_), std::vector<long>(static_cast<size_t>(d_), 0));
  if (level == 0) {
    powers_[0][0] = 1;
    return;
  }
  long step = q_ / p;
  // zeta^d = -sum_{i<p-1} zeta^{i*step}; build successive powers by shifting.
  std::vector<long> cur(static_cast<size_t>(d_), 0);
  cur[0] = 1;
  for (long k = 0; k < q_; ++k) {
    powers_[static_cast<size_t>(k)] = cur;
    std::vector<long> next(static_cast<size_t>(d_), 0);
    long top = cur[static_cast<size_t>(d_ - 1)];
    for (long i = d_ - 1; i > 0; --i) next[static_cast<size_t>(i)] = cur[static_cast<size_t>(i - 1)];
    if (top != 0) {
      for (int i = 0; i < p - 1; ++i) next[static_cast<size_t>(i * step)] -= top;
    }
    cur = next;
  }
}

const std::vector<long>& CycloField::zeta_pow(long k) const {
  long r = ((k % q_) + q_) % q_;
  return powers_[static_cast<size_t>(r)];
}

FieldPtr cyclo_field(int p, int level) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, level);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const CycloField>(p, level);
  cache[key] = f;
  return f;
}

CycloElement::CycloElement(FieldPtr f, std::vector<Padic> coords) : f_(std::move(f)), c_(std::move(coords)) {
  if (static_cast<long>(c_.size()) != f_->degree()) fail(ErrorCode::SchemaViolation, "coordinate count differs from degree");
}

CycloElement CycloElement::zero(FieldPtr f) {
  int p = f->prime();
  std::vector<Padic> c(static_cast<size_t>(f->degree()), Padic::zero(p));
  return CycloElement(std::move(f), std::move(c));
}

CycloElement CycloElement::scalar(FieldPtr f, const Padic& s) {
  CycloElement z = zero(std::move(f));
  z.c_[0] = s;
  return z;
}

CycloElement CycloElement::zeta_pow(FieldPtr f, long k, long rel) {
  int p = f->prime();
  const auto& v = f->zeta_pow(k);
  std::vector<Padic> c;
  c.reserve(v.size());
  for (long x : v) c.push_back(x == 0 ? Padic::zero(p) : Padic::from_int(p, x, rel));
  return CycloElement(std::move(f), std::move(c));
}

bool CycloElement::is_zero() const {
  for (const auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

long CycloElement::min_val() const {
  long v = kInf;
  for (const auto& x : c_)
    if (!x.is_zero()) v = std::min(v, x.val());
  return v;
}

long CycloElement::min_abs() const {
  long a = kInf;
  for (const auto& x : c_) a = std::min(a, x.abs());
  return a;
}

CycloElement CycloElement::operator-() const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloElement CycloElement::operator+(const CycloElement& o) const {
  CycloElement r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

CycloElement CycloElement::operator-(const CycloElement& o) const {
  CycloElement r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CycloElement CycloElement::operator*(const CycloElement& o) const {
  const long d = degree();
  const int p = prime();
  if (d == 1) return CycloElement(f_, {c_[0] * o.c_[0]});
  std::vector<Padic> prod(static_cast<size_t>(2 * d - 1), Padic::zero(p));
  for (long i = 0; i < d; ++i) {
    if (c_[static_cast<size_t>(i)].is_exact_zero()) continue;
    for (long j = 0; j < d; ++j) {
      if (o.c_[static_cast<size_t>(j)].is_exact_zero()) continue;
      prod[static_cast<size_t>(i + j)] += c_[static_cast<size_t>(i)] * o.c_[static_cast<size_t>(j)];
    }
  }
  long step = f_->order() / p;
  for (long e = 2 * d - 2; e >= d; --e) {
    Padic top = prod[static_cast<size_t>(e)];
    if (top.is_exact_zero()) continue;
    for (int i = 0; i < p - 1; ++i) prod[static_cast<size_t>(e - d + i * step)] -= top;
  }
  prod.resize(static_cast<size_t>(d));
  return CycloElement(f_, std::move(prod));
}

CycloElement CycloElement::scale(const Padic& s) const {
  CycloElement r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

CycloElement CycloElement::shift(long k) const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = x.shift(k);
  return r;
}

CycloElement CycloElement::mul_int(long n) const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = x.mul_int(n);
  return r;
}

CycloElement CycloElement::inv() const {
  const long d = degree();
  const int p = prime();
  if (is_zero()) fail(ErrorCode::NonInvertible, "inverse of zero");
  if (d == 1) return CycloElement(f_, {c_[0].inv()});
  PMatrix A(static_cast<size_t>(d), std::vector<Padic>(static_cast<size_t>(d), Padic::zero(p)));
  long rel = 0;
  for (const auto& x : c_) rel = std::max(rel, x.rel());
  for (long j = 0; j < d; ++j) {
    CycloElement col = *this * zeta_pow(f_, j, rel + 8);
    for (long i = 0; i < d; ++i) A[static_cast<size_t>(i)][static_cast<size_t>(j)] = col.c_[static_cast<size_t>(i)];
  }
  std::vector<Padic> b(static_cast<size_t>(d), Padic::zero(p));
  b[0] = Padic::from_int(p, 1, rel + 8);
  SolveResult s = solve_linear(A, b, p);
  if (!s.consistent || s.rank < d) fail(ErrorCode::NonInvertible, "element is not invertible at precision");
  return CycloElement(f_, s.x);
}

CycloElement CycloElement::operator/(const CycloElement& o) const { return *this * o.inv(); }

CycloElement CycloElement::cap_abs(long a) const {
  CycloElement r = *this;
  for (auto& x : r.c_) x = x.cap_abs(a);
  return r;
}

long disc_val(const CycloElement& a, const CycloElement& b) {
  long v = kInf;
  for (long i = 0; i < a.degree(); ++i) v = std::min(v, disc_val(a.coord(i), b.coord(i)));
  return v;
}

CycloElement cyclo_arith(const CycloElement& a, const CycloElement& b, CycloOp op) {
  if (a.field() != b.field()) fail(ErrorCode::DomainError, "operands live in different fields");
  switch (op) {
    case CycloOp::Add: return a + b;
    case CycloOp::Sub: return a - b;
    case CycloOp::Mul: return a * b;
    case CycloOp::Div: return a / b;
  }
  return a;
}

CycloElement galois(const CycloElement& a, long c) {
  const auto& F = *a.field();
  const int p = a.prime();
  if (F.level() == 0) return a;
  if (((c % p) + p) % p == 0) fail(ErrorCode::DomainError, "Galois parameter must be a unit");
  const long d = F.degree();
  std::vector<Padic> out(static_cast<size_t>(d), Padic::zero(p));
  for (long i = 0; i < d; ++i) {
    const Padic& x = a.coord(i);
    if (x.is_exact_zero()) continue;
    long e = ((i * (c % F.order())) % F.order() + F.order()) % F.order();
    const auto& v = F.zeta_pow(e);
    for (long j = 0; j < d; ++j) {
      if (v[static_cast<size_t>(j)] != 0) out[static_cast<size_t>(j)] += x.mul_int(v[static_cast<size_t>(j)]);
    }
  }
  return CycloElement(a.field(), std::move(out));
}

CycloElement embed_up(const CycloElement& a) {
  const int p = a.prime();
  const int n = a.level();
  FieldPtr up = cyclo_field(p, n + 1);
  CycloElement r = CycloElement::zero(up);
  std::vector<Padic> c = r.coords();
  if (n == 0) {
    c[0] = a.coord(0);
  } else {
    for (long i = 0; i < a.degree(); ++i) c[static_cast<size_t>(p * i)] = a.coord(i);
  }
  return CycloElement(up, std::move(c));
}

CycloElement embed_to(const CycloElement& a, int level) {
  CycloElement r = a;
  while (r.level() < level) r = embed_up(r);
  return r;
}

CycloElement trace_down(const CycloElement& a) {
  const int p = a.prime();
  const int n = a.level();
  if (n < 1) fail(ErrorCode::DomainError, "trace_down needs level >= 1");
  const auto& F = *a.field();
  CycloElement sum = CycloElement::zero(a.field());
  if (n == 1) {
    for (long c = 1; c < p; ++c) sum += galois(a, c);
  } else {
    long step = F.order() / p;
    for (long j = 0; j < p; ++j) sum += galois(a, 1 + j * step);
  }
  FieldPtr down = cyclo_field(p, n - 1);
  std::vector<Padic> c(static_cast<size_t>(down->degree()), Padic::zero(p));
  if (n == 1) {
    c[0] = sum.coord(0);
  } else {
    for (long i = 0; i < down->degree(); ++i) c[static_cast<size_t>(i)] = sum.coord(p * i);
  }
  return CycloElement(down, std::move(c));
}

CycloElement normalized_trace(const CycloElement& a) {
  const int p = a.prime();
  (void)p;
  return trace_down(a).shift(-1);
}

CycloElement degree_normalized_trace(const CycloElement& a) {
  const int p = a.prime();
  CycloElement t = trace_down(a);
  if (a.level() > 1) return t.shift(-1);
  long rel = 8;
  for (const auto& x : t.coords()) rel = std::max(rel, x.rel() + 8);
  return t.scale(Padic::from_int(p, p - 1, rel).inv());
}

CycloElement t_project(const CycloElement& a, int target_level) {
  if (target_level > a.level()) fail(ErrorCode::DomainError, "t_project target above source level");
  CycloElement r = a;
  while (r.level() > target_level) r = degree_normalized_trace(r);
  return r;
}

}  // namespace phigamma
