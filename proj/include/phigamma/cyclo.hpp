#pragma once

#include <memory>
#include <vector>

#include "phigamma/padic.hpp"

namespace phigamma {

// K_n = Q_p(zeta_{p^n}) with the power basis modulo the p^n-th cyclotomic polynomial.
class CycloField {
 public:
  CycloField(int p, int level);

  int prime() const { return p_; }
  int level() const { return n_; }
  long degree() const { return d_; }
  long order() const { return q_; }  // p^n
  // Coordinates of zeta^k (any integer k) in the power basis.
  const std::vector<long>& zeta_pow(long k) const;

 private:
  int p_;
  int n_;
  long d_;
  long q_;
  std::vector<std::vector<long>> powers_;
};

using FieldPtr = std::shared_ptr<const CycloField>;

FieldPtr cyclo_field(int p, int level);

class CycloElement {
 public:
  CycloElement() = default;
  CycloElement(FieldPtr f, std::vector<Padic> coords);

  static CycloElement zero(FieldPtr f);
  static CycloElement scalar(FieldPtr f, const Padic& c);
  // zeta^k at relative precision rel.
  static CycloElement zeta_pow(FieldPtr f, long k, long rel);

  const FieldPtr& field() const { return f_; }
  int prime() const { return f_->prime(); }
  int level() const { return f_->level(); }
  long degree() const { return f_->degree(); }
  const std::vector<Padic>& coords() const { return c_; }
  const Padic& coord(long i) const { return c_[static_cast<size_t>(i)]; }

  bool is_zero() const;
  // Smallest valuation among nonzero coordinates (kInf if zero).
  long min_val() const;
  // Smallest absolute precision among coordinates.
  long min_abs() const;

  CycloElement operator-() const;
  CycloElement operator+(const CycloElement& o) const;
  CycloElement operator-(const CycloElement& o) const;
  CycloElement operator*(const CycloElement& o) const;
  CycloElement operator/(const CycloElement& o) const;
  CycloElement& operator+=(const CycloElement& o) { return *this = *this + o; }
  CycloElement& operator-=(const CycloElement& o) { return *this = *this - o; }
  CycloElement scale(const Padic& s) const;
  // Multiply by p^k.
  CycloElement shift(long k) const;
  CycloElement mul_int(long n) const;
  CycloElement inv() const;
  CycloElement cap_abs(long a) const;

  bool equals(const CycloElement& o) const { return (*this - o).is_zero(); }

 private:
  FieldPtr f_;
  std::vector<Padic> c_;
};

// Smallest coordinate discrepancy valuation (precision if equal at precision).
long disc_val(const CycloElement& a, const CycloElement& b);

enum class CycloOp { Add, Sub, Mul, Div };
CycloElement cyclo_arith(const CycloElement& a, const CycloElement& b, CycloOp op);

// zeta -> zeta^c.
CycloElement galois(const CycloElement& a, long c);
// zeta_{p^n} -> zeta_{p^{n+1}}^p.
CycloElement embed_up(const CycloElement& a);
// Tr_{K_n/K_{n-1}} for an element at level n >= 1.
CycloElement trace_down(const CycloElement& a);
// (1/p) Tr_{K_n/K_{n-1}}.
CycloElement normalized_trace(const CycloElement& a);
// (1/[K_n:K_{n-1}]) Tr_{K_n/K_{n-1}}.
CycloElement degree_normalized_trace(const CycloElement& a);
// (1/[K_m:K_target]) Tr_{K_m/K_target}.
CycloElement t_project(const CycloElement& a, int target_level);
// Embed from level n up to level m >= n.
CycloElement embed_to(const CycloElement& a, int level);

}  // namespace phigamma
