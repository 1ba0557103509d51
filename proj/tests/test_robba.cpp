#include <random>

#include "doctest.h"
#include "phigamma/random.hpp"
#include "phigamma/robba.hpp"

using namespace phigamma;

namespace {

Padic q(int p, long num, long den, long rel = 30) { return Padic::from_rational(p, num, den, rel); }

LaurentWindow poly(int p, long prec, long lo, std::vector<long> c) {
  std::vector<Padic> v;
  for (long x : c) v.push_back(x == 0 ? Padic::zero(p) : Padic::from_int(p, x, const_rel(prec)));
  return LaurentWindow(p, prec, lo, std::move(v));
}

// Agreement that is also informative: at least `need` digits certified on the compared window.
void check_agree(const LaurentWindow& f, const LaurentWindow& g, long need, long slack = 0, long lo = -kInf,
                 long hi = kInf) {
  Agreement a = compare(f, g, slack, lo, hi);
  CHECK(a.ok);
  CHECK(a.certified >= need);
  CHECK(a.hi >= a.lo);
}

// ((1+T)^p - 1)^n with machine integers, independent of the library's Horner scheme.
std::vector<long long> phi_monomial_oracle(int p, int n) {
  std::vector<long long> P(static_cast<size_t>(p + 1), 0);
  long long b = 1;
  for (int k = 1; k <= p; ++k) {
    b = b * (p - k + 1) / k;
    P[static_cast<size_t>(k)] = b;
  }
  std::vector<long long> r{1};
  for (int i = 0; i < n; ++i) {
    std::vector<long long> s(r.size() + static_cast<size_t>(p), 0);
    for (size_t a = 0; a < r.size(); ++a)
      for (size_t k = 0; k < P.size(); ++k) s[a + k] += r[a] * P[k];
    r = s;
  }
  return r;
}

}  // namespace

TEST_CASE("phi and psi on basic elements") {
  LaurentWindow T = poly(3, 12, 0, {0, 1});
  LaurentWindow pT = phi(T);
  CHECK(pT.coeff(1).equals(q(3, 3, 1)));
  CHECK(pT.coeff(2).equals(q(3, 3, 1)));
  CHECK(pT.coeff(3).equals(q(3, 1, 1)));
  CHECK(pT.coeff(4).is_zero());
  LaurentWindow one = LaurentWindow::constant(3, 12, q(3, 1, 1));
  LaurentWindow p1 = psi(one);
  CHECK(p1.coeff(0).equals(q(3, 1, 1)));
  LaurentWindow u = cyclotomic_unit(3, 12);
  check_agree(psi(u), u, 12);
  check_agree(psi(poly(3, 12, -1, {1})), poly(3, 12, -1, {1}), 12);
}

TEST_CASE("phi of monomials matches integer expansion") {
  for (int p : {3, 5}) {
    for (int n = 1; n <= 5; ++n) {
      std::vector<long> c(static_cast<size_t>(n + 1), 0);
      c[static_cast<size_t>(n)] = 1;
      LaurentWindow f = phi(poly(p, 12, 0, c));
      auto want = phi_monomial_oracle(p, n);
      for (size_t d = 0; d < want.size(); ++d) {
        Padic w = want[d] == 0 ? Padic::zero(p) : Padic::from_int(p, mpz_class(static_cast<long>(want[d])), 40);
        CHECK(f.coeff(static_cast<long>(d)).equals(w));
      }
    }
  }
}

TEST_CASE("gamma, partial and nabla examples") {
  LaurentWindow T = poly(3, 12, 0, {0, 1});
  LaurentWindow g = gamma(T, 4L);
  CHECK(g.coeff(1).equals(q(3, 4, 1)));
  CHECK(g.coeff(2).equals(q(3, 6, 1)));
  CHECK(g.coeff(3).equals(q(3, 4, 1)));
  CHECK(g.coeff(4).equals(q(3, 1, 1)));
  LaurentWindow dT = partial(T);
  CHECK(dT.coeff(0).equals(q(3, 1, 1)));
  CHECK(dT.coeff(1).equals(q(3, 1, 1)));
  CHECK(dT.coeff(2).is_zero());
  LaurentWindow t = t_series(3, 12, 30);
  LaurentWindow dt = partial(t);
  CHECK(dt.coeff(0).equals(q(3, 1, 1)));
  for (long d = 1; d <= dt.dmax(); ++d) CHECK(dt.coeff(d).is_zero());
  check_agree(nabla(t, 0), t, 10);
  Agreement z = compare(nabla(t, 1), LaurentWindow::zero(3, 12), 0, 0, 25);
  CHECK(z.ok);
}

TEST_CASE("inverse of t/T") {
  LaurentWindow inv = series_invert(t_over_T(3, 12, 20), 20);
  CHECK(inv.coeff(0).equals(q(3, 1, 1)));
  CHECK(inv.coeff(1).equals(q(3, 1, 2)));
  CHECK(inv.coeff(2).equals(q(3, -1, 12)));
  LaurentWindow prod = inv * t_over_T(3, 12, 20);
  check_agree(prod, LaurentWindow::constant(3, 12, q(3, 1, 1)), 8);
}

TEST_CASE("residues") {
  CHECK(res(poly(3, 12, -1, {1})).equals(q(3, 1, 1)));
  CHECK(reslog(cyclotomic_unit(3, 12)).equals(q(3, 1, 1)));
  CHECK(reslog(poly(3, 12, -2, {1, 0, 5})).equals(q(3, -1, 1)));
}

TEST_CASE("psi phi is the identity") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      LaurentWindow f = random_laurent(rng, p, 12, -4, 10);
      check_agree(psi(phi(f)), f, 10);
    }
  }
}

TEST_CASE("phi psi agrees with the trace formula and psi with its numeric inversion") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 15; ++trial) {
      LaurentWindow f = random_laurent(rng, p, 12, -4, 12);
      LaurentWindow tr = phi_psi_by_trace(f);
      check_agree(phi(psi(f)), tr, 9);
      check_agree(psi(f), phi_inverse(tr), 9);
    }
  }
}

TEST_CASE("phi is multiplicative") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      LaurentWindow f = random_laurent(rng, p, 12, -3, 6), g = random_laurent(rng, p, 12, -3, 6);
      check_agree(phi(f * g), phi(f) * phi(g), 8);
    }
  }
}

TEST_CASE("gamma commutes with phi and psi") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      long a = 1 + static_cast<long>(rng() % 7);
      if (a % p == 0) ++a;
      LaurentWindow f = random_laurent(rng, p, 12, 0, 8);
      check_agree(gamma(phi(f), a), phi(gamma(f, a)), 12);
      check_agree(gamma(psi(f), a), psi(gamma(f, a)), 12);
      Padic ap = random_principal_unit(rng, p, 30);
      LaurentWindow h = random_laurent(rng, p, 12, -3, 10);
      check_agree(gamma(phi(h), ap, 20), phi(gamma(h, ap, 40)), 8, 0, -10, 20);
      check_agree(gamma(psi(h), ap, 3), psi(gamma(h, ap, 60)), 8, 0, -3, 3);
    }
  }
}

TEST_CASE("partial intertwines gamma") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      Padic a = random_principal_unit(rng, p, 30);
      LaurentWindow f = random_laurent(rng, p, 12, -3, 10);
      check_agree(partial(gamma(f, a, 20)), gamma(partial(f), a, 20).scale(a), 8, 0, -10, 18);
    }
  }
}

TEST_CASE("phi and gamma act on t through the character") {
  for (int p : {3, 5}) {
    LaurentWindow t = t_series(p, 12, 40);
    check_agree(phi(t), t.scale(Padic::from_int(p, p, 40)), 10, 0, 0, 40);
    Padic a = Padic::from_int(p, 1 + p, 40);
    check_agree(gamma(t, a), t.scale(a), 8, 0, 0, 40);
  }
}

TEST_CASE("nabla_i of t^i f equals t^i nabla_0 f") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    LaurentWindow t = t_series(p, 14, 40);
    for (int trial = 0; trial < 6; ++trial) {
      long i = 1 + static_cast<long>(rng() % 3);
      LaurentWindow f = random_laurent(rng, p, 12, 0, 8);
      LaurentWindow ti = t;
      for (long k = 1; k < i; ++k) ti = ti * t;
      check_agree(nabla(ti * f, i), ti * nabla(f, 0), 6, 0, 0, 30);
    }
  }
}

TEST_CASE("residue of dT/(1+T) is invariant under psi and twisted gamma") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 20; ++trial) {
      LaurentWindow f = random_laurent(rng, p, 12, -5, 6);
      CHECK(disc_val(reslog(psi(f)), reslog(f)) >= 10);
      Padic a = random_principal_unit(rng, p, 30);
      LaurentWindow g = gamma(f, a, 30);
      CHECK(disc_val(a * reslog(g), reslog(f)) >= 6);
    }
  }
}

TEST_CASE("series nabla matches the closed form") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 4; ++trial) {
      LaurentWindow f = random_laurent(rng, p, 10, -2, 10);
      Padic a = Padic::from_int(p, 1 + p, 40);
      SeriesNablaResult s = nabla_series(f, 1, a);
      CHECK(s.terms > 0);
      check_agree(s.value, nabla(f, 1), 4, 0, -2, 8);
    }
  }
}

TEST_CASE("geometric series and trivial gamma") {
  LaurentWindow inv = series_invert(poly(3, 12, 0, {1, -1}), 20);
  for (long d = 0; d <= 20; ++d) CHECK(inv.coeff(d).equals(q(3, 1, 1)));
  LaurentWindow T = poly(3, 12, 0, {0, 1});
  check_agree(T * series_invert(T, 5), LaurentWindow::constant(3, 12, q(3, 1, 1)), 12);
  std::mt19937_64 rng(42);
  LaurentWindow f = random_laurent(rng, 3, 12, -3, 10);
  check_agree(gamma(f, Padic::from_int(3, 1, 40), 10), f, 10, 0, -3, 10);
  CHECK(res(random_laurent(rng, 3, 12, 0, 10)).is_zero());
}

TEST_CASE("gamma is a group action and partial intertwines phi") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      Padic a = random_principal_unit(rng, p, 30), b = random_principal_unit(rng, p, 30);
      LaurentWindow f = random_laurent(rng, p, 12, -3, 10);
      check_agree(gamma(gamma(f, a, 20), b, 20), gamma(f, a * b, 20), 8, 0, -3, 20);
      check_agree(partial(phi(f)), phi(partial(f)).scale(Padic::from_int(p, p, 40)), 10);
    }
  }
}

TEST_CASE("psi phi is the identity on 100 series") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      LaurentWindow f = random_laurent(rng, p, 12, -8, 40);
      Agreement a = compare(psi(phi(f)), f);
      CHECK(a.ok);
      CHECK(a.worst_disc >= 12);
    }
  }
}
