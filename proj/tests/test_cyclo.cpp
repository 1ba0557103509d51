#include <random>

#include "doctest.h"
#include "phigamma/cyclo.hpp"

using namespace phigamma;

namespace {

CycloElement rnd(std::mt19937_64& rng, FieldPtr f, long N) {
  int p = f->prime();
  std::vector<Padic> c;
  for (long i = 0; i < f->degree(); ++i) {
    mpz_class u = 0;
    for (long k = 0; k < N; ++k) u = u * p + static_cast<long>(rng() % p);
    c.push_back(Padic::from_int(p, u, N));
  }
  return CycloElement(f, c);
}

Padic q(int p, long num, long den, long rel = 20) { return Padic::from_rational(p, num, den, rel); }

}  // namespace

TEST_CASE("zeta squared reduces mod Phi_3") {
  auto F = cyclo_field(3, 1);
  CycloElement z = CycloElement::zeta_pow(F, 1, 12);
  CycloElement z2 = z * z;
  CHECK(z2.coord(0).equals(q(3, -1, 1)));
  CHECK(z2.coord(1).equals(q(3, -1, 1)));
}

TEST_CASE("inverse of zeta minus one in K_1 for p = 3") {
  auto F = cyclo_field(3, 1);
  CycloElement z = CycloElement::zeta_pow(F, 1, 12);
  CycloElement one = CycloElement::zeta_pow(F, 0, 12);
  CycloElement inv = one / (z - one);
  // Extended gcd of X - 1 and X^2 + X + 1 over Q: (X - 1)(-X - 2) = 3 - (X^2 + X + 1).
  CHECK(inv.coord(0).equals(q(3, -2, 3)));
  CHECK(inv.coord(1).equals(q(3, -1, 3)));
}

TEST_CASE("embedding and Galois basics") {
  auto F1 = cyclo_field(3, 1);
  CycloElement z = CycloElement::zeta_pow(F1, 1, 12);
  CycloElement up = embed_up(z);
  CHECK(up.equals(CycloElement::zeta_pow(cyclo_field(3, 2), 3, 12)));
  CycloElement g = galois(z, 2);
  CHECK(g.coord(0).equals(q(3, -1, 1)));
  CHECK(g.coord(1).equals(q(3, -1, 1)));
  CHECK(trace_down(z).coord(0).equals(q(3, -1, 1)));
  CycloElement one2 = CycloElement::zeta_pow(cyclo_field(5, 2), 0, 12);
  CHECK(trace_down(one2).equals(CycloElement::scalar(cyclo_field(5, 1), q(5, 5, 1))));
}

TEST_CASE("tower identities on random elements") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    int maxn = p == 3 ? 3 : 2;
    for (int n = 1; n <= maxn; ++n) {
      auto F = cyclo_field(p, n);
      for (int trial = 0; trial < 10; ++trial) {
        CycloElement a = rnd(rng, F, 12), b = rnd(rng, F, 12);
        long c1 = 1 + static_cast<long>(rng() % (F->order() - 1));
        if (c1 % p == 0) ++c1;
        long c2 = 1 + static_cast<long>(rng() % (F->order() - 1));
        if (c2 % p == 0) ++c2;
        CHECK(galois(galois(a, c1), c2).equals(galois(a, (c1 * c2) % F->order())));
        CHECK(galois(a * b, c1).equals(galois(a, c1) * galois(b, c1)));
        CHECK(galois(a + b, c1).equals(galois(a, c1) + galois(b, c1)));
        CHECK(embed_up(a + b).equals(embed_up(a) + embed_up(b)));
        CHECK(embed_up(a * b).equals(embed_up(a) * embed_up(b)));
        if (n < maxn) {
          CHECK(trace_down(embed_up(a)).equals(a.mul_int(p)));
          auto Fup = cyclo_field(p, n + 1);
          CycloElement x = rnd(rng, Fup, 12);
          CHECK(trace_down(galois(x, 1 + F->order())).equals(trace_down(x)));
        }
        CHECK((a * b / b).equals(a));
        CycloElement s = CycloElement::zero(F);
        for (long c = 1; c < F->order(); ++c)
          if (c % p != 0) s += galois(a, c);
        for (long i = 1; i < F->degree(); ++i) CHECK(s.coord(i).is_zero());
        CHECK(t_project(embed_to(a, n + 1), n).equals(a));
      }
    }
  }
}
