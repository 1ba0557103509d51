#include <random>

#include "doctest.h"
#include "phigamma/dif.hpp"
#include "phigamma/random.hpp"

using namespace phigamma;

namespace {

Padic q(int p, long num, long den, long rel = 30) { return Padic::from_rational(p, num, den, rel); }

void check_agree(const DifElement& x, const DifElement& y, long need, long slack = 0) {
  Agreement a = dif_compare(x, y, slack);
  CHECK(a.ok);
  CHECK(a.certified >= need);
}

}  // namespace

TEST_CASE("iota of 1, T and t") {
  for (int p : {3, 5}) {
    for (int n = 1; n <= 2; ++n) {
      auto F = cyclo_field(p, n);
      DifElement one = iota(LaurentWindow::constant(p, 12, q(p, 1, 1)), n, 8);
      check_agree(one, DifElement::constant(F, 8, CycloElement::scalar(F, q(p, 1, 1))), 12);
      LaurentWindow T = LaurentWindow::monomial(p, 12, 1, q(p, 1, 1));
      CycloElement z1 = CycloElement::zeta_pow(F, 1, 30) - CycloElement::zeta_pow(F, 0, 30);
      CHECK(teval_zero(iota(T, n, 8)).equals(z1));
      // t maps to t / p^n
      DifElement it = iota(t_series(p, 12, 12 * F->degree() + 40), n, 8);
      DifElement want = DifElement::monomial(F, 8, 1, CycloElement::scalar(F, q(p, 1, 1).shift(-n)));
      Agreement a = dif_compare(it, want, 0);
      CHECK(a.ok);
      CHECK(a.certified >= 3);
    }
  }
}

TEST_CASE("teval_zero and poles") {
  auto F = cyclo_field(3, 1);
  CycloElement c = CycloElement::zeta_pow(F, 1, 20);
  DifElement x = DifElement::constant(F, 8, c) + DifElement::monomial(F, 8, 1, c);
  CHECK(teval_zero(x).equals(c));
  CHECK_THROWS_AS(teval_zero(DifElement::monomial(F, 8, -1, c)), KernelError);
  CHECK(teval_zero(DifElement::monomial(F, 8, -1, CycloElement::zero(F)) + DifElement::constant(F, 8, c)).equals(c));
}

TEST_CASE("dif_gamma on 1 and t") {
  auto F = cyclo_field(3, 2);
  Padic c = Padic::from_int(3, 4, 30);
  DifElement one = DifElement::constant(F, 8, CycloElement::scalar(F, q(3, 1, 1)));
  check_agree(dif_gamma(one, c), one, 12);
  DifElement t = DifElement::monomial(F, 8, 1, CycloElement::scalar(F, q(3, 1, 1)));
  check_agree(dif_gamma(t, c), t.scale(c), 12);
}

TEST_CASE("t_project examples") {
  for (int p : {3, 5}) {
    for (int m = 1; m <= 2; ++m) {
      auto F = cyclo_field(p, m);
      CycloElement one = CycloElement::zeta_pow(F, 0, 20);
      CHECK(t_project(one, 0).equals(CycloElement::scalar(cyclo_field(p, 0), q(p, 1, 1))));
      // Tr_{K_m/Q_p}(zeta_{p^m}) is -1 for m = 1 and 0 above.
      Padic tr = m == 1 ? q(p, -1, p - 1) : Padic::zero(p);
      CHECK(t_project(CycloElement::zeta_pow(F, 1, 20), 0).coord(0).equals(tr));
    }
  }
}

TEST_CASE("iota intertwines phi with the embedding") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 4; ++trial) {
      LaurentWindow f = random_laurent(rng, p, 12, -8, 40);
      DifElement lhs = iota(phi(f), 2, 8);
      DifElement rhs = dif_embed_up(iota(f, 1, 8));
      check_agree(lhs, rhs, 3, 2);
    }
  }
}

TEST_CASE("iota intertwines psi with the normalized trace") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 4; ++trial) {
      LaurentWindow f = random_laurent(rng, p, 12, -8, 40);
      DifElement lhs = iota(psi(f), 1, 8);
      DifElement rhs = dif_normalized_trace(iota(f, 2, 8));
      check_agree(lhs, rhs, 8, 2);
    }
  }
}

TEST_CASE("iota is multiplicative and gamma equivariant") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 4; ++trial) {
      LaurentWindow f = random_laurent(rng, p, 12, -4, 10), g = random_laurent(rng, p, 12, -4, 10);
      check_agree(iota(f * g, 1, 8), iota(f, 1, 8) * iota(g, 1, 8), 8, 2);
      Padic a = random_principal_unit(rng, p, 30);
      check_agree(dif_gamma(iota(f, 1, 8), a), iota(gamma(f, a, 100), 1, 8), 4, 2);
    }
  }
}
