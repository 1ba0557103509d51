#include <random>

#include "doctest.h"
#include "phigamma/herr.hpp"
#include "phigamma/random.hpp"

using namespace phigamma;

namespace {

constexpr long kWide = 150;

Padic q(int p, long num, long den, long rel = 36) { return Padic::from_rational(p, num, den, rel); }

RankOneCharacter chr(int p, long k) { return {q(p, 1, 1), k}; }

RankOneElement constant(const RankOneCharacter& c, int p, long j, const Padic& v) {
  return RankOneElement::single(c, j, LaurentWindow::constant(p, 12, v));
}

Padic random_unit(std::mt19937_64& rng, int p) {
  Padic u = random_padic(rng, p, 30);
  while (u.is_zero() || u.val() > 0) u = random_padic(rng, p, 30);
  return u;
}

// Part-wise agreement on degrees in [-10, hi], away from the truncated edges of the windows.
Agreement low_compare(const RankOneElement& x, const RankOneElement& y, long hi) {
  Agreement acc;
  for (const auto* z : {&x, &y})
    for (const auto& [j, f] : z->parts()) {
      Agreement a = compare(x.part(j), y.part(j), 0, -10, hi);
      acc.ok = acc.ok && a.ok;
      acc.certified = std::min(acc.certified, a.certified);
    }
  return acc;
}

void check_zero(const RankOneElement& x, long need = 10, long hi = 20) {
  Agreement a = low_compare(x, RankOneElement(x.character(), x.prime(), x.prec()), hi);
  CHECK(a.ok);
  CHECK(a.certified >= need);
}

void check_same(const Cochain& a, const Cochain& b, long need = 10) {
  Agreement r = cochain_compare(a, b);
  CHECK(r.ok);
  CHECK(r.certified >= need);
}

// Cocycles [c1, c2] + d1(v) of the trivial module B, v a polynomial.
Cochain trivial_module_cocycle(std::mt19937_64& rng, int p, const Padic& c1, const Padic& c2) {
  RankOneCharacter b = chr(p, 0);
  RankOneElement v = RankOneElement::single(b, 0, random_laurent(rng, p, 12, 0, 6));
  Cochain dv = d1(v, kWide);
  return {Flavor::Phi, 1, {constant(b, p, 0, c1) + dv.entries[0], constant(b, p, 0, c2) + dv.entries[1]}};
}

}  // namespace

TEST_CASE("d2 o d1 = 0 on both complexes") {
  std::mt19937_64 rng(42);
  RankOneElement z(chr(3, 1), 3, 12);
  for (const auto& e : d1(z).entries) CHECK(e.is_zero());
  for (int trial = 0; trial < 100; ++trial) {
    int p = trial % 2 ? 5 : 3;
    long k = static_cast<long>(rng() % 4) - 1;
    RankOneCharacter c{random_unit(rng, p), k};
    RankOneElement x(c, p, 12);
    for (long j = k - 1; j <= k; ++j) x.add(j, random_laurent(rng, p, 12, -3, 6));
    x = delta_project(x, 90);
    check_zero(d2(d1(x, 40), 40).entries[0], 6);
    // psi needs p times the degrees it returns, so its output is read lower down
    check_zero(d2psi(d1psi(x, 90), 90).entries[0], 6, 8);
  }
}

TEST_CASE("comparison map to the psi-complex") {
  std::mt19937_64 rng(42);
  const int p = 3;
  for (int trial = 0; trial < 5; ++trial) {
    RankOneElement v = RankOneElement::single(chr(p, 0), 0, random_laurent(rng, p, 12, -3, 6));
    check_same(to_psi(d1(v, kWide)), d1psi(v, kWide), 8);
    Cochain z = trivial_module_cocycle(rng, p, random_padic(rng, p, 30), random_padic(rng, p, 30));
    CHECK(cocycle_check(z, kWide).ok);
    Agreement a = cocycle_check(to_psi(z), kWide);
    CHECK(a.ok);
    CHECK(a.certified >= 8);
    Cochain e = exp_class({chr(p, 1), random_padic(rng, p, 30), p, 12}, {}, kWide);
    CHECK(cocycle_check(to_psi(e), kWide).ok);
    check_zero(d2psi(to_psi(e), kWide).entries[0], 8, 20);
  }
}

TEST_CASE("cup products") {
  std::mt19937_64 rng(42);
  const int p = 3;
  RankOneElement one = constant(chr(p, 0), p, 0, q(p, 1, 1));
  Cochain z = trivial_module_cocycle(rng, p, q(p, 2, 1), q(p, 5, 1));
  check_same(cup01(one, z), z, 12);
  for (int trial = 0; trial < 5; ++trial) {
    // cocycle-coboundary: d1(a) u z = d2(a x', a y') for a cocycle z = [x', y']
    RankOneElement a = RankOneElement::single(chr(p, 1), 0, random_laurent(rng, p, 12, 0, 6));
    Cochain zz = trivial_module_cocycle(rng, p, random_padic(rng, p, 30), random_padic(rng, p, 30));
    Cochain lhs = cup11(d1(a, kWide), zz, kWide);
    Cochain rhs = d2({Flavor::Phi, 1, {tensor(a, zz.entries[0]), tensor(a, zz.entries[1])}}, kWide);
    check_same(lhs, rhs, 8);
    // graded commutativity, read through the residue functional on B(1)
    Cochain e = exp_class({chr(p, 1), random_padic(rng, p, 30), p, 12}, {}, kWide);
    Padic s = h2_class(cup11(zz, e, kWide)) + h2_class(cup11(e, zz, kWide));
    CHECK(s.is_zero());
    CHECK(s.abs() >= 6);
  }
}

TEST_CASE("lift solver") {
  std::mt19937_64 rng(42);
  const int p = 3;
  CHECK(lift_solver({chr(p, 1), Padic::zero(p), p, 12}).is_zero());
  for (long k = -1; k <= 0; ++k) {
    DRFrameVector x{chr(p, k), q(p, 4, 7), p, 12};
    CHECK(lift_solver(x).is_zero());
    // x itself is admissible: nothing polar to match
    CHECK(lift_residual(constant(x.chr, p, k, x.c), x).ok);
  }
  for (int trial = 0; trial < 6; ++trial) {
    long k = 1 + trial % 2;
    DRFrameVector x{chr(p, k), random_padic(rng, p, 30, 0, 1), p, 12};
    LiftWindow w{-8, 40, 1, 2};
    RankOneElement xt = lift_solver(x, w);
    Agreement r = lift_residual(xt, x, w);
    CHECK(r.ok);
    CHECK(r.certified >= 10);
  }
  try {
    lift_solver({chr(p, 2), q(p, 1, 1), p, 12}, {0, 3, 0, 2});
    CHECK(false);
  } catch (const KernelError& e) {
    CHECK(e.code() == ErrorCode::NoSolutionInWindow);
  }
}

TEST_CASE("explicit exponential: cocycle, lift independence, Fil0") {
  std::mt19937_64 rng(42);
  const int p = 3;
  for (long k = -1; k <= 2; ++k) {
    for (int trial = 0; trial < 10; ++trial) {
      DRFrameVector x{chr(p, k), random_padic(rng, p, 30, 0, 1), p, 12};
      RankOneElement a, b;
      if (k >= 1) {
        a = lift_solver(x);
        LiftWindow square{0, k * 9 - 1, 0, 2};
        b = lift_solver(x, square);
        CHECK(lift_residual(b, x, square).ok);
      } else {
        a = lift_solver(x);
        b = constant(x.chr, p, k, x.c);
      }
      CHECK(lift_residual(a, x).ok);
      Cochain ea = exp_from_lift(a, kWide), eb = exp_from_lift(b, kWide);
      Agreement c = cocycle_check(ea, kWide);
      CHECK(c.ok);
      CHECK(c.certified >= 8);
      Cochain diff{Flavor::Phi, 1, {ea.entries[0] - eb.entries[0], ea.entries[1] - eb.entries[1]}};
      CoboundaryWitness w = coboundary_witness(diff, delta_project(a, kWide) - delta_project(b, kWide), {}, kWide);
      CHECK(w.match.ok);
      CHECK(w.match.certified >= 8);
      CHECK(w.regular);
      if (k <= 0) {
        // exp kills Fil^0: the class is d1 of an element of D
        CHECK(x.in_fil0());
        CoboundaryWitness f = coboundary_witness(eb, delta_project(b, kWide), {}, kWide);
        CHECK(f.match.ok);
        CHECK(f.regular);
      } else {
        CHECK_FALSE(x.in_fil0());
        // a lift is not regular itself, so the class is not visibly trivial
        CHECK_FALSE(coboundary_witness(ea, delta_project(a, kWide), {}, kWide).regular);
      }
    }
  }
  // x = 0 gives the zero cochain
  for (const auto& e : exp_class({chr(p, 1), Padic::zero(p), p, 12}).entries) CHECK(e.is_zero());
}

TEST_CASE("exp cochains are Delta-invariant") {
  const int p = 5;
  Cochain e = exp_class({chr(p, 1), q(p, 3, 1), p, 12}, {0, 40, 0, 1}, 80);
  for (long c = 2; c < p; ++c) {
    Padic w = Padic::from_int(p, teichmuller(p, c, 40), 40);
    for (const auto& x : e.entries) {
      Agreement a = rank1_compare(mod_gamma(x, w, 80), x);
      CHECK(a.ok);
      CHECK(a.certified >= 6);
    }
  }
}

TEST_CASE("g_D and the dual exponential") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    RankOneCharacter b = chr(p, 0);
    DRFrameVector x{b, random_padic(rng, p, 30), p, 12};
    Padic lc = plog(gamma_K(p, 40)).value;
    CHECK(teval_zero(g_class(x)).coord(0).equals(lc * x.c));
    // the constant cocycle [log chi(gamma_K) x, 0] transports g_D(x)
    Cochain z{Flavor::Phi, 1, {constant(b, p, 0, lc * x.c), RankOneElement(b, p, 12)}};
    CHECK(cocycle_check(z).ok);
    DRFrameVector back = dual_exp(z);
    CHECK(back.c.equals(x.c));
    CHECK(back.in_fil0());
    // a coboundary has no invariant component
    RankOneElement v = RankOneElement::single(b, 0, random_laurent(rng, p, 12, 0, 5));
    CHECK(dual_exp(d1(v, kWide)).c.is_zero());
  }
}

TEST_CASE("de Rham pairing") {
  std::mt19937_64 rng(42);
  const int p = 3;
  for (long k = -3; k <= 3; ++k) {
    RankOneCharacter c = chr(p, k);
    RankOneCharacter d = dual_character(c);
    CHECK(d.k == 1 - k);
    CHECK(pair_dR({c, q(p, 1, 1), p, 12}, {d, q(p, 1, 1), p, 12}).equals(q(p, 1, 1)));
    Padic a1 = random_padic(rng, p, 30), a2 = random_padic(rng, p, 30), b = random_padic(rng, p, 30);
    Padic lhs = pair_dR({c, a1 + a2, p, 12}, {d, b, p, 12});
    CHECK(lhs.equals(pair_dR({c, a1, p, 12}, {d, b, p, 12}) + pair_dR({c, a2, p, 12}, {d, b, p, 12})));
    // Fil^0 of D and of its dual never meet nontrivially
    DRFrameVector x{c, q(p, 1, 1), p, 12}, y{d, q(p, 1, 1), p, 12};
    CHECK_FALSE((x.in_fil0() && y.in_fil0()));
  }
  CHECK_THROWS_AS(pair_dR({chr(p, 1), q(p, 1, 1), p, 12}, {chr(p, 1), q(p, 1, 1), p, 12}), KernelError);
}

TEST_CASE("residue functional on the psi-complex H^2") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    RankOneCharacter c = chr(p, 1);
    CHECK(h2_functional(RankOneElement::single(c, 0, LaurentWindow::monomial(p, 12, -1, q(p, 1, 1)))).equals(q(p, 1, 1)));
    for (int trial = 0; trial < 25; ++trial) {
      RankOneElement g = RankOneElement::single(c, 0, random_laurent(rng, p, 12, -6, 20));
      Padic a = h2_functional(mod_psi(g) - g);
      CHECK(a.is_zero());
      CHECK(a.abs() >= 8);
      Padic b = h2_functional(mod_gamma(g, random_principal_unit(rng, p, 30)) - g);
      CHECK(b.is_zero());
      CHECK(b.abs() >= 8);
    }
  }
  CHECK_THROWS_AS(h2_functional(constant(chr(3, 0), 3, 0, q(3, 1, 1))), KernelError);
}

TEST_CASE("cup of exp with a cocycle equals the d2-image of the dif-side cup") {
  std::mt19937_64 rng(42);
  const int p = 3;
  for (int trial = 0; trial < 5; ++trial) {
    DRFrameVector x{chr(p, 1), random_padic(rng, p, 30), p, 12};
    RankOneElement xt = delta_project(lift_solver(x), kWide);
    Cochain z = trivial_module_cocycle(rng, p, random_padic(rng, p, 30), random_padic(rng, p, 30));
    Cochain lhs = cup11(exp_from_lift(xt, kWide), z, kWide);
    Cochain rhs = d2({Flavor::Phi, 1, {tensor(xt, z.entries[0]), tensor(xt, z.entries[1])}}, kWide);
    check_same(lhs, rhs, 8);
  }
}

TEST_CASE("exp and the dual exponential are adjoint up to one constant") {
  std::mt19937_64 rng(42);
  const int p = 3;
  Padic kappa;
  long worst = kInf;
  for (int trial = 0; trial < 20; ++trial) {
    DRFrameVector x{chr(p, 1), random_unit(rng, p), p, 12};
    Cochain z = trivial_module_cocycle(rng, p, random_unit(rng, p), random_padic(rng, p, 30));
    Padic lhs = h2_class(cup11(exp_class(x, {}, kWide), z, kWide));
    Padic rhs = pair_dR(x, dual_exp(z));
    Padic ratio = lhs / rhs;
    if (trial == 0) {
      kappa = ratio;
      continue;
    }
    worst = std::min(worst, disc_val(ratio, kappa));
  }
  MESSAGE("fitted constant " << kappa.str());
  CHECK(worst >= 5);
  CHECK(worst >= std::min(kappa.abs(), 20L) - 1);
}
