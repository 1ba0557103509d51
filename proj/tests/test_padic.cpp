#include <random>

#include "doctest.h"
#include "phigamma/padic.hpp"

using namespace phigamma;

namespace {

// Extended Euclid on machine integers, independent of GMP.
long long inverse_mod(long long a, long long m) {
  long long g = m, x = 0, x1 = 1, a1 = a % m;
  while (a1 != 0) {
    long long q = g / a1;
    long long t = g - q * a1;
    g = a1;
    a1 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  return ((x % m) + m) % m;
}

Padic rnd(std::mt19937_64& rng, int p, long N, long vmin, long vmax) {
  std::uniform_int_distribution<long> vd(vmin, vmax);
  mpz_class u = 0;
  for (long i = 0; i < N; ++i) u = u * p + static_cast<long>(rng() % p);
  if (u % p == 0) u += 1;
  return Padic::from_parts(p, vd(rng), u, N);
}

}  // namespace

TEST_CASE("integer arithmetic examples") {
  Padic a = Padic::from_int(3, 2, 12), b = Padic::from_int(3, 5, 12);
  Padic c = a * b;
  CHECK(c.val() == 0);
  auto d = c.digits();
  REQUIRE(d.size() >= 3);
  CHECK(d[0] == 1);
  CHECK(d[1] == 0);
  CHECK(d[2] == 1);
  Padic three = Padic::from_int(3, 3, 12);
  CHECK((three - three).is_zero());
  CHECK((three - three).val() == kInf);
}

TEST_CASE("one half mod 3^6 matches extended gcd") {
  Padic h = Padic::from_int(3, 1, 6) / Padic::from_int(3, 2, 6);
  long long inv = inverse_mod(2, 729);
  std::vector<int> want;
  for (int i = 0; i < 6; ++i) {
    want.push_back(static_cast<int>(inv % 3));
    inv /= 3;
  }
  CHECK(h.digits() == want);
  CHECK(want == std::vector<int>{2, 1, 1, 1, 1, 1});
}

TEST_CASE("division by zero at precision throws") {
  Padic z = Padic::from_int(3, 9, 2) - Padic::from_int(3, 9, 2);
  CHECK_THROWS_AS(Padic::from_int(3, 1, 5) / z, KernelError);
}

TEST_CASE("cancellation reduces precision") {
  Padic a = Padic::from_int(3, 1 + 27, 6);
  Padic b = Padic::from_int(3, 1, 6);
  Padic d = a - b;
  CHECK(d.val() == 3);
  CHECK(d.abs() == 6);
  CHECK(d.rel() == 3);
}

TEST_CASE("binomial examples") {
  CHECK(binom(Padic::from_int(3, 4, 12), 2).equals(Padic::from_int(3, 6, 20)));
  CHECK(binom(Padic::from_int(5, 17, 12), 0).equals(Padic::from_int(5, 1, 20)));
  Padic b = binom(Padic::from_int(3, 4, 12), 3);
  CHECK(b.equals(Padic::from_int(3, 4, 20)));
  CHECK(binom_int(3, -2, 3, 12).equals(Padic::from_int(3, -4, 12)));
}

TEST_CASE("log examples") {
  CHECK(plog(Padic::from_int(3, 1, 12)).value.is_zero());
  Padic l = plog(Padic::from_int(3, 4, 12)).value;
  CHECK(l.val() == 1);
  CHECK(log0(Padic::from_int(3, 4, 12)).val() == 0);
}

TEST_CASE("log of 4 mod 3^8 matches rational partial sum") {
  mpq_class s = 0;
  mpz_class pw = 1;
  for (int k = 1; k <= 20; ++k) {
    pw *= 3;
    mpq_class term(pw, k);
    term.canonicalize();
    s += (k % 2 == 1) ? term : mpq_class(-term);
  }
  s.canonicalize();
  Padic oracle = Padic::from_rational(3, s.get_num(), s.get_den(), 30);
  LogResult r = plog(Padic::from_int(3, 4, 8));
  CHECK(r.error_val >= 8);
  CHECK(disc_val(r.value, oracle) >= 8);
}

TEST_CASE("Teichmuller lifts are roots of unity") {
  for (int p : {3, 5}) {
    for (long a = 1; a < p; ++a) {
      mpz_class w = teichmuller(p, a, 12);
      mpz_class x;
      mpz_powm_ui(x.get_mpz_t(), w.get_mpz_t(), p - 1, ppow(p, 12).get_mpz_t());
      CHECK(x == 1);
      CHECK(w % p == a);
    }
  }
}

TEST_CASE("ring axioms and valuations on random scalars") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 200; ++trial) {
      Padic a = rnd(rng, p, 12, -3, 3), b = rnd(rng, p, 12, -3, 3), c = rnd(rng, p, 12, -3, 3);
      CHECK(((a + b) + c).equals(a + (b + c)));
      CHECK((a * (b + c)).equals(a * b + a * c));
      CHECK((a * b).val() == a.val() + b.val());
      CHECK(((a / b) * b).equals(a));
    }
  }
}

TEST_CASE("binomials of integral arguments are integral") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 200; ++trial) {
      Padic a = rnd(rng, p, 12, 0, 2);
      long k = static_cast<long>(rng() % 31);
      Padic b = binom(a, k);
      CHECK((b.is_zero() || b.val() >= 0));
    }
  }
}

TEST_CASE("log is a homomorphism on principal units") {
  std::mt19937_64 rng(42);
  for (int p : {3, 5}) {
    for (int trial = 0; trial < 100; ++trial) {
      Padic one = Padic::from_int(p, 1, 40);
      Padic a = one + rnd(rng, p, 12, 1, 3);
      Padic b = one + rnd(rng, p, 12, 1, 3);
      LogResult la = plog(a), lb = plog(b), lab = plog(a * b);
      long tol = std::min({la.error_val, lb.error_val, lab.error_val});
      Padic diff = lab.value - la.value - lb.value;
      CHECK((diff.is_zero() || diff.val() >= tol));
    }
  }
}
