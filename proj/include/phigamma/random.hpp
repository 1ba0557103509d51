#pragma once

#include <random>

#include "phigamma/cyclo.hpp"
#include "phigamma/robba.hpp"

namespace phigamma {

// Integral p-adic with valuation in [vmin, vmax] and N relative digits.
inline Padic random_padic(std::mt19937_64& rng, int p, long N, long vmin = 0, long vmax = 0) {
  std::uniform_int_distribution<long> vd(vmin, vmax);
  mpz_class u = 0;
  for (long i = 0; i < N; ++i) u = u * p + static_cast<long>(rng() % static_cast<unsigned>(p));
  if (u % p == 0) u += 1;
  return Padic::from_parts(p, vd(rng), u, N);
}

// Random integer p-adic unit congruent to 1 mod p.
inline Padic random_principal_unit(std::mt19937_64& rng, int p, long N) {
  return Padic::from_int(p, 1, N) + random_padic(rng, p, N, 1, 1);
}

// Laurent polynomial with support in [lo, hi], integral coefficients known to absolute precision N.
inline LaurentWindow random_laurent(std::mt19937_64& rng, int p, long N, long lo, long hi) {
  std::vector<Padic> c;
  for (long d = lo; d <= hi; ++d) {
    if (rng() % 4 == 0) {
      c.push_back(Padic::zero(p));
      continue;
    }
    mpz_class u = 0;
    for (long i = 0; i < N; ++i) u = u * p + static_cast<long>(rng() % static_cast<unsigned>(p));
    c.push_back(u == 0 ? Padic::zero(p) : Padic::from_int(p, u, N - vp(p, u)));
  }
  return LaurentWindow(p, N, lo, std::move(c));
}

inline CycloElement random_cyclo(std::mt19937_64& rng, FieldPtr f, long N) {
  std::vector<Padic> c;
  for (long i = 0; i < f->degree(); ++i) c.push_back(random_padic(rng, f->prime(), N, 0, 1));
  return CycloElement(f, c);
}

}  // namespace phigamma
