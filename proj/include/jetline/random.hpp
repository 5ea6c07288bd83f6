#pragma once

// Seeded generators for exact test data (property checks and probe sets).

#include <random>

#include "jetline/laurent.hpp"
#include "jetline/multipoly.hpp"

namespace jetline {

using Rng = std::mt19937_64;

inline Scalar random_scalar(const Field& field, Rng& rng, long bound = 9) {
  std::uniform_int_distribution<long> num(-bound, bound);
  if (field.is_rational() && (rng() % 4 == 0)) {
    std::uniform_int_distribution<long> den(1, 4);
    return Scalar(field, mpz_class(num(rng)), mpz_class(den(rng)));
  }
  return Scalar(field, num(rng));
}

inline Scalar random_nonzero_scalar(const Field& field, Rng& rng, long bound = 9) {
  for (;;) {
    Scalar s = random_scalar(field, rng, bound);
    if (!s.is_zero()) return s;
  }
}

/// Random Laurent polynomial with exponents in [lo, hi], about half the
/// slots filled.
inline LaurentPoly random_laurent(const Field& field, Rng& rng, int lo, int hi, long bound = 9) {
  LaurentPoly p(field);
  for (int e = lo; e <= hi; ++e) {
    if (rng() % 2 == 0) p.add_term(e, random_scalar(field, rng, bound));
  }
  return p;
}

inline MultiPoly random_multipoly(const Field& field, std::size_t nvars, Rng& rng, int max_degree,
                                  long bound = 9) {
  MultiPoly p(field, nvars);
  const int terms = 1 + static_cast<int>(rng() % 5);
  std::uniform_int_distribution<int> deg(0, max_degree);
  for (int k = 0; k < terms; ++k) {
    MultiPoly::Exponents e(nvars, 0);
    int budget = deg(rng);
    for (std::size_t v = 0; v < nvars && budget > 0; ++v) {
      const int x = static_cast<int>(rng() % static_cast<unsigned>(budget + 1));
      e[v] = x;
      budget -= x;
    }
    p.add_term(e, random_scalar(field, rng, bound));
  }
  return p;
}

}  // namespace jetline
