#pragma once

#include <random>
#include <vector>

#include "jetline.hpp"

namespace jetline::testing {

inline const Field& Q() {
  static const Field f = Field::rationals();
  return f;
}
inline const Field& F5() {
  static const Field f = Field::prime(5);
  return f;
}
inline std::vector<Field> both_fields() { return {Q(), F5()}; }

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Product of elementary matrices I + c x^k E_ij with k in [0, max_exp] when
/// polynomial_in_t, else k in [-max_exp, 0]; always unimodular.
inline LaurentMatrix random_unimodular(const Field& field, std::size_t r, Rng& rng, bool polynomial_in_t,
                                       int factors = 3, int max_exp = 2) {
  LaurentMatrix m = laurent_identity(field, r);
  if (r < 2) return m;
  for (int f = 0; f < factors; ++f) {
    LaurentMatrix el = laurent_identity(field, r);
    const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(r) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(r) - 2));
    if (j >= i) ++j;
    const int k = uniform(rng, 0, max_exp);
    el(i, j) = LaurentPoly::monomial(random_nonzero_scalar(field, rng, 3), polynomial_in_t ? k : -k);
    m = m * el;
  }
  return m;
}

/// diag(t^-a_i) twisted by random unimodular factors on both sides; the
/// splitting type is {a_i} by construction.
struct KnownBundle {
  TransitionBundle bundle;
  SplittingType splitting;
};

inline KnownBundle random_known_bundle(const Field& field, Rng& rng, std::size_t max_rank = 3, int spread = 3) {
  const std::size_t r = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(max_rank)));
  std::vector<int> a;
  for (std::size_t k = 0; k < r; ++k) a.push_back(uniform(rng, -spread, spread));
  const LaurentMatrix d = TransitionBundle::split(field, a).transition();
  const LaurentMatrix left = random_unimodular(field, r, rng, false);
  const LaurentMatrix right = random_unimodular(field, r, rng, true);
  return {TransitionBundle(left * d * right), SplittingType(a)};
}

// --- jet rings ---

inline Vec random_vec(const Field& f, Rng& rng, std::size_t n, int deg = 5) {
  Vec v(n, LaurentPoly::zero(f));
  for (auto& x : v) x = random_laurent(f, rng, 0, deg);
  return v;
}

/// A rank-2 bimodule, abelianized or with a random polynomial left action,
/// and a random d(t).
inline JetRing random_ring(const Field& f, Rng& rng, bool abelian) {
  LaurentMatrix lambda = Bimodule::abelianized(f, 2).left_action();
  if (!abelian) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) lambda(i, j) = random_laurent(f, rng, 0, 1, 3);
    }
  }
  return JetRing(Derivation(Bimodule(lambda), {random_laurent(f, rng, 0, 2), random_laurent(f, rng, 0, 2)}));
}

inline JetElement random_element(const JetRing& ring, Rng& rng) {
  return ring.element(random_vec(ring.field(), rng, ring.bimodule().rank()), random_laurent(ring.field(), rng, 0, 5));
}

inline JetModuleElement random_module_element(const JetModule& m, Rng& rng) {
  return {random_vec(m.field(), rng, m.tensor_rank(), 3), random_vec(m.field(), rng, m.e_rank(), 3)};
}

// --- idempotents ---

inline PolyMatrix poly_matrix(const std::vector<std::vector<MultiPoly>>& rows) {
  return PolyMatrix::from_rows(rows, MultiPoly::zero(rows[0][0].field(), rows[0][0].nvars()));
}

inline PolyVec random_poly_vec(const Field& f, std::size_t n, std::size_t nvars, Rng& rng) {
  PolyVec w;
  for (std::size_t i = 0; i < n; ++i) w.push_back(random_multipoly(f, nvars, rng, 3));
  return w;
}

/// C E C^-1 for a random constant invertible C and a diagonal 0/1 matrix E.
inline Idempotent random_conjugated_idempotent(const Field& f, std::size_t n, std::size_t nvars, Rng& rng) {
  for (;;) {
    ScalarMatrix cm(n, n, Scalar::zero(f));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) cm(i, j) = random_scalar(f, rng, 4);
    }
    const auto inv = inverse(cm);
    if (!inv) continue;
    ScalarMatrix e(n, n, Scalar::zero(f));
    for (std::size_t i = 0; i < n; ++i) e(i, i) = (rng() % 2) ? Scalar::one(f) : Scalar::zero(f);
    const ScalarMatrix p = cm * e * *inv;
    return Idempotent(p.map([&](const Scalar& s) { return MultiPoly::constant(s, nvars); }));
  }
}

/// [[1, a], [0, 0]].
inline Idempotent graph_idempotent(const MultiPoly& a) {
  const MultiPoly one = MultiPoly::one(a.field(), a.nvars()), zero = MultiPoly::zero(a.field(), a.nvars());
  return Idempotent(poly_matrix({{one, a}, {zero, zero}}));
}

/// Identity, zero, the graph of x1, the graph of a random polynomial, and two
/// random conjugated constant idempotents.
inline std::vector<Idempotent> sample_idempotents(const Field& f, std::size_t nvars, Rng& rng) {
  std::vector<Idempotent> out;
  const MultiPoly one = MultiPoly::one(f, nvars), zero = MultiPoly::zero(f, nvars);
  out.emplace_back(poly_matrix({{one, zero, zero}, {zero, one, zero}, {zero, zero, one}}));
  out.emplace_back(poly_matrix({{zero, zero}, {zero, zero}}));
  out.push_back(graph_idempotent(MultiPoly::variable(f, nvars, 0)));
  out.push_back(graph_idempotent(random_multipoly(f, nvars, rng, 3)));
  out.push_back(random_conjugated_idempotent(f, 3, nvars, rng));
  out.push_back(random_conjugated_idempotent(f, 3, nvars, rng));
  return out;
}

}  // namespace jetline::testing
