#pragma once

// Vector bundles on the projective line in the two-chart model
// U0 = Spec K[t], U1 = Spec K[s], s = 1/t.
//
// A bundle of rank r is an invertible Laurent matrix T.  A section with
// U0-coordinates u(t) in K[t]^r has U1-coordinates T u, and is global when
// T u has no positive exponent.  O(d) is [t^-d].

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "jetline/jet_ring.hpp"
#include "jetline/linalg.hpp"

namespace jetline {

class TransitionBundle {
 public:
  explicit TransitionBundle(LaurentMatrix transition) : t_(std::move(transition)) {
    if (!t_.is_square() || t_.rows() == 0) throw DimensionMismatch("transition matrix must be square and non-empty");
    t_inv_ = laurent_mat_inverse(t_);
  }

  /// O(d).
  static TransitionBundle line(const Field& field, int d) {
    return TransitionBundle(LaurentMatrix::from_rows({{LaurentPoly::monomial(field, 1, -d)}}, LaurentPoly::zero(field)));
  }

  /// O(a_1) + ... + O(a_r).
  static TransitionBundle split(const Field& field, const std::vector<int>& degrees) {
    LaurentMatrix m(degrees.size(), degrees.size(), LaurentPoly::zero(field));
    for (std::size_t k = 0; k < degrees.size(); ++k) m(k, k) = LaurentPoly::monomial(field, 1, -degrees[k]);
    return TransitionBundle(std::move(m));
  }

  std::size_t rank() const noexcept { return t_.rows(); }
  const Field& field() const noexcept { return t_.zero().field(); }
  const LaurentMatrix& transition() const noexcept { return t_; }
  const LaurentMatrix& inverse_transition() const noexcept { return t_inv_; }

  /// E(n): the transition is multiplied by t^-n.
  TransitionBundle twisted(int n) const { return TransitionBundle(shifted(t_, -n), shifted(t_inv_, n)); }

  friend bool operator==(const TransitionBundle& a, const TransitionBundle& b) { return a.t_ == b.t_; }

 private:
  TransitionBundle(LaurentMatrix t, LaurentMatrix t_inv) : t_(std::move(t)), t_inv_(std::move(t_inv)) {}

  LaurentMatrix t_;
  LaurentMatrix t_inv_;
};

inline TransitionBundle direct_sum(const TransitionBundle& a, const TransitionBundle& b) {
  return TransitionBundle(block_diagonal(a.transition(), b.transition()));
}

/// Grothendieck exponents, stored in descending order.
struct SplittingType {
  std::vector<int> degrees;

  SplittingType() = default;
  explicit SplittingType(std::vector<int> d) : degrees(std::move(d)) {
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
  }

  std::size_t rank() const noexcept { return degrees.size(); }
  int degree() const { return std::accumulate(degrees.begin(), degrees.end(), 0); }

  friend bool operator==(const SplittingType&, const SplittingType&) = default;

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t k = 0; k < degrees.size(); ++k) {
      if (k) out += ", ";
      out += std::to_string(degrees[k]);
    }
    return out + "}";
  }
};

/// A class in K_0(P^1) = Z + Z, as (degree, rank).
struct K0Class {
  long degree = 0;
  long rank = 0;

  friend bool operator==(const K0Class&, const K0Class&) = default;
  friend K0Class operator+(const K0Class& a, const K0Class& b) { return {a.degree + b.degree, a.rank + b.rank}; }
  friend K0Class operator-(const K0Class& a, const K0Class& b) { return {a.degree - b.degree, a.rank - b.rank}; }

  std::string to_string() const { return "(" + std::to_string(degree) + ", " + std::to_string(rank) + ")"; }
};

/// det T = c t^k gives degree -k, so that degree(O(d)) = d.
inline int degree(const TransitionBundle& e) { return -*determinant(e.transition()).min_exponent(); }

inline K0Class k0_class(const TransitionBundle& e) { return {degree(e), static_cast<long>(e.rank())}; }

/// [left] - [right] in K_0.  Both bundles must have the same rank.
inline K0Class c_I_class(const TransitionBundle& left, const TransitionBundle& right) {
  if (left.rank() != right.rank()) {
    throw RankMismatch("left and right structures have different ranks",
                       std::to_string(left.rank()) + " vs " + std::to_string(right.rank()));
  }
  return k0_class(left) - k0_class(right);
}

// --- Cohomology ------------------------------------------------------------

namespace detail {

inline int max_exp(const LaurentMatrix& m) { return max_exponent(m).value_or(0); }

}  // namespace detail

/// dim H^0(E(n)) counted among sections u with deg u <= bound: the kernel of
/// the linear conditions "t^-n T u has no positive exponent".
inline int h0_at_bound(const TransitionBundle& e, int n, int bound) {
  if (bound < 0) return 0;
  const LaurentMatrix tn = shifted(e.transition(), -n);
  const std::size_t r = e.rank();
  const int slots = bound + 1;
  const int top = detail::max_exp(tn) + bound;
  const int positive = std::max(0, top);
  const Field& field = e.field();
  ScalarMatrix m(r * positive, r * slots, Scalar::zero(field));
  if (positive == 0) return static_cast<int>(r) * slots;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (const auto& [ex, c] : tn(i, j).terms()) {
        for (int k = 0; k < slots; ++k) {
          const int target = ex + k;
          if (target < 1) continue;
          m(i * positive + (target - 1), j * slots + k) = c;
        }
      }
    }
  }
  return static_cast<int>(r) * slots - static_cast<int>(rank(m));
}

/// Every section of E(n) has degree <= n + (largest exponent of T^-1), since
/// u = t^n T^-1 v with v polynomial in 1/t.
inline int h0_degree_bound(const TransitionBundle& e, int n) {
  return std::max(0, n + detail::max_exp(e.inverse_transition()));
}

struct H0Report {
  int value = 0;
  int bound = 0;
  int value_at_wider_bound = 0;

  bool stable() const noexcept { return value == value_at_wider_bound; }
};

/// h0 together with the re-check at bound + 2.
inline H0Report h0_report(const TransitionBundle& e, int n) {
  H0Report rep;
  rep.bound = h0_degree_bound(e, n);
  rep.value = h0_at_bound(e, n, rep.bound);
  rep.value_at_wider_bound = h0_at_bound(e, n, rep.bound + 2);
  return rep;
}

/// dim H^0(E(n)).  Throws StabilizationFailure if widening the degree bound
/// changes the count.
inline int h0(const TransitionBundle& e, int n = 0) {
  const H0Report rep = h0_report(e, n);
  if (!rep.stable()) {
    throw StabilizationFailure("h0 changed when the degree bound grew",
                               "n=" + std::to_string(n) + "; bound=" + std::to_string(rep.bound) + "; " +
                                   std::to_string(rep.value) + " vs " + std::to_string(rep.value_at_wider_bound));
  }
  return rep.value;
}

/// dim of Laurent^r / (K[t]^r + T^-1 K[1/t]^r) for E(n), with the quotient
/// read on exponents [-window, -1].  Exact once window >= max exp(T(n)) - 1:
/// everything at or below that depth is already in T^-1 K[1/t]^r.
inline int h1_at_window(const TransitionBundle& e, int n, int window) {
  if (window <= 0) return 0;
  const LaurentMatrix tn_inv = shifted(e.inverse_transition(), n);
  const std::size_t r = e.rank();
  const int generators = window + detail::max_exp(tn_inv) + 1;  // s^m, m = 0..generators-1
  if (generators <= 0) return static_cast<int>(r) * window;
  const Field& field = e.field();
  ScalarMatrix m(r * window, r * static_cast<std::size_t>(generators), Scalar::zero(field));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      for (const auto& [ex, c] : tn_inv(i, j).terms()) {
        for (int s = 0; s < generators; ++s) {
          const int target = ex - s;
          if (target < -window || target > -1) continue;
          m(i * window + (target + window), j * generators + s) = c;
        }
      }
    }
  }
  return static_cast<int>(r) * window - static_cast<int>(rank(m));
}

inline int h1_window(const TransitionBundle& e, int n) {
  return std::max(0, detail::max_exp(shifted(e.transition(), -n)) - 1);
}

/// dim H^1(E(n)), re-checked with the window widened by 2.
inline int h1(const TransitionBundle& e, int n = 0) {
  const int w = h1_window(e, n);
  const int value = h1_at_window(e, n, w);
  const int wider = h1_at_window(e, n, w + 2);
  if (value != wider) {
    throw StabilizationFailure("h1 changed when the window grew",
                               "n=" + std::to_string(n) + "; window=" + std::to_string(w));
  }
  return value;
}

/// Splitting exponents lie in [-max exp(T), max exp(T^-1)].
inline std::pair<int, int> splitting_bounds(const TransitionBundle& e) {
  return {-detail::max_exp(e.transition()), detail::max_exp(e.inverse_transition())};
}

/// Splitting type from the jumps of h0: h0(n) - h0(n-1) = #{i : a_i >= -n}.
inline SplittingType splitting_type(const TransitionBundle& e) {
  const auto [lo, hi] = splitting_bounds(e);
  const int r = static_cast<int>(e.rank());
  const int n_lo = -hi - 2;
  const int n_hi = -lo + 2;
  std::vector<int> inc;
  int prev = h0(e, n_lo - 1);
  for (int n = n_lo; n <= n_hi; ++n) {
    const int cur = h0(e, n);
    inc.push_back(cur - prev);
    prev = cur;
  }
  auto witness = [&] {
    std::string w = "n from " + std::to_string(n_lo) + ":";
    for (int d : inc) w += " " + std::to_string(d);
    return w;
  };
  if (inc.front() != 0 || inc.back() != r) {
    throw InconsistentIncrements("h0 increments do not run from 0 to the rank", witness());
  }
  std::vector<int> degrees;
  for (std::size_t k = 0; k < inc.size(); ++k) {
    if (inc[k] < 0 || inc[k] > r || (k > 0 && inc[k] < inc[k - 1])) {
      throw InconsistentIncrements("h0 increments are not a monotone step profile", witness());
    }
    const int jump = k == 0 ? inc[k] : inc[k] - inc[k - 1];
    for (int c = 0; c < jump; ++c) degrees.push_back(-(n_lo + static_cast<int>(k)));
  }
  SplittingType st(std::move(degrees));
  if (st.degree() != degree(e)) {
    throw InconsistentIncrements("recovered exponents do not sum to the degree", witness());
  }
  return st;
}

/// Splitting type from the drops of h1: h1(n-1) - h1(n) = #{i : a_i <= -n-1}.
/// Shares no computation with the h0 route.
inline SplittingType splitting_type_from_h1(const TransitionBundle& e) {
  const auto [lo, hi] = splitting_bounds(e);
  const int r = static_cast<int>(e.rank());
  const int n_lo = -hi - 3;
  const int n_hi = -lo + 1;
  std::vector<int> drops;
  int prev = h1(e, n_lo - 1);
  for (int n = n_lo; n <= n_hi; ++n) {
    const int cur = h1(e, n);
    drops.push_back(prev - cur);
    prev = cur;
  }
  if (drops.front() != r || drops.back() != 0) {
    throw InconsistentIncrements("h1 drops do not run from the rank to 0");
  }
  std::vector<int> degrees;
  for (std::size_t k = 0; k < drops.size(); ++k) {
    if (drops[k] < 0 || drops[k] > r || (k > 0 && drops[k] > drops[k - 1])) {
      throw InconsistentIncrements("h1 drops are not a monotone step profile");
    }
    const int next = k + 1 < drops.size() ? drops[k + 1] : 0;
    for (int c = 0; c < drops[k] - next; ++c) degrees.push_back(-(n_lo + static_cast<int>(k)) - 1);
  }
  return SplittingType(std::move(degrees));
}

/// Sum of max(0, a_i + n + 1): h0 predicted by a splitting type.
inline int h0_from_splitting(const SplittingType& st, int n) {
  int total = 0;
  for (int a : st.degrees) total += std::max(0, a + n + 1);
  return total;
}

// --- Jet bundles -------------------------------------------------------------

enum class JetModel { classical, rank3 };
enum class Side { left, right };

/// Which coefficient sheaf I and derivation d the jets are taken with:
/// classical is I = Omega with the universal derivation; rank3 is
/// I = O(-2) + O with d0(a) = a' dt + t^i a' e on U0, i in {0, 1, 2}.
struct JetDerivationSpec {
  JetModel model = JetModel::classical;
  int i = 0;

  static JetDerivationSpec classical() { return {}; }
  static JetDerivationSpec rank3(int i) {
    JetDerivationSpec spec{JetModel::rank3, i};
    spec.validate();
    return spec;
  }

  void validate() const {
    if (model == JetModel::rank3 && (i < 0 || i > 2)) {
      throw BadParameter("rank-3 derivation parameter must be 0, 1 or 2", "i=" + std::to_string(i));
    }
  }

  friend bool operator==(const JetDerivationSpec&, const JetDerivationSpec&) = default;
};

/// I on the two charts: `basis_change` expresses the U1 basis of I in the
/// U0 basis (columns), and `d_of_t` is d(t) in the U0 basis.
struct CoefficientSheaf {
  LaurentMatrix basis_change;
  Vec d_of_t;

  std::size_t rank() const noexcept { return d_of_t.size(); }
  /// U0 -> U1 coordinate transition of I.
  LaurentMatrix transition() const { return laurent_mat_inverse(basis_change); }
};

inline CoefficientSheaf coefficient_sheaf(const JetDerivationSpec& spec, const Field& field) {
  spec.validate();
  const LaurentPoly zero = LaurentPoly::zero(field);
  // ds = -t^-2 dt; the second generator is glued by f = e.
  const LaurentPoly ds = LaurentPoly::monomial(field, -1, -2);
  if (spec.model == JetModel::classical) {
    return {LaurentMatrix::from_rows({{ds}}, zero), {LaurentPoly::one(field)}};
  }
  return {LaurentMatrix::from_rows({{ds, zero}, {zero, LaurentPoly::one(field)}}, zero),
          {LaurentPoly::one(field), LaurentPoly::monomial(field, 1, spec.i)}};
}

/// The jet ring of the U0 chart for the given coefficient sheaf.
inline JetRing chart_jet_ring(const JetDerivationSpec& spec, const Field& field) {
  const CoefficientSheaf cs = coefficient_sheaf(spec, field);
  return JetRing(Derivation(Bimodule::abelianized(field, cs.rank()), cs.d_of_t));
}

/// d0(a) = (a', t^i a') in the basis (dt, e) of I(U0).
inline Vec rank3_derivation_d0(const LaurentPoly& a, int i) {
  return chart_jet_ring(JetDerivationSpec::rank3(i), a.field()).derivation()(a);
}

/// d1(b) = (b', -s^(2-i) b') in the basis (ds, f) of I(U1); b is a
/// polynomial in s written with exponents of s.  This is the unique chart
/// derivation that glues with d0.
inline Vec rank3_derivation_d1(const LaurentPoly& b, int i) {
  JetDerivationSpec::rank3(i).validate();
  const Field& field = b.field();
  const LaurentPoly db = b.derivative();
  return {db, -(LaurentPoly::monomial(field, 1, 2 - i) * db)};
}

/// Structure matrix of the jet bundle of O(d): column k gives the k-th U1
/// basis vector (gamma_k (x) x1^d, then x1^d) in the U0 basis
/// (beta_j (x) x0^d, then x0^d) under the chosen B-structure.
inline LaurentMatrix jet_structure_matrix(int d, Side side, const JetDerivationSpec& spec, const Field& field) {
  const CoefficientSheaf cs = coefficient_sheaf(spec, field);
  const JetModule chart(chart_jet_ring(spec, field), 1);
  const std::size_t ri = cs.rank();
  const LaurentPoly td = LaurentPoly::monomial(field, 1, d);  // x1^d = t^d x0^d
  LaurentMatrix m(ri + 1, ri + 1, LaurentPoly::zero(field));
  for (std::size_t k = 0; k < ri; ++k) {
    for (std::size_t j = 0; j < ri; ++j) m(j, k) = cs.basis_change(j, k) * td;
  }
  // (0, t^d x0^d) = t^d . (0, x0^d) - correction, in the chosen structure.
  const JetModuleElement base = chart.universal_diff_op({LaurentPoly::one(field)});
  const JetModuleElement moved = side == Side::left ? chart.left_scalar(td, base) : chart.right_scalar(base, td);
  const JetModuleElement target{chart.zero_tensor(), {td}};
  const Vec correction = (target - moved).z;
  for (std::size_t j = 0; j < ri; ++j) m(j, ri) = correction[j];
  m(ri, ri) = td;
  return m;
}

/// The left-structure matrix of J_I(O(l)) for the rank-3 model.
inline LaurentMatrix structure_matrix(int l, int i, const Field& field) {
  return jet_structure_matrix(l, Side::left, JetDerivationSpec::rank3(i), field);
}

/// The jet bundle as a transition bundle.  A structure matrix L sends
/// U1-coordinates to U0-coordinates, so the transition is L^-1.
inline TransitionBundle jet_bundle(int d, Side side, const JetDerivationSpec& spec, const Field& field) {
  return TransitionBundle(laurent_mat_inverse(jet_structure_matrix(d, side, spec, field)));
}

// --- Atiyah classes -----------------------------------------------------------

/// A coboundary (alpha, beta): alpha regular on U0 (exponents >= 0),
/// beta regular on U1 (exponents <= 0), both in End(E) (x) I, one matrix per
/// basis element of I, each in its own chart's frame.
struct CoboundaryWitness {
  std::vector<LaurentMatrix> chart0;
  std::vector<LaurentMatrix> chart1;
};

/// A Cech class in H^1(End(E) (x) I) on the overlap, in U0 frames.
struct CechClass {
  std::vector<LaurentMatrix> representative;
  bool vanishes = false;
  std::optional<CoboundaryWitness> witness;
};

/// (alpha, beta) -> alpha_j + sum_k B(j,k) T^-1 beta_k T, with B the basis
/// change of I.
inline std::vector<LaurentMatrix> coboundary(const TransitionBundle& e, const CoefficientSheaf& cs,
                                             const CoboundaryWitness& w) {
  std::vector<LaurentMatrix> out = w.chart0;
  for (std::size_t j = 0; j < cs.rank(); ++j) {
    for (std::size_t k = 0; k < cs.rank(); ++k) {
      if (cs.basis_change(j, k).is_zero()) continue;
      out[j] += (e.inverse_transition() * w.chart1[k] * e.transition()).scaled(cs.basis_change(j, k));
    }
  }
  return out;
}

inline bool verify_witness(const TransitionBundle& e, const CoefficientSheaf& cs, const CechClass& c) {
  if (!c.witness) return false;
  for (const auto& a : c.witness->chart0) {
    if (auto lo = min_exponent(a); lo && *lo < 0) return false;
  }
  for (const auto& b : c.witness->chart1) {
    if (auto hi = max_exponent(b); hi && *hi > 0) return false;
  }
  return coboundary(e, cs, *c.witness) == c.representative;
}

namespace detail {

struct CoboundarySystem {
  ScalarMatrix matrix;
  ScalarVector rhs;
};

/// Linear system for beta on exponents [-window, -1] of the target; unknown
/// (k, p, q, m) is the coefficient of s^m in beta_k(p, q).
inline CoboundarySystem coboundary_system(const TransitionBundle& e, const CoefficientSheaf& cs,
                                          const std::vector<LaurentMatrix>& rep, int window, int degree) {
  const std::size_t r = e.rank();
  const std::size_t ri = cs.rank();
  const Field& field = e.field();
  const std::size_t slots = static_cast<std::size_t>(std::max(0, degree + 1));
  const std::size_t w = static_cast<std::size_t>(window);
  auto row_of = [&](std::size_t j, std::size_t a, std::size_t b, int ex) {
    return ((j * r + a) * r + b) * w + static_cast<std::size_t>(ex + window);
  };
  auto col_of = [&](std::size_t k, std::size_t p, std::size_t q, std::size_t m) {
    return ((k * r + p) * r + q) * slots + m;
  };
  CoboundarySystem sys{ScalarMatrix(ri * r * r * w, ri * r * r * slots, Scalar::zero(field)),
                       ScalarVector(ri * r * r * w, Scalar::zero(field))};
  const LaurentMatrix& t = e.transition();
  const LaurentMatrix& ti = e.inverse_transition();
  for (std::size_t j = 0; j < ri; ++j) {
    for (std::size_t k = 0; k < ri; ++k) {
      if (cs.basis_change(j, k).is_zero()) continue;
      for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t p = 0; p < r; ++p) {
          if (ti(a, p).is_zero()) continue;
          const LaurentPoly left = cs.basis_change(j, k) * ti(a, p);
          for (std::size_t q = 0; q < r; ++q) {
            for (std::size_t b = 0; b < r; ++b) {
              const LaurentPoly coeff = left * t(q, b);
              for (const auto& [ex, c] : coeff.terms()) {
                for (std::size_t m = 0; m < slots; ++m) {
                  const int target = ex - static_cast<int>(m);
                  if (target < -window || target > -1) continue;
                  sys.matrix(row_of(j, a, b, target), col_of(k, p, q, m)) += c;
                }
              }
            }
          }
        }
      }
    }
  }
  for (std::size_t j = 0; j < ri; ++j) {
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) {
        const LaurentPoly part = rep[j](a, b).truncated(-window, -1);
        for (const auto& [ex, c] : part.terms()) {
          sys.rhs[row_of(j, a, b, ex)] = c;
        }
      }
    }
  }
  return sys;
}

}  // namespace detail

/// Cech representative of the Atiyah class of E with respect to (I, d):
/// component j is T^-1 d_j(T), the difference of the chart-wise trivial
/// connections.
inline std::vector<LaurentMatrix> atiyah_representative(const TransitionBundle& e, const JetDerivationSpec& spec) {
  const JetRing ring = chart_jet_ring(spec, e.field());
  const std::size_t ri = ring.bimodule().rank();
  const std::size_t r = e.rank();
  std::vector<LaurentMatrix> dt(ri, LaurentMatrix(r, r, LaurentPoly::zero(e.field())));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      const Vec v = ring.derivation()(e.transition()(a, b));
      for (std::size_t j = 0; j < ri; ++j) dt[j](a, b) = v[j];
    }
  }
  std::vector<LaurentMatrix> rep;
  for (const auto& m : dt) rep.push_back(e.inverse_transition() * m);
  return rep;
}

/// The Atiyah class of E with respect to (I, d), decided exactly.  When it
/// vanishes a coboundary witness is attached and re-verified.
inline CechClass atiyah_class(const TransitionBundle& e,
                              const JetDerivationSpec& spec = JetDerivationSpec::classical()) {
  const CoefficientSheaf cs = coefficient_sheaf(spec, e.field());
  const LaurentMatrix basis_inv = laurent_mat_inverse(cs.basis_change);
  CechClass out;
  out.representative = atiyah_representative(e, spec);

  using detail::max_exp;
  // Targets with all exponents <= -depth are hit by beta alone.
  const int depth = max_exp(basis_inv) + max_exp(e.transition()) + max_exp(e.inverse_transition());
  const int reach = max_exp(cs.basis_change) + max_exp(e.inverse_transition()) + max_exp(e.transition());
  const int window = std::max(1, depth - 1);

  auto solvable = [&](int w) -> std::optional<ScalarVector> {
    const auto sys = detail::coboundary_system(e, cs, out.representative, w, w + reach);
    return solve(sys.matrix, sys.rhs);
  };
  const std::optional<ScalarVector> sol = solvable(window);
  if (sol.has_value() != solvable(window + 2).has_value()) {
    throw StabilizationFailure("Atiyah coboundary solvability changed when the window grew");
  }
  if (!sol) return out;

  const std::size_t r = e.rank();
  const std::size_t ri = cs.rank();
  const Field& field = e.field();
  const std::size_t slots = static_cast<std::size_t>(std::max(0, window + reach + 1));
  CoboundaryWitness w;
  w.chart0.assign(ri, LaurentMatrix(r, r, LaurentPoly::zero(field)));
  w.chart1.assign(ri, LaurentMatrix(r, r, LaurentPoly::zero(field)));
  for (std::size_t k = 0; k < ri; ++k) {
    for (std::size_t p = 0; p < r; ++p) {
      for (std::size_t q = 0; q < r; ++q) {
        for (std::size_t m = 0; m < slots; ++m) {
          w.chart1[k](p, q).add_term(-static_cast<int>(m), (*sol)[((k * r + p) * r + q) * slots + m]);
        }
      }
    }
  }
  // Residual below the window is absorbed by beta exactly; what is left is
  // regular on U0.
  std::vector<LaurentMatrix> residual = coboundary(e, cs, w);
  for (std::size_t j = 0; j < ri; ++j) residual[j] = out.representative[j] - residual[j];
  std::vector<LaurentMatrix> low(ri, LaurentMatrix(r, r, LaurentPoly::zero(field)));
  for (std::size_t j = 0; j < ri; ++j) {
    low[j] = residual[j].map([&](const LaurentPoly& p) {
      const int bottom = p.min_exponent().value_or(0);
      return p.truncated(std::min(bottom, -window - 1), -window - 1);
    });
  }
  for (std::size_t k = 0; k < ri; ++k) {
    for (std::size_t j = 0; j < ri; ++j) {
      if (basis_inv(k, j).is_zero()) continue;
      w.chart1[k] += (e.transition() * low[j] * e.inverse_transition()).scaled(basis_inv(k, j));
    }
  }
  const std::vector<LaurentMatrix> image = coboundary(e, cs, w);
  for (std::size_t j = 0; j < ri; ++j) w.chart0[j] = out.representative[j] - image[j];

  out.vanishes = true;
  out.witness = std::move(w);
  if (!verify_witness(e, cs, out)) {
    throw StabilizationFailure("constructed coboundary witness failed verification");
  }
  return out;
}

}  // namespace jetline
