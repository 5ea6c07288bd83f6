#pragma once

// The square-zero extension ring Pr = I (+) B over one affine chart B = K[t]
// (Laurent elements allowed when the left action is invertible), its jet
// modules Pr(E) = I(x)E (+) E for free E, the universal first-order
// operator d_E, and the correspondence between (I,d)-connections and left
// B-linear sections of I(x)E -> Pr(E) -> E.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetline/linalg.hpp"
#include "jetline/random.hpp"

namespace jetline {

/// Coordinates over B: elements of I in the right basis m_1..m_r, vectors of
/// the free module E, and of I(x)E.
using Vec = std::vector<LaurentPoly>;

inline Vec zero_vec(const Field& field, std::size_t n) { return Vec(n, LaurentPoly::zero(field)); }

inline Vec operator+(Vec a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}
inline Vec operator-(Vec a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}
inline Vec operator-(Vec a) {
  for (auto& x : a) x = -x;
  return a;
}
/// Coordinatewise product with a ring element.
inline Vec operator*(Vec a, const LaurentPoly& b) {
  for (auto& x : a) x = x * b;
  return a;
}

inline std::string to_string(const Vec& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += v[k].to_string();
  }
  return out + "]";
}

inline bool is_zero(const Vec& v) {
  for (const auto& x : v) {
    if (!x.is_zero()) return false;
  }
  return true;
}

/// A B-bimodule I, free of rank r as a right module.  The left action is
/// t*m_j = sum_k L(k, j) m_k; the right action is coordinatewise.
class Bimodule {
 public:
  explicit Bimodule(LaurentMatrix left_action) : lambda_(std::move(left_action)) {
    if (!lambda_.is_square() || lambda_.rows() == 0) {
      throw DimensionMismatch("left action must be a non-empty square matrix");
    }
    if (determinant(lambda_).is_unit()) lambda_inv_ = laurent_mat_inverse(lambda_);
  }

  /// I = B^r with t acting the same way on both sides (L = t*Id).
  static Bimodule abelianized(const Field& field, std::size_t rank) {
    return Bimodule(laurent_identity(field, rank).scaled(t_var(field)));
  }

  std::size_t rank() const noexcept { return lambda_.rows(); }
  const Field& field() const noexcept { return lambda_.zero().field(); }
  const LaurentMatrix& left_action() const noexcept { return lambda_; }
  bool left_action_invertible() const noexcept { return lambda_inv_.has_value(); }

  bool is_abelianized() const {
    return lambda_ == laurent_identity(field(), rank()).scaled(t_var(field()));
  }

  Vec zero() const { return zero_vec(field(), rank()); }

  /// a*x.  Negative powers of t need L invertible over K[t, 1/t].
  Vec left_act(const LaurentPoly& a, const Vec& x) const {
    check(x);
    Vec out = zero();
    if (a.is_zero()) return out;
    if (*a.min_exponent() < 0 && !lambda_inv_) {
      throw NonInvertibleLeftAction("left action of " + a.to_string() +
                                        " needs t^-1, but the left action matrix is not invertible",
                                    lambda_.to_string());
    }
    Vec up = x;    // L^n x, n >= 0
    Vec down = x;  // L^-n x
    int up_n = 0;
    int down_n = 0;
    for (const auto& [e, c] : a.terms()) {
      if (e >= 0) {
        while (up_n < e) {
          up = lambda_ * up;
          ++up_n;
        }
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * up[k];
      }
    }
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
      const int e = it->first;
      if (e >= 0) continue;
      while (down_n < -e) {
        down = *lambda_inv_ * down;
        ++down_n;
      }
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += it->second * down[k];
    }
    return out;
  }

  /// x*b, coordinatewise.
  Vec right_act(const Vec& x, const LaurentPoly& b) const {
    check(x);
    return x * b;
  }

  friend bool operator==(const Bimodule& a, const Bimodule& b) { return a.lambda_ == b.lambda_; }

 private:
  void check(const Vec& x) const {
    if (x.size() != rank()) throw MixedContext("element does not belong to this bimodule");
  }

  LaurentMatrix lambda_;
  std::optional<LaurentMatrix> lambda_inv_;
};

/// The derivation d: B -> I with d(t) given, extended by d(ab) = a d(b) + d(a) b.
class Derivation {
 public:
  Derivation(Bimodule target, Vec value_at_t) : target_(std::move(target)), value_(std::move(value_at_t)) {
    if (value_.size() != target_.rank()) throw DimensionMismatch("d(t) has the wrong number of coordinates");
  }

  /// The zero derivation.
  static Derivation zero(Bimodule target) {
    Vec v = target.zero();
    return Derivation(std::move(target), std::move(v));
  }

  const Bimodule& target() const noexcept { return target_; }
  const Vec& value_at_t() const noexcept { return value_; }

  /// d(t^n) for every n: d(t^n) = t*d(t^(n-1)) + d(t) t^(n-1) upwards and
  /// d(t^-n) = t^-1*d(t^(1-n)) + d(t^-1) t^(1-n) downwards, where
  /// t*d(t^-1) = -d(t) t^-1.
  Vec operator()(const LaurentPoly& a) const {
    Vec out = target_.zero();
    if (a.is_zero()) return out;
    const Field& f = target_.field();
    const int hi = std::max(0, *a.max_exponent());
    const int lo = std::min(0, *a.min_exponent());

    Vec power = target_.zero();  // d(t^n)
    for (int n = 1; n <= hi; ++n) {
      power = target_.left_act(t_var(f), power) + value_ * LaurentPoly::monomial(f, 1, n - 1);
      if (const Scalar c = a.coefficient(n); !c.is_zero()) {
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * power[k];
      }
    }
    if (lo < 0) {
      const LaurentPoly t_inv = LaurentPoly::monomial(f, 1, -1);
      const Vec d_inv = -target_.left_act(t_inv, value_ * t_inv);
      power = target_.zero();
      for (int n = 1; n <= -lo; ++n) {
        power = target_.left_act(t_inv, power) + d_inv * LaurentPoly::monomial(f, 1, 1 - n);
        if (const Scalar c = a.coefficient(-n); !c.is_zero()) {
          for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * power[k];
        }
      }
    }
    return out;
  }

 private:
  Bimodule target_;
  Vec value_;
};

/// (x, a) in Pr = I (+) B.
struct JetElement {
  Vec x;
  LaurentPoly a;

  friend bool operator==(const JetElement&, const JetElement&) = default;
};

inline JetElement operator+(const JetElement& u, const JetElement& v) { return {u.x + v.x, u.a + v.a}; }
inline JetElement operator-(const JetElement& u, const JetElement& v) { return {u.x - v.x, u.a - v.a}; }

inline std::string to_string(const JetElement& u) {
  return "(" + to_string(u.x) + ", " + u.a.to_string() + ")";
}

/// The ring Pr with (x,a)(y,b) = (xb + ay, ab), unit (0,1).
class JetRing {
 public:
  explicit JetRing(Derivation d) : d_(std::move(d)) {}

  const Derivation& derivation() const noexcept { return d_; }
  const Bimodule& bimodule() const noexcept { return d_.target(); }
  const Field& field() const noexcept { return bimodule().field(); }

  JetElement element(Vec x, LaurentPoly a) const {
    JetElement u{std::move(x), std::move(a)};
    check(u);
    return u;
  }
  JetElement zero() const { return {bimodule().zero(), LaurentPoly::zero(field())}; }
  JetElement unit() const { return {bimodule().zero(), LaurentPoly::one(field())}; }

  JetElement mul(const JetElement& u, const JetElement& v) const {
    check(u);
    check(v);
    return {bimodule().right_act(u.x, v.a) + bimodule().left_act(u.a, v.x), u.a * v.a};
  }

  JetElement t_map(const LaurentPoly& b) const { return {bimodule().zero(), b}; }
  JetElement s_map(const LaurentPoly& b) const { return {d_(b), b}; }
  JetElement d_I(const LaurentPoly& b) const { return {d_(b), LaurentPoly::zero(field())}; }
  /// d_Pr(x, a) = x + d(a).
  Vec d_pr(const JetElement& u) const {
    check(u);
    return u.x + d_(u.a);
  }

  /// The s-twisted B-actions: u *_s b = u s(b) and b *_s u = s(b) u.
  JetElement s_right(const JetElement& u, const LaurentPoly& b) const { return mul(u, s_map(b)); }
  JetElement s_left(const LaurentPoly& b, const JetElement& u) const { return mul(s_map(b), u); }

  void check(const JetElement& u) const {
    if (u.x.size() != bimodule().rank()) throw MixedContext("jet element from a different bimodule");
    if (!(u.a.field() == field())) throw MixedContext("jet element over a different field");
    for (const auto& c : u.x) {
      if (!(c.field() == field())) throw MixedContext("jet element over a different field");
    }
  }

 private:
  Derivation d_;
};

/// (z, f) in I(x)E (+) E.  z has r*e coordinates ordered basis-of-I-major:
/// index k*e + j is the coefficient of m_k (x) e_j.
struct JetModuleElement {
  Vec z;
  Vec f;

  friend bool operator==(const JetModuleElement&, const JetModuleElement&) = default;
};

inline JetModuleElement operator+(const JetModuleElement& m, const JetModuleElement& n) {
  return {m.z + n.z, m.f + n.f};
}
inline JetModuleElement operator-(const JetModuleElement& m, const JetModuleElement& n) {
  return {m.z - n.z, m.f - n.f};
}

inline std::string to_string(const JetModuleElement& m) {
  return "(" + to_string(m.z) + ", " + to_string(m.f) + ")";
}

/// Pr(E) for E free of rank e, with the left action
///   (x,a)(z, f) = (x(x)f + a z + d(a)(x)f, a f)
/// and the right action (z, f)(x,a) = (z a, f a).
class JetModule {
 public:
  JetModule(JetRing ring, std::size_t e_rank) : ring_(std::move(ring)), e_(e_rank) {
    if (e_ == 0) throw DimensionMismatch("E must have positive rank");
  }

  const JetRing& ring() const noexcept { return ring_; }
  const Bimodule& bimodule() const noexcept { return ring_.bimodule(); }
  const Field& field() const noexcept { return ring_.field(); }
  std::size_t e_rank() const noexcept { return e_; }
  std::size_t tensor_rank() const noexcept { return bimodule().rank() * e_; }

  Vec zero_e() const { return zero_vec(field(), e_); }
  Vec zero_tensor() const { return zero_vec(field(), tensor_rank()); }
  JetModuleElement zero() const { return {zero_tensor(), zero_e()}; }

  /// x (x) f for x in I and f in E.
  Vec tensor(const Vec& x, const Vec& f) const {
    check_i(x);
    check_e(f);
    Vec z = zero_tensor();
    for (std::size_t k = 0; k < x.size(); ++k) {
      for (std::size_t j = 0; j < e_; ++j) z[k * e_ + j] = x[k] * f[j];
    }
    return z;
  }

  /// a z on I(x)E: a acts on the I factor.
  Vec left_on_tensor(const LaurentPoly& a, const Vec& z) const {
    check_tensor(z);
    Vec out = zero_tensor();
    const std::size_t r = bimodule().rank();
    for (std::size_t j = 0; j < e_; ++j) {
      Vec slice(r, LaurentPoly::zero(field()));
      for (std::size_t k = 0; k < r; ++k) slice[k] = z[k * e_ + j];
      slice = bimodule().left_act(a, slice);
      for (std::size_t k = 0; k < r; ++k) out[k * e_ + j] = slice[k];
    }
    return out;
  }

  /// a * (x (x) e) = x (x) (e a): the star structure on I(x)E.
  Vec star_on_tensor(const LaurentPoly& a, const Vec& z) const {
    check_tensor(z);
    return z * a;
  }

  JetModuleElement left_act(const JetElement& u, const JetModuleElement& m) const {
    ring_.check(u);
    check(m);
    return {tensor(u.x, m.f) + left_on_tensor(u.a, m.z) + tensor(ring_.derivation()(u.a), m.f), m.f * u.a};
  }

  JetModuleElement right_act(const JetModuleElement& m, const JetElement& u) const {
    ring_.check(u);
    check(m);
    return {m.z * u.a, m.f * u.a};
  }

  /// Left and right B-structures, through t(b) = (0, b).
  JetModuleElement left_scalar(const LaurentPoly& b, const JetModuleElement& m) const {
    return left_act(ring_.t_map(b), m);
  }
  JetModuleElement right_scalar(const JetModuleElement& m, const LaurentPoly& b) const {
    return right_act(m, ring_.t_map(b));
  }

  /// d_E(e) = (0,1) (x) e = (0, e).
  JetModuleElement universal_diff_op(const Vec& e) const {
    check_e(e);
    return {zero_tensor(), e};
  }

  /// [d_E, a](e) = d_E(a e) - a d_E(e).
  JetModuleElement diff_op_commutator(const LaurentPoly& a, const Vec& e) const {
    return universal_diff_op(e * a) - left_scalar(a, universal_diff_op(e));
  }

  /// [[d_E, a], b](e) = [d_E,a](b e) - b [d_E,a](e).
  JetModuleElement double_commutator(const LaurentPoly& a, const LaurentPoly& b, const Vec& e) const {
    return diff_op_commutator(a, e * b) - left_scalar(b, diff_op_commutator(a, e));
  }

  /// The projection Pr(E) -> E and the inclusion I(x)E -> Pr(E).
  Vec project(const JetModuleElement& m) const {
    check(m);
    return m.f;
  }
  JetModuleElement include(const Vec& z) const {
    check_tensor(z);
    return {z, zero_e()};
  }

  void check(const JetModuleElement& m) const {
    check_tensor(m.z);
    check_e(m.f);
  }

 private:
  void check_i(const Vec& x) const {
    if (x.size() != bimodule().rank()) throw MixedContext("I-element of the wrong rank");
  }
  void check_e(const Vec& e) const {
    if (e.size() != e_) throw MixedContext("E-element of the wrong rank");
  }
  void check_tensor(const Vec& z) const {
    if (z.size() != tensor_rank()) throw MixedContext("I(x)E element of the wrong rank");
  }

  JetRing ring_;
  std::size_t e_;
};

/// A K-linear map E -> I(x)E (candidate connection) and a map E -> Pr(E)
/// (candidate section).
using TensorMap = std::function<Vec(const Vec&)>;
using SectionMap = std::function<JetModuleElement(const Vec&)>;

/// An (I,d)-connection on free E, determined by its values on the basis and
/// extended by nabla(sum a_j e_j) = sum a_j nabla(e_j) + d(a_j) (x) e_j.
class Connection {
 public:
  Connection(JetModule module, std::vector<Vec> basis_values)
      : module_(std::move(module)), values_(std::move(basis_values)) {
    if (values_.size() != module_.e_rank()) throw DimensionMismatch("one value per basis vector of E");
    for (const auto& v : values_) {
      if (v.size() != module_.tensor_rank()) throw DimensionMismatch("connection value of the wrong rank");
    }
  }

  /// nabla(e_j) = 0: the connection that differentiates coordinates.
  static Connection trivial(const JetModule& module) {
    return Connection(module, std::vector<Vec>(module.e_rank(), module.zero_tensor()));
  }

  const JetModule& module() const noexcept { return module_; }
  const std::vector<Vec>& basis_values() const noexcept { return values_; }

  Vec operator()(const Vec& e) const {
    if (e.size() != module_.e_rank()) throw MixedContext("E-element of the wrong rank");
    Vec out = module_.zero_tensor();
    const Derivation& d = module_.ring().derivation();
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j].is_zero()) continue;
      Vec basis = module_.zero_e();
      basis[j] = LaurentPoly::one(module_.field());
      out = out + module_.left_on_tensor(e[j], values_[j]) + module_.tensor(d(e[j]), basis);
    }
    return out;
  }

  TensorMap as_map() const {
    return [c = *this](const Vec& e) { return c(e); };
  }

 private:
  JetModule module_;
  std::vector<Vec> values_;
};

/// An input pair (a, e) used to test Leibniz or linearity of a map.
struct Probe {
  LaurentPoly a;
  Vec e;
};

/// Deterministic probe set: basis vectors against t and 1+t, then random
/// polynomial pairs of degree <= 4.
inline std::vector<Probe> default_probes(const JetModule& module, std::size_t count = 24,
                                         std::uint64_t seed = 0x5eed) {
  const Field& f = module.field();
  std::vector<Probe> probes;
  for (std::size_t j = 0; j < module.e_rank(); ++j) {
    Vec basis = module.zero_e();
    basis[j] = LaurentPoly::one(f);
    probes.push_back({t_var(f), basis});
    probes.push_back({t_var(f) + LaurentPoly::one(f), basis});
  }
  Rng rng(seed);
  while (probes.size() < count) {
    Vec e = module.zero_e();
    for (auto& c : e) c = random_laurent(f, rng, 0, 3);
    probes.push_back({random_laurent(f, rng, 0, 4), e});
  }
  return probes;
}

/// nabla(a e) - a nabla(e) - d(a) (x) e; zero for a connection.
inline Vec leibniz_defect(const JetModule& module, const TensorMap& nabla, const Probe& p) {
  const Vec ae = p.e * p.a;
  return nabla(ae) - module.left_on_tensor(p.a, nabla(p.e)) -
         module.tensor(module.ring().derivation()(p.a), p.e);
}

/// Throws NotLeibniz with the first failing (a, e, discrepancy) triple.
inline void require_leibniz(const JetModule& module, const TensorMap& nabla, const std::vector<Probe>& probes) {
  for (const auto& p : probes) {
    const Vec defect = leibniz_defect(module, nabla, p);
    if (!is_zero(defect)) {
      throw NotLeibniz("map violates the Leibniz rule",
                       "a=" + p.a.to_string() + "; e=" + to_string(p.e) + "; discrepancy=" + to_string(defect));
    }
  }
}

/// e -> (nabla(e), e), a left B-linear section of Pr(E) -> E.
inline SectionMap connection_to_splitting(const JetModule& module, const TensorMap& nabla,
                                          const std::vector<Probe>& probes) {
  require_leibniz(module, nabla, probes);
  return [nabla](const Vec& e) { return JetModuleElement{nabla(e), e}; };
}

inline SectionMap connection_to_splitting(const JetModule& module, const TensorMap& nabla) {
  return connection_to_splitting(module, nabla, default_probes(module));
}

/// Recovers nabla from a section s(e) = (nabla(e), e).  The section must
/// split the projection and be left B-linear on the probes; otherwise
/// NotLinear is raised with a witness.
inline TensorMap splitting_to_connection(const JetModule& module, const SectionMap& section,
                                         const std::vector<Probe>& probes) {
  for (const auto& p : probes) {
    const JetModuleElement se = section(p.e);
    module.check(se);
    if (!(se.f == p.e)) {
      throw NotLinear("map is not a section of the projection to E",
                      "e=" + to_string(p.e) + "; image=" + to_string(se));
    }
    const JetModuleElement lhs = section(p.e * p.a);
    const JetModuleElement rhs = module.left_scalar(p.a, se);
    if (!(lhs == rhs)) {
      throw NotLinear("section is not left B-linear",
                      "a=" + p.a.to_string() + "; e=" + to_string(p.e) +
                          "; discrepancy=" + to_string(lhs - rhs));
    }
  }
  return [section](const Vec& e) { return section(e).z; };
}

inline TensorMap splitting_to_connection(const JetModule& module, const SectionMap& section) {
  return splitting_to_connection(module, section, default_probes(module));
}

}  // namespace jetline
