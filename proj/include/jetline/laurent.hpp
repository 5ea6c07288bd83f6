#pragma once

// Univariate Laurent polynomials K[t, 1/t] in canonical sparse form.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "jetline/field.hpp"

namespace jetline {

class LaurentPoly {
 public:
  using Terms = std::map<int, Scalar>;

  LaurentPoly() : field_(Field::rationals()) {}
  explicit LaurentPoly(const Field& field, std::string var = "t") : field_(field), var_(std::move(var)) {}

  static LaurentPoly constant(const Scalar& c) {
    LaurentPoly p(c.field());
    p.add_term(0, c);
    return p;
  }
  static LaurentPoly constant(const Field& field, long c) { return constant(Scalar(field, c)); }
  static LaurentPoly monomial(const Scalar& c, int exponent) {
    LaurentPoly p(c.field());
    p.add_term(exponent, c);
    return p;
  }
  static LaurentPoly monomial(const Field& field, long c, int exponent) {
    return monomial(Scalar(field, c), exponent);
  }
  static LaurentPoly zero(const Field& field) { return LaurentPoly(field); }
  static LaurentPoly one(const Field& field) { return constant(field, 1); }

  const Field& field() const noexcept { return field_; }
  const std::string& var() const noexcept { return var_; }
  void set_var(std::string var) { var_ = std::move(var); }
  const Terms& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  /// Smallest / largest exponent with a nonzero coefficient.  Zero has none.
  std::optional<int> min_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }
  std::optional<int> max_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
  }

  Scalar coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  /// A unit of K[t, 1/t] is exactly a single term c*t^k with c != 0.
  bool is_unit() const noexcept { return terms_.size() == 1; }
  bool is_polynomial() const noexcept { return terms_.empty() || terms_.begin()->first >= 0; }
  bool is_polynomial_in_inverse() const noexcept { return terms_.empty() || terms_.rbegin()->first <= 0; }

  void add_term(int exponent, const Scalar& c) {
    check(c.field());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly r(field_, var_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check(o.field_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    check(o.field_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  LaurentPoly& operator*=(const Scalar& s) {
    check(s.field());
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check(b.field_);
    LaurentPoly r(a.field_, a.var_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    }
    return r;
  }
  friend LaurentPoly operator*(LaurentPoly a, const Scalar& s) { return a *= s; }
  friend LaurentPoly operator*(const Scalar& s, LaurentPoly a) { return a *= s; }

  /// Multiplication by t^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly r(field_, var_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
  }

  /// Formal d/dt; the coefficient n*c is taken in the field, so it vanishes
  /// when the characteristic divides n.
  LaurentPoly derivative() const {
    LaurentPoly r(field_, var_);
    for (const auto& [e, c] : terms_) r.add_term(e - 1, Scalar(field_, static_cast<long>(e)) * c);
    return r;
  }

  /// The substitution t -> 1/t.
  LaurentPoly inverted_variable() const {
    LaurentPoly r(field_, var_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  /// Inverse of a unit c*t^k.
  LaurentPoly unit_inverse() const {
    if (!is_unit()) throw NotAUnit("Laurent polynomial " + to_string() + " is not a unit", to_string());
    const auto& [e, c] = *terms_.begin();
    return monomial(c.inverse(), -e);
  }

  /// Integer power; negative powers are only defined for units.
  LaurentPoly pow(int n) const {
    if (n < 0) return unit_inverse().pow(-n);
    LaurentPoly result = one(field_);
    result.var_ = var_;
    LaurentPoly base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      base = base * base;
      n >>= 1;
    }
    return result;
  }

  /// Terms with exponent in [lo, hi].
  LaurentPoly truncated(int lo, int hi) const {
    LaurentPoly r(field_, var_);
    for (auto it = terms_.lower_bound(lo); it != terms_.end() && it->first <= hi; ++it) {
      r.terms_.emplace(it->first, it->second);
    }
    return r;
  }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  /// Human-readable form in descending exponent order, e.g. "-t^2 + 3/2*t + 1".
  /// The output is accepted back by the expression parser.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const int e = it->first;
      std::string coeff = it->second.to_string();
      bool negative = !coeff.empty() && coeff[0] == '-';
      if (negative) coeff.erase(0, 1);
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono;
      if (e == 1) {
        mono = var_;
      } else if (e != 0) {
        mono = var_ + "^" + std::to_string(e);
      }
      if (mono.empty()) {
        out += coeff;
      } else if (coeff == "1") {
        out += mono;
      } else {
        out += coeff + "*" + mono;
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

 private:
  void check(const Field& f) const {
    if (!(f == field_)) {
      throw MixedContext("Laurent polynomial arithmetic across fields " + field_.tag() + " and " + f.tag());
    }
  }

  Field field_;
  std::string var_ = "t";
  Terms terms_;
};

/// The variable t itself.
inline LaurentPoly t_var(const Field& field) { return LaurentPoly::monomial(field, 1, 1); }

}  // namespace jetline
