#pragma once

// Multivariate polynomials K[x1..xm] with non-negative exponent vectors.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "jetline/field.hpp"

namespace jetline {

class MultiPoly {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Scalar>;

  MultiPoly() : field_(Field::rationals()) {}
  MultiPoly(const Field& field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static MultiPoly zero(const Field& field, std::size_t nvars) { return MultiPoly(field, nvars); }
  static MultiPoly constant(const Scalar& c, std::size_t nvars) {
    MultiPoly p(c.field(), nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }
  static MultiPoly constant(const Field& field, long c, std::size_t nvars) {
    return constant(Scalar(field, c), nvars);
  }
  static MultiPoly one(const Field& field, std::size_t nvars) { return constant(field, 1, nvars); }
  /// The variable x_{index+1}.
  static MultiPoly variable(const Field& field, std::size_t nvars, std::size_t index) {
    MultiPoly p(field, nvars);
    Exponents e(nvars, 0);
    e.at(index) = 1;
    p.add_term(e, Scalar::one(field));
    return p;
  }

  const Field& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  int total_degree() const {
    int best = -1;
    for (const auto& [e, c] : terms_) {
      int d = 0;
      for (int x : e) d += x;
      best = std::max(best, d);
    }
    return best;
  }

  void add_term(const Exponents& e, const Scalar& c) {
    if (e.size() != nvars_) throw DimensionMismatch("exponent vector has wrong length");
    for (int x : e) {
      if (x < 0) throw BadParameter("negative exponent in polynomial term");
    }
    check(c.field());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r(field_, nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly r(a.field_, a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < a.nvars_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }
  friend MultiPoly operator*(const Scalar& s, const MultiPoly& p) {
    MultiPoly r(p.field_, p.nvars_);
    for (const auto& [e, c] : p.terms_) r.add_term(e, s * c);
    return r;
  }

  MultiPoly pow(int n) const {
    if (n < 0) throw BadParameter("negative power of a polynomial");
    MultiPoly r = one(field_, nvars_);
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
  }

  /// Partial derivative with respect to x_{index+1}.
  MultiPoly partial(std::size_t index) const {
    MultiPoly r(field_, nvars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(index) == 0) continue;
      Exponents d = e;
      d[index] -= 1;
      r.add_term(d, Scalar(field_, static_cast<long>(e[index])) * c);
    }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Variables print as x1, x2, ...
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string coeff = it->second.to_string();
      bool negative = coeff[0] == '-';
      if (negative) coeff.erase(0, 1);
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t k = 0; k < nvars_; ++k) {
        const int x = it->first[k];
        if (x == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(k + 1);
        if (x != 1) mono += "^" + std::to_string(x);
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

 private:
  void check(const Field& f) const {
    if (!(f == field_)) throw MixedContext("polynomial arithmetic across fields");
  }
  void check(const MultiPoly& o) const {
    check(o.field_);
    if (o.nvars_ != nvars_) throw MixedContext("polynomial arithmetic across different variable sets");
  }

  Field field_;
  std::size_t nvars_ = 0;
  Terms terms_;
};

}  // namespace jetline
