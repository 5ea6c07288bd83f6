#pragma once

// Exact scalars over Q (arbitrary precision) and F_p.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <variant>

#include "jetline/error.hpp"

namespace jetline {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Deterministic Miller-Rabin for the full 64-bit range.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

/// The base field: Q when `characteristic() == 0`, otherwise F_p.
class Field {
 public:
  static Field rationals() { return Field(0); }

  static Field prime(std::uint64_t p) {
    if (!detail::is_prime(p)) {
      throw PrimalityError("field characteristic " + std::to_string(p) + " is not prime",
                           std::to_string(p));
    }
    return Field(p);
  }

  std::uint64_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return p_ == 0; }

  /// "q" or "fp:<p>", the same spelling the CLI accepts.
  std::string tag() const { return p_ == 0 ? std::string("q") : "fp:" + std::to_string(p_); }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

/// An element of a `Field`.  Rationals are kept reduced with positive
/// denominator (GMP canonical form); residues live in [0, p).
class Scalar {
 public:
  Scalar() : field_(Field::rationals()), value_(mpq_class(0)) {}

  Scalar(const Field& field, long value) : field_(field) {
    if (field.is_rational()) {
      value_ = mpq_class(value);
    } else {
      const auto p = static_cast<long long>(field.characteristic());
      long long r = static_cast<long long>(value) % p;
      if (r < 0) r += p;
      value_ = static_cast<std::uint64_t>(r);
    }
  }

  Scalar(const Field& field, const mpz_class& value) : field_(field) {
    if (field.is_rational()) {
      value_ = mpq_class(value);
    } else {
      value_ = reduce(value, field.characteristic());
    }
  }

  /// Maps the rational num/den into the field.  Throws DivisionByZero when den
  /// vanishes in the field.
  Scalar(const Field& field, const mpz_class& num, const mpz_class& den) : field_(field) {
    if (den == 0) throw DivisionByZero("zero denominator in rational literal");
    if (field.is_rational()) {
      mpq_class q(num, den);
      q.canonicalize();
      value_ = q;
    } else {
      const std::uint64_t p = field.characteristic();
      const std::uint64_t d = reduce(den, p);
      if (d == 0) {
        throw DivisionByZero("denominator " + den.get_str() + " vanishes in " + field.tag());
      }
      value_ = detail::mulmod(reduce(num, p), detail::powmod(d, p - 2, p), p);
    }
  }

  static Scalar zero(const Field& field) { return Scalar(field, 0L); }
  static Scalar one(const Field& field) { return Scalar(field, 1L); }

  const Field& field() const noexcept { return field_; }

  bool is_zero() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return *q == 0;
    return std::get<std::uint64_t>(value_) == 0;
  }
  bool is_one() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
    return std::get<std::uint64_t>(value_) == 1;
  }

  /// Only meaningful over Q.
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  /// Only meaningful over F_p.
  std::uint64_t residue() const { return std::get<std::uint64_t>(value_); }

  /// True when the value is an integer (always true over F_p).
  bool is_integral() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_den() == 1;
    return true;
  }

  Scalar operator-() const {
    Scalar r = *this;
    if (auto* q = std::get_if<mpq_class>(&r.value_)) {
      *q = -*q;
    } else {
      auto& v = std::get<std::uint64_t>(r.value_);
      if (v != 0) v = field_.characteristic() - v;
    }
    return r;
  }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
      *q += std::get<mpq_class>(o.value_);
    } else {
      const std::uint64_t p = field_.characteristic();
      auto& v = std::get<std::uint64_t>(value_);
      v = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v) + o.residue()) % p);
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }
  Scalar& operator*=(const Scalar& o) {
    check(o);
    if (auto* q = std::get_if<mpq_class>(&value_)) {
      *q *= std::get<mpq_class>(o.value_);
    } else {
      auto& v = std::get<std::uint64_t>(value_);
      v = detail::mulmod(v, o.residue(), field_.characteristic());
    }
    return *this;
  }
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    Scalar r = *this;
    if (auto* q = std::get_if<mpq_class>(&r.value_)) {
      *q = 1 / *q;
    } else {
      const std::uint64_t p = field_.characteristic();
      std::get<std::uint64_t>(r.value_) = detail::powmod(residue(), p - 2, p);
    }
    return r;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  /// "3", "-3/2" over Q; the residue in [0, p) over F_p.
  std::string to_string() const {
    if (const auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
    return std::to_string(std::get<std::uint64_t>(value_));
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  static std::uint64_t reduce(const mpz_class& v, std::uint64_t p) {
    mpz_class r = v % mpz_class(std::to_string(p));
    if (r < 0) r += mpz_class(std::to_string(p));
    return std::stoull(r.get_str());
  }

  void check(const Scalar& o) const {
    if (!(field_ == o.field_)) {
      throw MixedContext("scalar arithmetic across fields " + field_.tag() + " and " + o.field_.tag());
    }
  }

  Field field_;
  std::variant<mpq_class, std::uint64_t> value_;
};

}  // namespace jetline
