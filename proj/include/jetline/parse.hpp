#pragma once

// Recursive-descent parser for polynomial expressions, matrix literals and
// bundle shorthands.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' '-'? INT)?
//   primary := INT ('/' INT)? | VAR | '(' expr ')'
//   matrix  := '[' row (',' row)* ']'
//   row     := '[' expr (',' expr)* ']'
//   bundle  := 'O' '(' '-'? INT ')' ('+' 'O' '(' '-'? INT ')')*  |  matrix

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "jetline/field.hpp"
#include "jetline/laurent.hpp"
#include "jetline/linalg.hpp"
#include "jetline/multipoly.hpp"

namespace jetline {

namespace detail {

/// Ring-specific hooks for the generic expression parser.
struct LaurentSyntax {
  using Value = LaurentPoly;
  Field field;

  Value constant(const Scalar& c) const { return LaurentPoly::constant(c); }
  std::optional<Value> variable(const std::string& name) const {
    if (name != "t") return std::nullopt;
    return LaurentPoly::monomial(field, 1, 1);
  }
  std::string variables() const { return "'t'"; }
  /// Negative powers are only defined for single terms.
  std::optional<Value> power(const Value& base, long n) const {
    if (n >= 0) return base.pow(static_cast<int>(n));
    if (!base.is_unit()) return std::nullopt;
    return base.unit_inverse().pow(static_cast<int>(-n));
  }
};

struct MultiSyntax {
  using Value = MultiPoly;
  Field field;
  std::size_t nvars;

  Value constant(const Scalar& c) const { return MultiPoly::constant(c, nvars); }
  std::optional<Value> variable(const std::string& name) const {
    if (name.size() < 2 || name[0] != 'x') return std::nullopt;
    for (std::size_t k = 1; k < name.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(name[k]))) return std::nullopt;
    }
    const unsigned long idx = std::stoul(name.substr(1));
    if (idx < 1 || idx > nvars) return std::nullopt;
    return MultiPoly::variable(field, nvars, idx - 1);
  }
  std::string variables() const {
    return nvars == 0 ? "no variable" : "'x1'..'x" + std::to_string(nvars) + "'";
  }
  std::optional<Value> power(const Value& base, long n) const {
    if (n < 0) return std::nullopt;
    return base.pow(static_cast<int>(n));
  }
};

template <class Syntax>
class Parser {
 public:
  using Value = typename Syntax::Value;

  Parser(const std::string& src, Syntax syntax) : src_(src), syntax_(std::move(syntax)) {}

  Value parse_expression_only() {
    Value v = expr();
    expect_end();
    return v;
  }

  Matrix<Value> parse_matrix_only() {
    Matrix<Value> m = matrix();
    expect_end();
    return m;
  }

  Matrix<Value> matrix() {
    std::vector<std::vector<Value>> rows;
    expect('[');
    do {
      rows.push_back(row());
      if (!rows.front().empty() && rows.back().size() != rows.front().size()) {
        fail("row of length " + std::to_string(rows.front().size()), "ragged matrix rows");
      }
    } while (accept(','));
    expect(']');
    return Matrix<Value>::from_rows(rows, syntax_.constant(Scalar::zero(syntax_.field)));
  }

  bool at(char c) {
    skip_space();
    return pos_ < src_.size() && src_[pos_] == c;
  }
  bool at_end() {
    skip_space();
    return pos_ >= src_.size();
  }
  bool accept(char c) {
    if (!at(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }
  void expect_end() {
    if (!at_end()) fail("end of input");
  }

  /// Signed machine integer, used for exponents and O(d).
  long signed_int() {
    const bool negative = accept('-');
    const mpz_class v = integer();
    if (!v.fits_slong_p()) fail("integer of machine size");
    const long n = v.get_si();
    return negative ? -n : n;
  }

  [[noreturn]] void fail(const std::string& expected, const std::string& what = "") {
    int line = 1;
    int column = 1;
    for (std::size_t k = 0; k < pos_ && k < src_.size(); ++k) {
      if (src_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string found = pos_ >= src_.size() ? "end of input" : std::string("'") + src_[pos_] + "'";
    std::string message = what.empty() ? "expected " + expected + ", found " + found : what;
    throw ParseError(message, line, column, expected);
  }

 private:
  std::vector<Value> row() {
    std::vector<Value> out;
    expect('[');
    do {
      out.push_back(expr());
    } while (accept(','));
    expect(']');
    return out;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+')) {
        v = v + term();
      } else if (accept('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    while (accept('*')) v = v * unary();
    return v;
  }

  Value unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Value power() {
    const std::size_t start = pos_;
    Value base = primary();
    if (!accept('^')) return base;
    const long n = signed_int();
    auto v = syntax_.power(base, n);
    if (!v) {
      pos_ = start;
      fail("a single term before a negative exponent", "negative power of a non-monomial");
    }
    return *v;
  }

  Value primary() {
    skip_space();
    if (accept('(')) {
      Value v = expr();
      expect(')');
      return v;
    }
    if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      const mpz_class num = integer();
      if (accept('/')) {
        const mpz_class den = integer();
        return syntax_.constant(Scalar(syntax_.field, num, den));
      }
      return syntax_.constant(Scalar(syntax_.field, num));
    }
    if (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
      const std::size_t start = pos_;
      std::string name;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) name += src_[pos_++];
      if (auto v = syntax_.variable(name)) return *v;
      pos_ = start;
      fail(syntax_.variables(), "unknown variable '" + name + "'");
    }
    fail("integer, " + syntax_.variables() + ", '(' or '-'");
  }

  mpz_class integer() {
    skip_space();
    std::string digits;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits += src_[pos_++];
    if (digits.empty()) fail("integer");
    return mpz_class(digits);
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  const std::string& src_;
  Syntax syntax_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// "q" or "fp:<p>".
inline Field parse_field(const std::string& tag) {
  if (tag == "q" || tag == "Q") return Field::rationals();
  if (tag.rfind("fp:", 0) == 0 && tag.size() > 3) {
    const std::string digits = tag.substr(3);
    bool ok = digits.size() <= 19;
    for (char c : digits) ok = ok && std::isdigit(static_cast<unsigned char>(c));
    if (ok) return Field::prime(std::stoull(digits));
  }
  throw ParseError("unknown field '" + tag + "'", 1, 1, "'q' or 'fp:<prime>'");
}

inline LaurentPoly parse_poly(const std::string& src, const Field& field = Field::rationals()) {
  return detail::Parser<detail::LaurentSyntax>(src, {field}).parse_expression_only();
}

inline MultiPoly parse_multipoly(const std::string& src, const Field& field, std::size_t nvars) {
  return detail::Parser<detail::MultiSyntax>(src, {field, nvars}).parse_expression_only();
}

inline LaurentMatrix parse_laurent_matrix(const std::string& src, const Field& field) {
  return detail::Parser<detail::LaurentSyntax>(src, {field}).parse_matrix_only();
}

inline Matrix<MultiPoly> parse_poly_matrix(const std::string& src, const Field& field, std::size_t nvars) {
  return detail::Parser<detail::MultiSyntax>(src, {field, nvars}).parse_matrix_only();
}

/// Largest k such that x_k occurs in src; used to size the variable set.
inline std::size_t count_x_variables(const std::string& src) {
  std::size_t best = 0;
  for (std::size_t k = 0; k + 1 < src.size(); ++k) {
    if (src[k] != 'x' || !std::isdigit(static_cast<unsigned char>(src[k + 1]))) continue;
    if (k > 0 && std::isalnum(static_cast<unsigned char>(src[k - 1]))) continue;
    std::size_t j = k + 1;
    std::string digits;
    while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) digits += src[j++];
    best = std::max<std::size_t>(best, std::stoul(digits));
  }
  return best;
}

/// A transition matrix literal, or a direct sum of line bundles "O(a) + O(b)".
inline LaurentMatrix parse_bundle_matrix(const std::string& src, const Field& field) {
  detail::Parser<detail::LaurentSyntax> p(src, {field});
  if (p.at('[')) return p.parse_matrix_only();
  std::vector<long> degrees;
  do {
    p.expect('O');
    p.expect('(');
    degrees.push_back(p.signed_int());
    p.expect(')');
  } while (p.accept('+'));
  p.expect_end();
  LaurentMatrix m(degrees.size(), degrees.size(), LaurentPoly::zero(field));
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    m(k, k) = LaurentPoly::monomial(field, 1, -static_cast<int>(degrees[k]));
  }
  return m;
}

}  // namespace jetline
