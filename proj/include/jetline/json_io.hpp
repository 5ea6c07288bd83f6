#pragma once

// JSON encoding.  Scalars: integers as numbers, other rationals as "a/b"
// strings.  Laurent polynomials: {"exponent": coefficient}.  Multivariate
// polynomials: {"e1,e2,...": coefficient}.  Matrices: arrays of rows.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

#include "jetline/field.hpp"
#include "jetline/laurent.hpp"
#include "jetline/matrix.hpp"
#include "jetline/multipoly.hpp"
#include "jetline/p1.hpp"

namespace jetline {

using Json = nlohmann::ordered_json;

inline Json to_json(const Scalar& c) {
  if (!c.field().is_rational()) return c.residue();
  const mpq_class& q = c.rational();
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

inline Scalar scalar_from_json(const Json& j, const Field& field) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Scalar(field, mpz_class(std::to_string(j.get<std::uint64_t>())));
    return Scalar(field, j.get<long>());
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Scalar(field, mpz_class(s));
      return Scalar(field, mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed rational '" + s + "'", 1, 1, "integer or 'a/b' string");
    }
  }
  throw ParseError("coefficient must be an integer or an 'a/b' string", 1, 1, "integer or 'a/b' string");
}

inline Json to_json(const LaurentPoly& p) {
  Json out = Json::object();
  for (const auto& [e, c] : p.terms()) out[std::to_string(e)] = to_json(c);
  return out;
}

inline int exponent_from_key(const std::string& key) {
  try {
    std::size_t used = 0;
    const int e = std::stoi(key, &used);
    if (used == key.size()) return e;
  } catch (const std::exception&) {
  }
  throw ParseError("malformed exponent key '" + key + "'", 1, 1, "integer exponent");
}

inline LaurentPoly laurent_from_json(const Json& j, const Field& field) {
  if (!j.is_object()) throw ParseError("polynomial must be an object", 1, 1, "{exponent: coefficient}");
  LaurentPoly p(field);
  for (const auto& [key, value] : j.items()) p.add_term(exponent_from_key(key), scalar_from_json(value, field));
  return p;
}

inline Json to_json(const MultiPoly& p) {
  Json out = Json::object();
  for (const auto& [e, c] : p.terms()) {
    std::string key;
    for (std::size_t k = 0; k < e.size(); ++k) key += (k ? "," : "") + std::to_string(e[k]);
    out[key] = to_json(c);
  }
  return out;
}

inline MultiPoly multipoly_from_json(const Json& j, const Field& field, std::size_t nvars) {
  if (!j.is_object()) throw ParseError("polynomial must be an object", 1, 1, "{exponents: coefficient}");
  MultiPoly p(field, nvars);
  for (const auto& [key, value] : j.items()) {
    MultiPoly::Exponents e;
    std::size_t start = 0;
    while (start <= key.size()) {
      const auto comma = key.find(',', start);
      e.push_back(exponent_from_key(key.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    p.add_term(e, scalar_from_json(value, field));
  }
  return p;
}

template <class T>
Json to_json(const Matrix<T>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline LaurentMatrix laurent_matrix_from_json(const Json& j, const Field& field) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a non-empty array of rows", 1, 1, "[[...]]");
  std::vector<std::vector<LaurentPoly>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("matrix row must be an array", 1, 1, "[...]");
    std::vector<LaurentPoly> row;
    for (const auto& x : r) row.push_back(laurent_from_json(x, field));
    rows.push_back(std::move(row));
  }
  return LaurentMatrix::from_rows(rows, LaurentPoly::zero(field));
}

inline Json to_json(const SplittingType& st) { return Json(st.degrees); }

inline Json to_json(const K0Class& k) { return Json{{"degree", k.degree}, {"rank", k.rank}}; }

}  // namespace jetline
