#pragma once

// Exact linear algebra: Gauss-Jordan over a field, and determinant/inverse
// for matrices over K[t, 1/t].

#include <optional>
#include <vector>

#include "jetline/field.hpp"
#include "jetline/laurent.hpp"
#include "jetline/matrix.hpp"

namespace jetline {

using ScalarMatrix = Matrix<Scalar>;
using LaurentMatrix = Matrix<LaurentPoly>;
using ScalarVector = std::vector<Scalar>;

/// Reduced row echelon form together with its pivot columns.
struct EchelonForm {
  ScalarMatrix reduced;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return pivots.size(); }
};

inline EchelonForm row_reduce(ScalarMatrix m) {
  EchelonForm out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    }
    const Scalar inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Scalar factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const ScalarMatrix& m) { return row_reduce(m).rank(); }

/// Basis of the right null space {v : M v = 0}; its size is cols - rank.
inline std::vector<ScalarVector> kernel(const ScalarMatrix& m) {
  const EchelonForm ef = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : ef.pivots) is_pivot[p] = true;
  std::vector<ScalarVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    ScalarVector v(m.cols(), m.zero());
    v[free] = Scalar::one(m.zero().field());
    for (std::size_t r = 0; r < ef.pivots.size(); ++r) v[ef.pivots[r]] = -ef.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A solution of M x = b, or nothing when the system is inconsistent.
inline std::optional<ScalarVector> solve(const ScalarMatrix& m, const ScalarVector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length");
  ScalarMatrix aug(m.rows(), m.cols() + 1, m.zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const EchelonForm ef = row_reduce(std::move(aug));
  if (!ef.pivots.empty() && ef.pivots.back() == m.cols()) return std::nullopt;
  ScalarVector x(m.cols(), m.zero());
  for (std::size_t r = 0; r < ef.pivots.size(); ++r) x[ef.pivots[r]] = ef.reduced(r, m.cols());
  return x;
}

inline Scalar determinant(const ScalarMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  ScalarMatrix a = m;
  const Field field = m.zero().field();
  Scalar det = Scalar::one(field);
  for (std::size_t col = 0; col < a.rows(); ++col) {
    std::size_t pivot = col;
    while (pivot < a.rows() && a(pivot, col).is_zero()) ++pivot;
    if (pivot == a.rows()) return Scalar::zero(field);
    if (pivot != col) {
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    const Scalar inv = a(col, col).inverse();
    for (std::size_t i = col + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      const Scalar factor = a(i, col) * inv;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= factor * a(col, j);
    }
  }
  return det;
}

inline std::optional<ScalarMatrix> inverse(const ScalarMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return m;
  const Field field = m.zero().field();
  ScalarMatrix aug(n, 2 * n, m.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar::one(field);
  }
  const EchelonForm ef = row_reduce(std::move(aug));
  if (ef.rank() < n || ef.pivots[n - 1] != n - 1) return std::nullopt;
  ScalarMatrix inv(n, n, m.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ef.reduced(i, n + j);
  }
  return inv;
}

// --- Laurent matrices -------------------------------------------------------

inline LaurentMatrix laurent_identity(const Field& field, std::size_t n) {
  return LaurentMatrix::identity(n, LaurentPoly::zero(field), LaurentPoly::one(field));
}

inline LaurentMatrix minor_matrix(const LaurentMatrix& m, std::size_t row, std::size_t col) {
  LaurentMatrix out(m.rows() - 1, m.cols() - 1, m.zero());
  for (std::size_t i = 0, oi = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

/// Cofactor expansion; transition matrices have small rank.
inline LaurentPoly determinant(const LaurentMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return LaurentPoly::one(m.zero().field());
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  LaurentPoly det = m.zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    LaurentPoly term = m(0, j) * determinant(minor_matrix(m, 0, j));
    if (j % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

/// Exact inverse in GL_r(K[t, 1/t]) via the adjugate.  Throws NotAUnit when
/// the determinant is not a single term c*t^k.
inline LaurentMatrix laurent_mat_inverse(const LaurentMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of non-square matrix");
  const LaurentPoly det = determinant(m);
  if (!det.is_unit()) {
    throw NotAUnit("determinant " + det.to_string() + " is not a unit of K[t,1/t]", det.to_string());
  }
  const LaurentPoly det_inv = det.unit_inverse();
  const std::size_t n = m.rows();
  LaurentMatrix inv(n, n, m.zero());
  if (n == 1) {
    inv(0, 0) = det_inv;
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      LaurentPoly cof = determinant(minor_matrix(m, j, i));
      if ((i + j) % 2 == 1) cof = -cof;
      inv(i, j) = cof * det_inv;
    }
  }
  return inv;
}

/// Extreme exponents over all nonzero entries; nullopt for the zero matrix.
inline std::optional<int> max_exponent(const LaurentMatrix& m) {
  std::optional<int> best;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (auto e = m(i, j).max_exponent(); e && (!best || *e > *best)) best = e;
    }
  }
  return best;
}
inline std::optional<int> min_exponent(const LaurentMatrix& m) {
  std::optional<int> best;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (auto e = m(i, j).min_exponent(); e && (!best || *e < *best)) best = e;
    }
  }
  return best;
}

inline LaurentMatrix derivative(const LaurentMatrix& m) {
  return m.map([](const LaurentPoly& p) { return p.derivative(); });
}

inline LaurentMatrix shifted(const LaurentMatrix& m, int k) {
  return m.map([k](const LaurentPoly& p) { return p.shifted(k); });
}

}  // namespace jetline
