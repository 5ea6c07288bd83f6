#pragma once

// Connections on finitely generated projective modules over K[x1..xm],
// presented as images of idempotent matrices, with the universal
// derivation into Omega = free module on dx1..dxm.

#include <string>
#include <vector>

#include "jetline/matrix.hpp"
#include "jetline/multipoly.hpp"

namespace jetline {

using PolyMatrix = Matrix<MultiPoly>;
using PolyVec = std::vector<MultiPoly>;

inline PolyVec operator+(PolyVec a, const PolyVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}
inline PolyVec operator-(PolyVec a, const PolyVec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}
inline PolyVec operator*(const MultiPoly& a, PolyVec v) {
  for (auto& x : v) x = a * x;
  return v;
}

inline std::string to_string(const PolyVec& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ", ";
    out += v[k].to_string();
  }
  return out + "]";
}

/// P with P*P = P; the projective module is im(P) in A^n.
class Idempotent {
 public:
  explicit Idempotent(PolyMatrix p) : p_(std::move(p)) {
    if (!p_.is_square()) throw DimensionMismatch("idempotent must be square");
    const PolyMatrix defect = p_ * p_ - p_;
    for (std::size_t i = 0; i < defect.rows(); ++i) {
      for (std::size_t j = 0; j < defect.cols(); ++j) {
        if (!defect(i, j).is_zero()) {
          throw NotIdempotent("matrix is not idempotent",
                              "(P^2 - P)[" + std::to_string(i) + "][" + std::to_string(j) +
                                  "] = " + defect(i, j).to_string());
        }
      }
    }
  }

  const PolyMatrix& matrix() const noexcept { return p_; }
  std::size_t size() const noexcept { return p_.rows(); }
  const Field& field() const noexcept { return p_.zero().field(); }
  std::size_t nvars() const noexcept { return p_.zero().nvars(); }

  PolyVec apply(const PolyVec& w) const { return p_ * w; }
  bool contains(const PolyVec& e) const { return apply(e) == e; }

 private:
  PolyMatrix p_;
};

/// Generators e_i = P std_i and functionals q_i = i-th coordinate (the
/// composite of the inclusion im(P) -> A^n with the coordinate projection).
struct DualBasis {
  std::vector<PolyVec> generators;

  MultiPoly coordinate(std::size_t i, const PolyVec& a) const { return a.at(i); }

  /// sum_i q_i(a) e_i; equals a on im(P).
  PolyVec reproduce(const PolyVec& a) const {
    if (generators.empty()) return a;
    PolyVec out(a.size(), MultiPoly::zero(a.front().field(), a.front().nvars()));
    for (std::size_t i = 0; i < generators.size(); ++i) out = out + coordinate(i, a) * generators[i];
    return out;
  }
};

inline DualBasis dual_basis(const Idempotent& p) {
  DualBasis db;
  for (std::size_t i = 0; i < p.size(); ++i) db.generators.push_back(p.matrix().column(i));
  return db;
}

/// An element of Omega (x) A^n: components[v] is the coefficient vector of dx_{v+1}.
struct OmegaTensor {
  std::vector<PolyVec> components;

  friend bool operator==(const OmegaTensor&, const OmegaTensor&) = default;
  friend OmegaTensor operator-(OmegaTensor a, const OmegaTensor& b) {
    for (std::size_t v = 0; v < a.components.size(); ++v) a.components[v] = a.components[v] - b.components[v];
    return a;
  }
  friend OmegaTensor operator+(OmegaTensor a, const OmegaTensor& b) {
    for (std::size_t v = 0; v < a.components.size(); ++v) a.components[v] = a.components[v] + b.components[v];
    return a;
  }

  bool is_zero() const {
    for (const auto& c : components) {
      for (const auto& x : c) {
        if (!x.is_zero()) return false;
      }
    }
    return true;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t v = 0; v < components.size(); ++v) {
      if (v) out += " + ";
      out += "dx" + std::to_string(v + 1) + " (x) " + jetline::to_string(components[v]);
    }
    return out.empty() ? "0" : out;
  }
};

/// d(a) (x) e.
inline OmegaTensor differential_tensor(const MultiPoly& a, const PolyVec& e) {
  OmegaTensor out;
  for (std::size_t v = 0; v < a.nvars(); ++v) out.components.push_back(a.partial(v) * e);
  return out;
}

/// nabla(e) = sum_i d(q_i(e)) (x) e_i on im(P).
class GrassmannConnection {
 public:
  explicit GrassmannConnection(Idempotent p) : p_(std::move(p)), basis_(dual_basis(p_)) {}

  const Idempotent& idempotent() const noexcept { return p_; }
  const DualBasis& basis() const noexcept { return basis_; }

  OmegaTensor operator()(const PolyVec& e) const {
    if (e.size() != p_.size()) throw DimensionMismatch("vector has the wrong length");
    if (!p_.contains(e)) throw BadParameter("vector is not in the image of P", to_string(e));
    OmegaTensor out;
    const std::size_t n = p_.size();
    for (std::size_t v = 0; v < p_.nvars(); ++v) {
      PolyVec acc(n, MultiPoly::zero(p_.field(), p_.nvars()));
      for (std::size_t i = 0; i < n; ++i) {
        acc = acc + basis_.coordinate(i, e).partial(v) * basis_.generators[i];
      }
      out.components.push_back(std::move(acc));
    }
    return out;
  }

  /// nabla(a e) - a nabla(e) - d(a) (x) e.
  OmegaTensor leibniz_defect(const MultiPoly& a, const PolyVec& e) const {
    OmegaTensor scaled = (*this)(e);
    for (auto& c : scaled.components) c = a * c;
    return (*this)(a * e) - scaled - differential_tensor(a, e);
  }

 private:
  Idempotent p_;
  DualBasis basis_;
};

inline GrassmannConnection grassmann_connection(const Idempotent& p) { return GrassmannConnection(p); }

}  // namespace jetline
