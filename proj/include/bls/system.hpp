#pragma once

// The bilinear system y^T A_i x = g_i (i = 1..m), its solution pairs, the
// column-stacking vec/unvec maps and the two slicings of the coefficient
// array.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bls/error.hpp"
#include "bls/field.hpp"
#include "bls/matrix.hpp"

namespace bls {

/// Homogeneous systems always admit x = 0 or y = 0; callers pick which
/// solutions count.
enum class SolutionMode { Any, Nontrivial, TotallyNonzero };

inline std::string to_string(SolutionMode mode) {
  switch (mode) {
    case SolutionMode::Any: return "any";
    case SolutionMode::Nontrivial: return "nontrivial";
    case SolutionMode::TotallyNonzero: return "totally_nonzero";
  }
  return "?";
}

inline SolutionMode parse_mode(const std::string& text) {
  if (text == "any") return SolutionMode::Any;
  if (text == "nontrivial") return SolutionMode::Nontrivial;
  if (text == "totally_nonzero" || text == "totally-nonzero") return SolutionMode::TotallyNonzero;
  throw Error(Errc::ParseError, "unknown mode '" + text + "'");
}

struct SolutionPair {
  Vector x;  // length q
  Vector y;  // length p

  friend bool operator==(const SolutionPair&, const SolutionPair&) = default;
  friend auto operator<=>(const SolutionPair& a, const SolutionPair& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

inline bool accepts(SolutionMode mode, const SolutionPair& s) {
  switch (mode) {
    case SolutionMode::Any: return true;
    case SolutionMode::Nontrivial: return !is_zero(s.x) && !is_zero(s.y);
    case SolutionMode::TotallyNonzero: return is_totally_nonzero(s.x) && is_totally_nonzero(s.y);
  }
  return false;
}

/// Representative of the class {(t x, y / t)}: the first nonzero entry of y
/// is 1; when y = 0 the first nonzero entry of x is 1 instead.
inline SolutionPair canonical(SolutionPair s) {
  auto first_nonzero = [](const Vector& v) {
    return std::find_if(v.begin(), v.end(), [](const Scalar& a) { return !a.is_zero(); });
  };
  if (auto it = first_nonzero(s.y); it != s.y.end()) {
    const Scalar t = *it;
    s.y = t.inverse() * s.y;
    s.x = t * s.x;
  } else if (auto jt = first_nonzero(s.x); jt != s.x.end()) {
    s.x = jt->inverse() * s.x;
  }
  return s;
}

/// Canonicalizes, sorts and removes duplicates.
inline std::vector<SolutionPair> canonical_set(std::vector<SolutionPair> sols) {
  for (auto& s : sols) s = canonical(std::move(s));
  std::sort(sols.begin(), sols.end());
  sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
  return sols;
}

class BilinearSystem {
 public:
  BilinearSystem() = default;

  /// Throws DimensionMismatch / FieldMismatch unless every A_i is p x q over
  /// `field` and rhs has one entry per matrix.
  BilinearSystem(std::size_t p, std::size_t q, FieldSpec field, std::vector<Matrix> matrices, Vector rhs)
      : p_(p), q_(q), field_(field), matrices_(std::move(matrices)), rhs_(std::move(rhs)) {
    if (p_ == 0 || q_ == 0) throw Error(Errc::DimensionMismatch, "p and q must be positive");
    if (matrices_.size() != rhs_.size()) {
      throw Error(Errc::DimensionMismatch, "rhs length " + std::to_string(rhs_.size()) + " != m = " +
                                               std::to_string(matrices_.size()));
    }
    for (const auto& a : matrices_) {
      if (a.rows() != p_ || a.cols() != q_) throw Error(Errc::DimensionMismatch, "coefficient matrix is not p x q");
      if (a.field() != field_) throw Error(Errc::FieldMismatch, "coefficient matrix field");
    }
    for (const auto& g : rhs_) {
      if (g.field() != field_) throw Error(Errc::FieldMismatch, "rhs field");
    }
  }

  /// Convenience: infers p, q and the field from the first matrix (m >= 1).
  BilinearSystem(std::vector<Matrix> matrices, Vector rhs) : BilinearSystem(shape_of(matrices), std::move(matrices), std::move(rhs)) {}

  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  std::size_t m() const { return matrices_.size(); }
  const FieldSpec& field() const { return field_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const Matrix& matrix(std::size_t i) const { return matrices_.at(i); }
  const Vector& rhs() const { return rhs_; }
  bool is_homogeneous() const { return is_zero(rhs_); }

  BilinearSystem with_rhs(Vector g) const { return BilinearSystem(p_, q_, field_, matrices_, std::move(g)); }

 private:
  struct Shape {
    std::size_t p, q;
    FieldSpec field;
  };
  static Shape shape_of(const std::vector<Matrix>& mats) {
    if (mats.empty()) return {0, 0, FieldSpec{}};
    return {mats.front().rows(), mats.front().cols(), mats.front().field()};
  }
  BilinearSystem(Shape s, std::vector<Matrix>&& matrices, Vector&& rhs)
      : BilinearSystem(s.p, s.q, s.field, std::move(matrices), std::move(rhs)) {}

  std::size_t p_ = 1;
  std::size_t q_ = 1;
  FieldSpec field_{};
  std::vector<Matrix> matrices_;
  Vector rhs_;
};

/// Column stacking: entry k*p + r is A(r, k), first column first.
inline Vector vec(const Matrix& a) {
  Vector v;
  v.reserve(a.rows() * a.cols());
  for (std::size_t k = 0; k < a.cols(); ++k)
    for (std::size_t r = 0; r < a.rows(); ++r) v.push_back(a(r, k));
  return v;
}

inline Matrix unvec(const Vector& v, std::size_t p, std::size_t q) {
  if (v.size() != p * q) {
    throw Error(Errc::DimensionMismatch,
                "unvec: length " + std::to_string(v.size()) + " != " + std::to_string(p) + "*" + std::to_string(q));
  }
  if (v.empty()) return Matrix(p, q, FieldSpec{});
  Matrix a(p, q, v.front().field());
  for (std::size_t k = 0; k < q; ++k)
    for (std::size_t r = 0; r < p; ++r) a(r, k) = v[k * p + r];
  return a;
}

inline Matrix outer(const Vector& y, const Vector& x) {
  if (y.empty() || x.empty()) throw Error(Errc::DimensionMismatch, "outer product of empty vectors");
  Matrix k(y.size(), x.size(), y.front().field());
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) k(i, j) = y[i] * x[j];
  return k;
}

/// Residual vector (y^T A_i x - g_i)_i; zero iff `s` solves `sys`.
inline Vector evaluate(const BilinearSystem& sys, const SolutionPair& s) {
  if (s.x.size() != sys.q() || s.y.size() != sys.p()) {
    throw Error(Errc::DimensionMismatch, "solution pair does not match system dimensions");
  }
  for (const auto& v : {std::cref(s.x), std::cref(s.y)}) {
    for (const auto& a : v.get()) {
      if (a.field() != sys.field()) throw Error(Errc::FieldMismatch, "solution entry field");
    }
  }
  Vector residual;
  residual.reserve(sys.m());
  for (std::size_t i = 0; i < sys.m(); ++i) residual.push_back(dot(s.y, sys.matrix(i) * s.x) - sys.rhs()[i]);
  return residual;
}

inline bool solves(const BilinearSystem& sys, const SolutionPair& s) { return is_zero(evaluate(sys, s)); }

struct SliceSet {
  std::vector<Matrix> row_slices;  // R_i, m x q: row k is row i of A_k
  std::vector<Matrix> col_slices;  // S_j, p x m: column k is column j of A_k
};

inline SliceSet slices(const BilinearSystem& sys) {
  SliceSet out;
  for (std::size_t i = 0; i < sys.p(); ++i) {
    Matrix r(sys.m(), sys.q(), sys.field());
    for (std::size_t k = 0; k < sys.m(); ++k)
      for (std::size_t j = 0; j < sys.q(); ++j) r(k, j) = sys.matrix(k)(i, j);
    out.row_slices.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < sys.q(); ++j) {
    Matrix s(sys.p(), sys.m(), sys.field());
    for (std::size_t k = 0; k < sys.m(); ++k)
      for (std::size_t i = 0; i < sys.p(); ++i) s(i, k) = sys.matrix(k)(i, j);
    out.col_slices.push_back(std::move(s));
  }
  return out;
}

/// Y(y) = sum_i y_i R_i (m x q); row k is y^T A_k, so y fixed gives Y x = g.
inline Matrix assemble_Y(const BilinearSystem& sys, const Vector& y) {
  if (y.size() != sys.p()) throw Error(Errc::DimensionMismatch, "assemble_Y: |y| != p");
  Matrix out(sys.m(), sys.q(), sys.field());
  for (std::size_t k = 0; k < sys.m(); ++k)
    for (std::size_t i = 0; i < sys.p(); ++i) {
      if (y[i].is_zero()) continue;
      for (std::size_t j = 0; j < sys.q(); ++j) out(k, j) += y[i] * sys.matrix(k)(i, j);
    }
  return out;
}

/// X(x) = sum_j x_j S_j (p x m); column k is A_k x, so x fixed gives y^T X = g^T.
inline Matrix assemble_X(const BilinearSystem& sys, const Vector& x) {
  if (x.size() != sys.q()) throw Error(Errc::DimensionMismatch, "assemble_X: |x| != q");
  Matrix out(sys.p(), sys.m(), sys.field());
  for (std::size_t k = 0; k < sys.m(); ++k) {
    const Vector col = sys.matrix(k) * x;
    for (std::size_t i = 0; i < sys.p(); ++i) out(i, k) = col[i];
  }
  return out;
}

/// The pq x m matrix whose column i is vec(A_i).
inline Matrix stack(const BilinearSystem& sys) {
  std::vector<Vector> cols;
  cols.reserve(sys.m());
  for (const auto& a : sys.matrices()) cols.push_back(vec(a));
  return Matrix::from_columns(sys.field(), sys.p() * sys.q(), cols);
}

/// The system with every A_i transposed: the roles of x and y swap.
inline BilinearSystem transposed(const BilinearSystem& sys) {
  std::vector<Matrix> mats;
  mats.reserve(sys.m());
  for (const auto& a : sys.matrices()) mats.push_back(a.transpose());
  return BilinearSystem(sys.q(), sys.p(), sys.field(), std::move(mats), sys.rhs());
}

}  // namespace bls
