#pragma once

// Dense exact matrices and the Gauss-Jordan kernel everything else builds on.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bls/error.hpp"
#include "bls/field.hpp"

namespace bls {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(std::size_t n, const FieldSpec& f) { return Vector(n, Scalar::zero(f)); }

inline Vector unit_vector(std::size_t n, std::size_t k, const FieldSpec& f) {
  Vector v = zero_vector(n, f);
  v.at(k) = Scalar::one(f);
  return v;
}

inline bool is_zero(const Vector& v) {
  for (const auto& s : v) {
    if (!s.is_zero()) return false;
  }
  return true;
}

inline bool is_totally_nonzero(const Vector& v) {
  for (const auto& s : v) {
    if (s.is_zero()) return false;
  }
  return true;
}

inline Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.empty()) {
    if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "dot of vectors of different length");
    return Scalar();
  }
  Scalar sum = Scalar::zero(a.front().field());
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

inline Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "vector sum");
  Vector out = a;
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
  return out;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "vector difference");
  Vector out = a;
  for (std::size_t k = 0; k < a.size(); ++k) out[k] -= b[k];
  return out;
}

inline Vector operator*(const Scalar& c, const Vector& v) {
  Vector out = v;
  for (auto& s : out) s = c * s;
  return out;
}

inline std::string to_string(const Vector& v) {
  std::string out = "(";
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) out += ", ";
    out += v[k].to_string();
  }
  return out + ")";
}

/// Row-major dense matrix over a single field.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, const FieldSpec& f)
      : rows_(rows), cols_(cols), field_(f), data_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(std::size_t n, const FieldSpec& f) {
    Matrix m(n, n, f);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = Scalar::one(f);
    return m;
  }

  static Matrix from_ints(const FieldSpec& f, std::initializer_list<std::initializer_list<long long>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c, f);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) m(i, j++) = Scalar::from_int(f, v);
      ++i;
    }
    return m;
  }

  static Matrix from_rows(const FieldSpec& f, const std::vector<Vector>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c, f);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(Errc::DimensionMismatch, "ragged row list");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const FieldSpec& f, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(rows, cols.size(), f);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw Error(Errc::DimensionMismatch, "column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Scalar& at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw Error(Errc::DimensionMismatch, "matrix index out of range");
    return (*this)(i, j);
  }
  const Scalar& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw Error(Errc::DimensionMismatch, "matrix index out of range");
    return (*this)(i, j);
  }

  Vector row(std::size_t i) const { return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  Vector col(std::size_t j) const {
    Vector v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  bool is_zero() const { return bls::is_zero(data_); }

  bool has_no_zero_entry() const { return is_totally_nonzero(data_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_shape(b);
    Matrix out = a;
    for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
    return out;
  }

  friend Matrix operator*(const Scalar& c, const Matrix& a) {
    Matrix out = a;
    for (auto& s : out.data_) s = c * s;
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_ || a.field_ != b.field_) throw Error(Errc::DimensionMismatch, "matrix product");
    Matrix out(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw Error(Errc::DimensionMismatch, "matrix-vector product");
    Vector out = zero_vector(a.rows_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

 private:
  void check_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(Errc::DimensionMismatch, "matrix shapes differ");
    if (field_ != o.field_) throw Error(Errc::FieldMismatch, "matrix fields differ");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  FieldSpec field_{};
  std::vector<Scalar> data_;
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[" : ", [");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j == 0 ? "" : ", ") << m(i, j);
    os << "]";
  }
  return os << "]";
}

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form. Pivot search runs left to right; within a
/// column the first nonzero row at or below the current position is used.
/// Only the first `limit_cols` columns are eligible as pivots (default: all).
inline Echelon rref(Matrix m, std::optional<std::size_t> limit_cols = std::nullopt) {
  const std::size_t pivot_cols = limit_cols.value_or(m.cols());
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col).is_zero()) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(row, sel);
    const Scalar inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Scalar factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

/// Nullspace basis, one vector per free column in increasing column order;
/// the vector for free column f has a 1 at f and zeros at the other free
/// columns.
inline std::vector<Vector> nullspace(const Matrix& m) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = unit_vector(m.cols(), f, m.field());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

struct LinearSolution {
  Vector particular;             // free variables set to zero
  std::vector<Vector> kernel;    // nullspace basis of the coefficient matrix
};

/// Solves a x = b exactly. Returns nullopt when inconsistent.
inline std::optional<LinearSolution> solve_linear(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw Error(Errc::DimensionMismatch, "rhs length");
  Matrix aug(a.rows(), a.cols() + 1, a.field());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const Echelon e = rref(aug, a.cols());
  for (std::size_t i = e.pivots.size(); i < a.rows(); ++i) {
    if (!e.reduced(i, a.cols()).is_zero()) return std::nullopt;
  }
  Vector x = zero_vector(a.cols(), a.field());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> kernel;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = unit_vector(a.cols(), f, a.field());
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    kernel.push_back(std::move(v));
  }
  return LinearSolution{std::move(x), std::move(kernel)};
}

inline std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n, a.field());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Scalar::one(a.field());
  }
  const Echelon e = rref(aug, n);
  if (e.pivots.size() != n) return std::nullopt;
  Matrix inv(n, n, a.field());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

inline Scalar determinant(Matrix m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  Scalar det = Scalar::one(m.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m(sel, col).is_zero()) ++sel;
    if (sel == n) return Scalar::zero(m.field());
    if (sel != col) {
      m.swap_rows(sel, col);
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = m(col, col).inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col).is_zero()) continue;
      const Scalar factor = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return det;
}

/// True iff `v` lies in the span of `basis` (all vectors of equal length).
inline bool in_span(const std::vector<Vector>& basis, const Vector& v) {
  if (is_zero(v)) return true;
  if (basis.empty()) return false;
  const FieldSpec f = v.front().field();
  const Matrix b = Matrix::from_rows(f, basis);
  std::vector<Vector> ext = basis;
  ext.push_back(v);
  return rank(Matrix::from_rows(f, ext)) == rank(b);
}

}  // namespace bls
