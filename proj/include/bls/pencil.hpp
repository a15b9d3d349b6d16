#pragma once

// The affine pencil K(z) = K0 + z_1 K_1 + ... + z_r K_r whose points are
// exactly the matrices K with (vec A_i)^T vec K = g_i for all i. A pair
// (x, y) solves the bilinear system iff y x^T is a point of the pencil.

#include <cstddef>
#include <string>
#include <vector>

#include "bls/error.hpp"
#include "bls/matrix.hpp"
#include "bls/system.hpp"

namespace bls {

struct AffinePencil {
  std::size_t p = 0;
  std::size_t q = 0;
  FieldSpec field{};
  Matrix k0;
  std::vector<Matrix> basis;

  std::size_t r() const { return basis.size(); }
};

/// K(z) for a concrete parameter vector. Throws DimensionMismatch if |z| != r.
inline Matrix pencil_eval(const AffinePencil& pencil, const Vector& z) {
  if (z.size() != pencil.r()) {
    throw Error(Errc::DimensionMismatch, "pencil has r = " + std::to_string(pencil.r()) + " parameters, got " +
                                             std::to_string(z.size()));
  }
  Matrix k = pencil.k0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!z[i].is_zero()) k = k + z[i] * pencil.basis[i];
  }
  return k;
}

/// One Gauss-Jordan pass over [A^T | g] (A = stack(sys)). K0 takes the free
/// coordinates equal to zero; K_i is the nullspace vector of the i-th free
/// vec position (increasing order). Throws NotReduced if the A_i are
/// linearly dependent.
inline AffinePencil build_pencil(const BilinearSystem& sys) {
  const Matrix at = stack(sys).transpose();
  const auto sol = solve_linear(at, sys.rhs());
  if (!sol || rank(at) != sys.m()) {
    throw Error(Errc::NotReduced, "coefficient matrices are linearly dependent; run reduce_system first");
  }
  AffinePencil out{sys.p(), sys.q(), sys.field(), unvec(sol->particular, sys.p(), sys.q()), {}};
  for (const auto& v : sol->kernel) out.basis.push_back(unvec(v, sys.p(), sys.q()));
  return out;
}

/// Standard basis vectors e_j of F^{pq} at the non-pivot positions of the
/// echelon form of A^T, in increasing j. Together with the columns of A
/// they form an invertible pq x pq matrix.
inline std::vector<Vector> default_completion_columns(const BilinearSystem& sys) {
  const std::size_t n = sys.p() * sys.q();
  const Echelon e = rref(stack(sys).transpose());
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) cols.push_back(unit_vector(n, j, sys.field()));
  }
  return cols;
}

/// Completion route: B = [A | extra] must be invertible; then
/// vec K = (B^T)^{-1} (g ; z). Throws SingularCompletion otherwise.
inline AffinePencil build_pencil_completion(const BilinearSystem& sys, const std::vector<Vector>& extra) {
  const std::size_t n = sys.p() * sys.q();
  if (sys.m() + extra.size() != n) {
    throw Error(Errc::DimensionMismatch, "completion needs exactly pq - m = " + std::to_string(n - sys.m()) +
                                             " extra columns, got " + std::to_string(extra.size()));
  }
  std::vector<Vector> cols;
  for (const auto& a : sys.matrices()) cols.push_back(vec(a));
  for (const auto& c : extra) {
    if (c.size() != n) throw Error(Errc::DimensionMismatch, "completion column length");
    cols.push_back(c);
  }
  const Matrix b = Matrix::from_columns(sys.field(), n, cols);
  const auto bt_inv = inverse(b.transpose());
  if (!bt_inv) throw Error(Errc::SingularCompletion, "augmented matrix [A | extra] is singular");

  Vector rhs = zero_vector(n, sys.field());
  for (std::size_t i = 0; i < sys.m(); ++i) rhs[i] = sys.rhs()[i];
  AffinePencil out{sys.p(), sys.q(), sys.field(), unvec(*bt_inv * rhs, sys.p(), sys.q()), {}};
  for (std::size_t i = sys.m(); i < n; ++i) out.basis.push_back(unvec(bt_inv->col(i), sys.p(), sys.q()));
  return out;
}

inline AffinePencil build_pencil_completion(const BilinearSystem& sys) {
  return build_pencil_completion(sys, default_completion_columns(sys));
}

namespace detail {

inline std::vector<Vector> vec_all(const std::vector<Matrix>& mats) {
  std::vector<Vector> out;
  out.reserve(mats.size());
  for (const auto& m : mats) out.push_back(vec(m));
  return out;
}

inline bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, const FieldSpec& f) {
  const std::size_t ra = a.empty() ? 0 : rank(Matrix::from_rows(f, a));
  const std::size_t rb = b.empty() ? 0 : rank(Matrix::from_rows(f, b));
  if (ra != rb) return false;
  std::vector<Vector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t rab = both.empty() ? 0 : rank(Matrix::from_rows(f, both));
  return rab == ra;
}

}  // namespace detail

/// True iff both pencils describe the same affine set of matrices.
inline bool pencil_spaces_equal(const AffinePencil& a, const AffinePencil& b) {
  if (a.p != b.p || a.q != b.q || a.field != b.field) return false;
  const auto ba = detail::vec_all(a.basis);
  const auto bb = detail::vec_all(b.basis);
  if (!detail::same_span(ba, bb, a.field)) return false;
  return in_span(ba, vec(a.k0 - b.k0));
}

/// Pencil with the right-hand side left as indeterminates:
/// K(z, g) = sum_k g_k G_k + sum_i z_i K_i.
struct SymbolicPencil {
  std::size_t p = 0;
  std::size_t q = 0;
  FieldSpec field{};
  std::vector<Matrix> rhs_coeffs;  // G_k, one per equation
  std::vector<Matrix> basis;       // K_i

  std::size_t r() const { return basis.size(); }
  std::size_t m() const { return rhs_coeffs.size(); }

  AffinePencil at(const Vector& g) const {
    if (g.size() != m()) throw Error(Errc::DimensionMismatch, "symbolic pencil rhs length");
    Matrix k0(p, q, field);
    for (std::size_t k = 0; k < g.size(); ++k) k0 = k0 + g[k] * rhs_coeffs[k];
    return {p, q, field, std::move(k0), basis};
  }

  /// Linear pencil in the r + m parameters (z_1..z_r, g_1..g_m), K0 = 0.
  AffinePencil as_linear_pencil() const {
    AffinePencil out{p, q, field, Matrix(p, q, field), basis};
    out.basis.insert(out.basis.end(), rhs_coeffs.begin(), rhs_coeffs.end());
    return out;
  }
};

/// By linearity G_k is the particular solution for g = e_k.
inline SymbolicPencil build_symbolic_pencil(const BilinearSystem& sys) {
  SymbolicPencil out{sys.p(), sys.q(), sys.field(), {}, {}};
  for (std::size_t k = 0; k < sys.m(); ++k) {
    const AffinePencil unit = build_pencil(sys.with_rhs(unit_vector(sys.m(), k, sys.field())));
    out.rhs_coeffs.push_back(unit.k0);
    if (k == 0) out.basis = unit.basis;
  }
  if (sys.m() == 0) out.basis = build_pencil(sys).basis;
  return out;
}

inline bool symbolic_pencils_equal(const SymbolicPencil& a, const SymbolicPencil& b) {
  if (a.p != b.p || a.q != b.q || a.field != b.field || a.m() != b.m()) return false;
  const auto ba = detail::vec_all(a.basis);
  if (!detail::same_span(ba, detail::vec_all(b.basis), a.field)) return false;
  for (std::size_t k = 0; k < a.m(); ++k) {
    if (!in_span(ba, vec(a.rhs_coeffs[k] - b.rhs_coeffs[k]))) return false;
  }
  return true;
}

}  // namespace bls
