#pragma once

// Solution-preserving transformations of a bilinear system: elementary
// operations on the (A_i, g_i) pairs, rhs normalization to (1, 0, ..., 0),
// and simultaneous equivalence A_i -> P A_i Q.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bls/error.hpp"
#include "bls/matrix.hpp"
#include "bls/system.hpp"

namespace bls {

enum class OpKind {
  Permute,      // swap pairs `target` and `source`
  Scale,        // pair `target` *= coeff
  AddMultiple,  // pair `target` += coeff * pair `source`
  Drop,         // pair `target` became (0, 0) and is removed
};

/// Pair indices are 0-based. reduce_system logs indices into the original
/// system; normalize_rhs logs positions at the time the operation applies.
struct ElementaryOp {
  OpKind kind;
  std::size_t target = 0;
  std::size_t source = 0;
  Scalar coeff;

  std::string to_string() const {
    const auto t = std::to_string(target + 1);
    const auto s = std::to_string(source + 1);
    switch (kind) {
      case OpKind::Permute: return "swap " + t + " " + s;
      case OpKind::Scale: return "scale " + t + " by " + coeff.to_string();
      case OpKind::AddMultiple: return "add " + coeff.to_string() + " * pair " + s + " to pair " + t;
      case OpKind::Drop: return "drop " + t;
    }
    return "?";
  }
};

struct ReductionReport {
  BilinearSystem reduced;
  bool inconsistent = false;
  std::vector<ElementaryOp> ops;
  std::vector<std::size_t> kept;               // original indices of the surviving pairs, in order
  std::optional<std::size_t> conflicting_pair;  // zero matrix with nonzero rhs
  std::optional<Scalar> conflicting_rhs;
};

/// Eliminates linear dependence among the pairs (vec A_i | g_i).
///
/// Pairs are scanned in input order; a pair whose matrix is independent of
/// the pairs already kept is kept unchanged, otherwise it is reduced to
/// (0, g_hat) by operation (iii) and dropped (g_hat = 0) or reported as a
/// contradiction (g_hat != 0). Independent input is returned unchanged.
inline ReductionReport reduce_system(const BilinearSystem& sys) {
  const FieldSpec f = sys.field();
  const std::size_t m = sys.m();

  struct Row {
    Vector a;
    Scalar g;
    Vector combo;  // coefficients over the original pairs
    std::size_t pivot = 0;
  };
  std::vector<Row> basis;
  ReductionReport report;
  std::vector<Matrix> kept_mats;
  Vector kept_rhs;

  for (std::size_t i = 0; i < m; ++i) {
    Row r{vec(sys.matrix(i)), sys.rhs()[i], unit_vector(m, i, f), 0};
    for (const auto& b : basis) {
      const Scalar c = r.a[b.pivot];
      if (c.is_zero()) continue;
      r.a = r.a - c * b.a;
      r.g -= c * b.g;
      r.combo = r.combo - c * b.combo;
    }
    const auto lead = std::find_if(r.a.begin(), r.a.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (lead == r.a.end()) {
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i && !r.combo[j].is_zero()) report.ops.push_back({OpKind::AddMultiple, i, j, r.combo[j]});
      }
      if (!r.g.is_zero()) {
        report.inconsistent = true;
        report.conflicting_pair = i;
        report.conflicting_rhs = r.g;
        break;
      }
      report.ops.push_back({OpKind::Drop, i, i, Scalar::zero(f)});
      continue;
    }
    r.pivot = static_cast<std::size_t>(lead - r.a.begin());
    const Scalar inv = r.a[r.pivot].inverse();
    r.a = inv * r.a;
    r.g *= inv;
    r.combo = inv * r.combo;
    for (auto& b : basis) {
      const Scalar c = b.a[r.pivot];
      if (c.is_zero()) continue;
      b.a = b.a - c * r.a;
      b.g -= c * r.g;
      b.combo = b.combo - c * r.combo;
    }
    basis.push_back(std::move(r));
    report.kept.push_back(i);
    kept_mats.push_back(sys.matrix(i));
    kept_rhs.push_back(sys.rhs()[i]);
  }
  report.reduced = BilinearSystem(sys.p(), sys.q(), f, std::move(kept_mats), std::move(kept_rhs));
  return report;
}

struct RhsNormalization {
  BilinearSystem system;
  std::vector<ElementaryOp> ops;
  Matrix transform;  // m x m: new pair k = sum_l transform(k, l) * old pair l
};

/// Invertible recombination of the pairs taking g to (1, 0, ..., 0): the
/// first pair with g_k != 0 moves to the front, is scaled by 1/g_k, and is
/// subtracted from the others. Throws ZeroRhs for homogeneous systems.
inline RhsNormalization normalize_rhs(const BilinearSystem& sys) {
  const FieldSpec f = sys.field();
  const std::size_t m = sys.m();
  const auto& g = sys.rhs();
  const auto lead = std::find_if(g.begin(), g.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (lead == g.end()) throw Error(Errc::ZeroRhs, "cannot normalize a homogeneous right-hand side");
  const std::size_t k = static_cast<std::size_t>(lead - g.begin());

  RhsNormalization out;
  Matrix t = Matrix::identity(m, f);
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  if (k != 0) {
    std::swap(order[0], order[k]);
    out.ops.push_back({OpKind::Permute, 0, k, Scalar::one(f)});
    t.swap_rows(0, k);
  }
  const Scalar inv = g[k].inverse();
  if (!inv.is_one()) {
    out.ops.push_back({OpKind::Scale, 0, 0, inv});
    for (std::size_t l = 0; l < m; ++l) t(0, l) *= inv;
  }
  for (std::size_t i = 1; i < m; ++i) {
    const Scalar gi = g[order[i]];
    if (gi.is_zero()) continue;
    out.ops.push_back({OpKind::AddMultiple, i, 0, -gi});
    for (std::size_t l = 0; l < m; ++l) t(i, l) -= gi * t(0, l);
  }

  std::vector<Matrix> mats;
  Vector rhs;
  for (std::size_t i = 0; i < m; ++i) {
    Matrix a(sys.p(), sys.q(), f);
    Scalar gi = Scalar::zero(f);
    for (std::size_t l = 0; l < m; ++l) {
      if (t(i, l).is_zero()) continue;
      a = a + t(i, l) * sys.matrix(l);
      gi += t(i, l) * g[l];
    }
    mats.push_back(std::move(a));
    rhs.push_back(std::move(gi));
  }
  out.system = BilinearSystem(sys.p(), sys.q(), f, std::move(mats), std::move(rhs));
  out.transform = std::move(t);
  return out;
}

/// A_i -> P A_i Q with the right-hand side unchanged. Throws
/// SingularTransform unless P and Q are invertible.
inline BilinearSystem equiv_transform(const BilinearSystem& sys, const Matrix& p_mat, const Matrix& q_mat) {
  if (p_mat.rows() != sys.p() || p_mat.cols() != sys.p() || q_mat.rows() != sys.q() || q_mat.cols() != sys.q()) {
    throw Error(Errc::DimensionMismatch, "P must be p x p and Q must be q x q");
  }
  if (rank(p_mat) != sys.p() || rank(q_mat) != sys.q()) {
    throw Error(Errc::SingularTransform, "equivalence transform must be invertible");
  }
  std::vector<Matrix> mats;
  mats.reserve(sys.m());
  for (const auto& a : sys.matrices()) mats.push_back(p_mat * a * q_mat);
  return BilinearSystem(sys.p(), sys.q(), sys.field(), std::move(mats), sys.rhs());
}

/// Maps a solution of `sys` to the corresponding solution of
/// equiv_transform(sys, P, Q): (x, y) -> (Q^-1 x, P^-T y).
inline SolutionPair push_forward(const SolutionPair& s, const Matrix& p_mat, const Matrix& q_mat) {
  const auto p_inv = inverse(p_mat);
  const auto q_inv = inverse(q_mat);
  if (!p_inv || !q_inv) throw Error(Errc::SingularTransform, "equivalence transform must be invertible");
  return {*q_inv * s.x, p_inv->transpose() * s.y};
}

/// Inverse of push_forward: (x', y') -> (Q x', P^T y').
inline SolutionPair pull_back(const SolutionPair& s, const Matrix& p_mat, const Matrix& q_mat) {
  if (rank(p_mat) != p_mat.rows() || rank(q_mat) != q_mat.rows()) {
    throw Error(Errc::SingularTransform, "equivalence transform must be invertible");
  }
  return {q_mat * s.x, p_mat.transpose() * s.y};
}

}  // namespace bls
