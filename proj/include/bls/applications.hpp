#pragma once

// Instance generators: commuting zero-nonzero patterns and the quaternion
// product equation T(v, w) = (v . w, v x w) = d0.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bls/error.hpp"
#include "bls/matrix.hpp"
#include "bls/reduction.hpp"
#include "bls/system.hpp"

namespace bls {

struct SignPattern {
  std::size_t n = 0;
  std::vector<std::vector<bool>> mask;

  /// Rows separated by ';', '*' or '1' for a nonzero position, e.g. "10;01".
  static SignPattern parse(const std::string& text) {
    SignPattern pat;
    std::vector<bool> row;
    auto flush = [&] {
      pat.mask.push_back(row);
      row.clear();
    };
    for (char c : text) {
      if (c == ';' || c == '/') {
        flush();
      } else if (c == '*' || c == '1' || c == 'x') {
        row.push_back(true);
      } else if (c == '0' || c == '.') {
        row.push_back(false);
      } else if (c != ' ') {
        throw Error(Errc::ParseError, std::string("pattern character '") + c + "'");
      }
    }
    flush();
    pat.n = pat.mask.size();
    pat.validate();
    return pat;
  }

  void validate() const {
    bool any = false;
    if (mask.size() != n) throw Error(Errc::DimensionMismatch, "pattern is not square");
    for (const auto& r : mask) {
      if (r.size() != n) throw Error(Errc::DimensionMismatch, "pattern is not square");
      for (bool b : r) any = any || b;
    }
    if (!any) throw Error(Errc::DimensionMismatch, "pattern has no nonzero entry");
  }

  /// Nonzero positions in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> positions() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (mask[i][j]) out.emplace_back(i, j);
    return out;
  }
};

struct CommutingSystem {
  BilinearSystem system;  // reduced, homogeneous
  std::vector<std::pair<std::size_t, std::size_t>> y_positions;  // y_k is the entry of P at this position
  std::vector<std::pair<std::size_t, std::size_t>> x_positions;  // x_k is the entry of Q at this position
  std::vector<std::pair<std::size_t, std::size_t>> equations;    // (i, j) of PQ - QP for each kept equation

  /// Concrete matrices P (from y) and Q (from x).
  std::pair<Matrix, Matrix> realize(const SolutionPair& s, std::size_t n) const {
    const FieldSpec f = system.field();
    Matrix p(n, n, f);
    Matrix q(n, n, f);
    for (std::size_t k = 0; k < y_positions.size(); ++k) p(y_positions[k].first, y_positions[k].second) = s.y[k];
    for (std::size_t k = 0; k < x_positions.size(); ++k) q(x_positions[k].first, x_positions[k].second) = s.x[k];
    return {p, q};
  }
};

/// PQ - QP = 0 entrywise, with y the nonzero entries of P and x those of Q.
/// Structurally zero or dependent equations are removed by reduce_system.
inline CommutingSystem commuting_bls(const SignPattern& P, const SignPattern& Q,
                                     const FieldSpec& f = FieldSpec::rationals()) {
  P.validate();
  Q.validate();
  if (P.n != Q.n) throw Error(Errc::DimensionMismatch, "patterns must have the same size");
  const std::size_t n = P.n;
  CommutingSystem out;
  out.y_positions = P.positions();
  out.x_positions = Q.positions();
  std::vector<std::vector<std::size_t>> p_index(n, std::vector<std::size_t>(n, SIZE_MAX));
  std::vector<std::vector<std::size_t>> q_index(n, std::vector<std::size_t>(n, SIZE_MAX));
  for (std::size_t k = 0; k < out.y_positions.size(); ++k) p_index[out.y_positions[k].first][out.y_positions[k].second] = k;
  for (std::size_t k = 0; k < out.x_positions.size(); ++k) q_index[out.x_positions[k].first][out.x_positions[k].second] = k;

  const std::size_t p = out.y_positions.size();
  const std::size_t q = out.x_positions.size();
  std::vector<Matrix> mats;
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix a(p, q, f);
      for (std::size_t k = 0; k < n; ++k) {
        if (p_index[i][k] != SIZE_MAX && q_index[k][j] != SIZE_MAX) a(p_index[i][k], q_index[k][j]) += Scalar::one(f);
        if (q_index[i][k] != SIZE_MAX && p_index[k][j] != SIZE_MAX) a(p_index[k][j], q_index[i][k]) -= Scalar::one(f);
      }
      mats.push_back(std::move(a));
      where.emplace_back(i, j);
    }
  const Vector rhs = zero_vector(mats.size(), f);
  const ReductionReport rep = reduce_system(BilinearSystem(p, q, f, std::move(mats), rhs));
  out.system = rep.reduced;
  for (auto k : rep.kept) out.equations.push_back(where[k]);
  return out;
}

/// v . w = d0_1 and v x w = (d0_2, d0_3, d0_4), with y = v and x = w.
/// Right-handed cross product: (v x w)_1 = v_2 w_3 - v_3 w_2 and cyclic.
inline BilinearSystem quaternion_bls(const Vector& d0) {
  if (d0.size() != 4) throw Error(Errc::DimensionMismatch, "d0 must have 4 entries");
  const FieldSpec f = d0.front().field();
  std::vector<Matrix> mats(4, Matrix(3, 3, f));
  mats[0] = Matrix::identity(3, f);
  const Scalar one = Scalar::one(f);
  for (std::size_t c = 0; c < 3; ++c) {
    const std::size_t a = (c + 1) % 3;
    const std::size_t b = (c + 2) % 3;
    mats[c + 1](a, b) = one;
    mats[c + 1](b, a) = -one;
  }
  return BilinearSystem(3, 3, f, std::move(mats), d0);
}

}  // namespace bls
