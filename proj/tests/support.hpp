#pragma once

// Generators and independent reference computations for the tests. Nothing
// here calls the solver, pencil or oracle code under test; the naive
// routines work on plain integers mod p or on raw mpq_class tables.

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bls/field.hpp"
#include "bls/matrix.hpp"
#include "bls/system.hpp"

namespace testing_support {

using bls::BilinearSystem;
using bls::FieldSpec;
using bls::Matrix;
using bls::Scalar;
using bls::Vector;

using Rng = std::mt19937_64;

inline Scalar small_scalar(const FieldSpec& f, Rng& rng, int lo = -3, int hi = 3) {
  if (f.is_finite()) return Scalar::residue(f, rng() % f.modulus());
  std::uniform_int_distribution<int> d(lo, hi);
  if (f.kind() == bls::FieldKind::GaussianRationals && rng() % 3 == 0) {
    return Scalar::gaussian(mpq_class(d(rng)), mpq_class(d(rng)));
  }
  return Scalar::from_int(f, d(rng));
}

inline Scalar small_rational(const FieldSpec& f, Rng& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  return Scalar::from_rational(f, mpq_class(num(rng), den(rng)));
}

inline Vector random_vector(const FieldSpec& f, std::size_t n, Rng& rng) {
  Vector v;
  for (std::size_t k = 0; k < n; ++k) v.push_back(small_scalar(f, rng));
  return v;
}

inline Matrix random_matrix(const FieldSpec& f, std::size_t p, std::size_t q, Rng& rng) {
  Matrix a(p, q, f);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) a(i, j) = small_scalar(f, rng);
  return a;
}

// Rank by plain Gaussian elimination on an mpq table (Q only).
inline std::size_t naive_rank_q(std::vector<std::vector<mpq_class>> a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class t = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= t * a[r][j];
    }
    ++r;
  }
  return r;
}

inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline std::size_t naive_rank_mod(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] % p == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    const std::int64_t iv = inv_mod(a[r][c], p);
    for (auto& v : a[r]) v = v * iv % p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r) continue;
      const std::int64_t t = a[i][c] % p;
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - t * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// System over GF(p) as plain integers: a[k][i][j], g[k].
struct IntSystem {
  std::int64_t n = 0;
  std::size_t p = 0, q = 0;
  std::vector<std::vector<std::vector<std::int64_t>>> a;
  std::vector<std::int64_t> g;
};

inline IntSystem to_ints(const BilinearSystem& s) {
  IntSystem out{static_cast<std::int64_t>(s.field().modulus()), s.p(), s.q(), {}, {}};
  for (const auto& m : s.matrices()) {
    std::vector<std::vector<std::int64_t>> rows(s.p(), std::vector<std::int64_t>(s.q()));
    for (std::size_t i = 0; i < s.p(); ++i)
      for (std::size_t j = 0; j < s.q(); ++j) rows[i][j] = static_cast<std::int64_t>(m(i, j).residue());
    out.a.push_back(std::move(rows));
  }
  for (const auto& g : s.rhs()) out.g.push_back(static_cast<std::int64_t>(g.residue()));
  return out;
}

inline std::vector<std::int64_t> naive_eval(const IntSystem& s, const std::vector<std::int64_t>& x,
                                            const std::vector<std::int64_t>& y) {
  std::vector<std::int64_t> out;
  for (const auto& a : s.a) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < s.p; ++i)
      for (std::size_t j = 0; j < s.q; ++j) acc = (acc + y[i] * a[i][j] % s.n * x[j]) % s.n;
    out.push_back(acc);
  }
  return out;
}

// All vectors of length len over Z/n, as integer tuples.
inline std::vector<std::vector<std::int64_t>> all_tuples(std::size_t len, std::int64_t n) {
  std::vector<std::vector<std::int64_t>> out{{}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& t : out)
      for (std::int64_t d = 0; d < n; ++d) {
        auto u = t;
        u.push_back(d);
        next.push_back(std::move(u));
      }
    out = std::move(next);
  }
  return out;
}

using IntPair = std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>;  // (y, x)

// Scales (x, y) to the representative whose first nonzero y entry is 1
// (first nonzero x entry when y = 0).
inline IntPair naive_normalize(std::vector<std::int64_t> x, std::vector<std::int64_t> y, std::int64_t n) {
  auto lead = [](const std::vector<std::int64_t>& v) -> std::int64_t {
    for (auto d : v)
      if (d != 0) return d;
    return 0;
  };
  if (const auto t = lead(y); t != 0) {
    const auto ti = inv_mod(t, n);
    for (auto& d : y) d = d * ti % n;
    for (auto& d : x) d = d * t % n;
  } else if (const auto u = lead(x); u != 0) {
    const auto ui = inv_mod(u, n);
    for (auto& d : x) d = d * ui % n;
  }
  return {std::move(y), std::move(x)};
}

// Every solution class, found by normalizing each raw solution.
inline std::set<IntPair> naive_solutions(const IntSystem& s, bls::SolutionMode mode) {
  std::set<IntPair> out;
  const auto xs = all_tuples(s.q, s.n);
  const auto ys = all_tuples(s.p, s.n);
  auto nonzero = [](const std::vector<std::int64_t>& v) {
    for (auto d : v)
      if (d != 0) return true;
    return false;
  };
  auto total = [](const std::vector<std::int64_t>& v) {
    for (auto d : v)
      if (d == 0) return false;
    return true;
  };
  for (const auto& y : ys)
    for (const auto& x : xs) {
      if (naive_eval(s, x, y) != s.g) continue;
      if (mode == bls::SolutionMode::Nontrivial && !(nonzero(x) && nonzero(y))) continue;
      if (mode == bls::SolutionMode::TotallyNonzero && !(total(x) && total(y))) continue;
      out.insert(naive_normalize(x, y, s.n));
    }
  return out;
}

inline std::set<IntPair> to_int_pairs(const std::vector<bls::SolutionPair>& sols) {
  std::set<IntPair> out;
  for (const auto& s : sols) {
    IntPair ip;
    for (const auto& v : s.y) ip.first.push_back(static_cast<std::int64_t>(v.residue()));
    for (const auto& v : s.x) ip.second.push_back(static_cast<std::int64_t>(v.residue()));
    out.insert(std::move(ip));
  }
  return out;
}

// Number of distinct values of F(x, y) = (y^T A_k x)_k.
inline std::size_t naive_image_size(const IntSystem& s) {
  std::set<std::vector<std::int64_t>> img;
  const auto xs = all_tuples(s.q, s.n);
  const auto ys = all_tuples(s.p, s.n);
  for (const auto& y : ys)
    for (const auto& x : xs) img.insert(naive_eval(s, x, y));
  return img.size();
}

inline std::size_t stacked_rank_mod(const IntSystem& s) {
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& a : s.a) {
    std::vector<std::int64_t> r;
    for (const auto& row : a) r.insert(r.end(), row.begin(), row.end());
    rows.push_back(std::move(r));
  }
  return naive_rank_mod(rows, s.n);
}

// Linearly independent matrices over `f`, drawn until the stack has rank m.
inline std::vector<Matrix> independent_matrices(const FieldSpec& f, std::size_t p, std::size_t q, std::size_t m,
                                                Rng& rng) {
  while (true) {
    std::vector<Matrix> mats;
    for (std::size_t k = 0; k < m; ++k) mats.push_back(random_matrix(f, p, q, rng));
    std::vector<Vector> rows;
    for (const auto& a : mats) rows.push_back(bls::vec(a));
    if (m == 0 || bls::rank(Matrix::from_rows(f, rows)) == m) return mats;
  }
}

inline BilinearSystem random_system(const FieldSpec& f, std::size_t p, std::size_t q, std::size_t m, Rng& rng) {
  std::vector<Matrix> mats;
  for (std::size_t k = 0; k < m; ++k) mats.push_back(random_matrix(f, p, q, rng));
  return BilinearSystem(p, q, f, std::move(mats), random_vector(f, m, rng));
}

inline Matrix from_mask(const FieldSpec& f, const std::vector<std::vector<bool>>& mask, Rng& rng) {
  Matrix a(mask.size(), mask[0].size(), f);
  for (std::size_t i = 0; i < mask.size(); ++i)
    for (std::size_t j = 0; j < mask[i].size(); ++j)
      if (mask[i][j]) a(i, j) = small_scalar(f, rng);
  return a;
}

// 3-corner check straight from the definition: no 2 x 2 subpattern with
// three or more nonzero positions.
inline bool naive_three_corner(const std::vector<std::vector<bool>>& mask) {
  const std::size_t p = mask.size(), q = mask[0].size();
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = i + 1; k < p; ++k)
      for (std::size_t j = 0; j < q; ++j)
        for (std::size_t l = j + 1; l < q; ++l) {
          if (int(mask[i][j]) + mask[i][l] + mask[k][j] + mask[k][l] >= 3) return false;
        }
  return true;
}

inline std::vector<std::vector<bool>> mask_from_bits(std::size_t p, std::size_t q, std::uint64_t bits) {
  std::vector<std::vector<bool>> mask(p, std::vector<bool>(q, false));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) mask[i][j] = (bits >> (i * q + j)) & 1;
  return mask;
}

}  // namespace testing_support
