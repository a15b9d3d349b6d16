#pragma once

// Brute-force ground truth over GF(p). Works on raw residues and shares no
// code with the pencil solvers beyond reading the input system.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "bls/error.hpp"
#include "bls/field.hpp"
#include "bls/matrix.hpp"
#include "bls/system.hpp"

namespace bls {

namespace oracle_detail {

struct RawSystem {
  std::uint64_t n = 0;  // field size
  std::size_t p = 0, q = 0, m = 0;
  std::vector<std::vector<std::uint64_t>> a;  // a[k][i*q + j]
  std::vector<std::uint64_t> g;
};

inline RawSystem lower(const BilinearSystem& sys) {
  if (!sys.field().is_finite()) throw Error(Errc::InfiniteField, "the oracle needs GF(p)");
  RawSystem raw{sys.field().modulus(), sys.p(), sys.q(), sys.m(), {}, {}};
  for (const auto& mat : sys.matrices()) {
    std::vector<std::uint64_t> cells(sys.p() * sys.q());
    for (std::size_t i = 0; i < sys.p(); ++i)
      for (std::size_t j = 0; j < sys.q(); ++j) cells[i * sys.q() + j] = mat(i, j).residue();
    raw.a.push_back(std::move(cells));
  }
  for (const auto& g : sys.rhs()) raw.g.push_back(g.residue());
  return raw;
}

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t budget, const char* what) {
  std::uint64_t v = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (v > budget / base) {
      throw Error(Errc::BudgetExceeded, std::string(what) + " exceeds budget " + std::to_string(budget));
    }
    v *= base;
  }
  return v;
}

// Advances a base-n odometer (digit 0 fastest); false after the last vector.
inline bool next(std::vector<std::uint64_t>& v, std::uint64_t n) {
  for (auto& d : v) {
    if (++d < n) return true;
    d = 0;
  }
  return false;
}

// First nonzero entry is 1, or the vector is zero.
inline bool normalized(const std::vector<std::uint64_t>& v) {
  for (auto d : v) {
    if (d != 0) return d == 1;
  }
  return true;
}

inline bool all_zero(const std::vector<std::uint64_t>& v) {
  for (auto d : v)
    if (d != 0) return false;
  return true;
}

inline bool none_zero(const std::vector<std::uint64_t>& v) {
  for (auto d : v)
    if (d == 0) return false;
  return true;
}

// F(x, y) for every pair; visit(x, y, values).
template <class Visit>
void for_each_pair(const RawSystem& s, Visit visit) {
  std::vector<std::uint64_t> y(s.p, 0);
  std::vector<std::uint64_t> row(s.m * s.q);  // y^T A_k, flattened
  std::vector<std::uint64_t> val(s.m);
  do {
    for (std::size_t k = 0; k < s.m; ++k)
      for (std::size_t j = 0; j < s.q; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < s.p; ++i) acc = (acc + bls::detail::mul_mod(s.a[k][i * s.q + j], y[i], s.n)) % s.n;
        row[k * s.q + j] = acc;
      }
    std::vector<std::uint64_t> x(s.q, 0);
    do {
      for (std::size_t k = 0; k < s.m; ++k) {
        std::uint64_t acc = 0;
        for (std::size_t j = 0; j < s.q; ++j) acc = (acc + bls::detail::mul_mod(row[k * s.q + j], x[j], s.n)) % s.n;
        val[k] = acc;
      }
      visit(x, y, val);
    } while (next(x, s.n));
  } while (next(y, s.n));
}

inline Vector raise(const std::vector<std::uint64_t>& v, const FieldSpec& f) {
  Vector out;
  for (auto d : v) out.push_back(Scalar::residue(f, d));
  return out;
}

}  // namespace oracle_detail

/// Every solution class (x, y) ~ (t x, y / t) over GF(p), represented with
/// the first nonzero entry of y equal to 1 (of x when y = 0), sorted.
/// Throws BudgetExceeded when p^(p+q) exceeds `budget`.
inline std::vector<SolutionPair> brute_force_solve(const BilinearSystem& sys, SolutionMode mode = SolutionMode::Any,
                                                   std::uint64_t budget = 100'000'000) {
  const auto raw = oracle_detail::lower(sys);
  oracle_detail::checked_pow(raw.n, raw.p + raw.q, budget, "pair enumeration");
  const FieldSpec f = sys.field();
  std::vector<SolutionPair> out;
  oracle_detail::for_each_pair(raw, [&](const auto& x, const auto& y, const auto& val) {
    if (val != raw.g) return;
    if (!oracle_detail::normalized(y)) return;
    if (oracle_detail::all_zero(y) && !oracle_detail::normalized(x)) return;
    const bool nontrivial = !oracle_detail::all_zero(x) && !oracle_detail::all_zero(y);
    if (mode == SolutionMode::Nontrivial && !nontrivial) return;
    if (mode == SolutionMode::TotallyNonzero && !(oracle_detail::none_zero(x) && oracle_detail::none_zero(y))) return;
    out.push_back({oracle_detail::raise(x, f), oracle_detail::raise(y, f)});
  });
  std::sort(out.begin(), out.end());
  return out;
}

struct ImageReport {
  std::uint64_t field_size = 0;
  std::size_t p = 0, q = 0, m = 0;
  std::uint64_t attained = 0;
  std::uint64_t bound = 0;  // (N^q - 1)(N^p - 1)/(N - 1) + 1
  std::uint64_t total = 0;  // N^m
  bool bound_applies() const { return m >= p + q; }
  bool inequality_holds() const { return !bound_applies() || (attained <= bound && bound < total); }
};

namespace oracle_detail {

inline std::uint64_t encode(const std::vector<std::uint64_t>& v, std::uint64_t n) {
  std::uint64_t code = 0;
  for (auto d : v) code = code * n + d;  // first coordinate most significant
  return code;
}

inline std::unordered_set<std::uint64_t> image(const RawSystem& raw, std::uint64_t budget) {
  checked_pow(raw.n, raw.p + raw.q, budget, "pair enumeration");
  checked_pow(raw.n, raw.m, UINT64_MAX / raw.n, "image encoding");
  std::unordered_set<std::uint64_t> img;
  for_each_pair(raw, [&](const auto&, const auto&, const auto& val) { img.insert(encode(val, raw.n)); });
  return img;
}

}  // namespace oracle_detail

/// Exact size of the image of F(x, y) = (y^T A_k x)_k.
inline ImageReport image_cardinality(const BilinearSystem& sys, std::uint64_t budget = 100'000'000) {
  const auto raw = oracle_detail::lower(sys);
  const auto img = oracle_detail::image(raw, budget);
  ImageReport rep;
  rep.field_size = raw.n;
  rep.p = raw.p;
  rep.q = raw.q;
  rep.m = raw.m;
  rep.attained = img.size();
  const std::uint64_t nq = oracle_detail::checked_pow(raw.n, raw.q, UINT64_MAX, "bound");
  const std::uint64_t np = oracle_detail::checked_pow(raw.n, raw.p, UINT64_MAX, "bound");
  rep.bound = (nq - 1) * (np - 1) / (raw.n - 1) + 1;
  rep.total = oracle_detail::checked_pow(raw.n, raw.m, UINT64_MAX, "total");
  return rep;
}

struct AlwaysSolvableReport {
  bool always_solvable = false;
  std::optional<Vector> witness;  // lexicographically first unattained g
};

inline AlwaysSolvableReport always_solvable_exhaustive(const BilinearSystem& sys, std::uint64_t budget = 100'000'000) {
  const auto raw = oracle_detail::lower(sys);
  const auto img = oracle_detail::image(raw, budget);
  const std::uint64_t total = oracle_detail::checked_pow(raw.n, raw.m, budget, "rhs enumeration");
  AlwaysSolvableReport rep;
  // Codes put g_1 in the most significant digit, so increasing code is
  // lexicographic order on g.
  for (std::uint64_t code = 0; code < total; ++code) {
    if (img.count(code) != 0) continue;
    std::vector<std::uint64_t> g(raw.m);
    std::uint64_t c = code;
    for (std::size_t k = raw.m; k-- > 0;) {
      g[k] = c % raw.n;
      c /= raw.n;
    }
    rep.witness = oracle_detail::raise(g, sys.field());
    return rep;
  }
  rep.always_solvable = true;
  return rep;
}

}  // namespace bls
