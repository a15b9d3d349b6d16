#pragma once

// Always-solvable certificates and the constructive solvers behind them:
// m <= 2, the 3-corner property, and variable specialization. Also the
// line search used by the general solver over infinite fields.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bls/error.hpp"
#include "bls/field.hpp"
#include "bls/matrix.hpp"
#include "bls/poly.hpp"
#include "bls/reduction.hpp"
#include "bls/system.hpp"

namespace bls {

struct SupportPattern {
  std::size_t p = 0;
  std::size_t q = 0;
  std::vector<std::vector<bool>> mask;

  bool at(std::size_t i, std::size_t j) const { return mask.at(i).at(j); }
  std::size_t count() const {
    std::size_t n = 0;
    for (const auto& row : mask) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
    return n;
  }
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < q; ++j) out += mask[i][j] ? '*' : '0';
      if (i + 1 < p) out += '\n';
    }
    return out;
  }
  friend bool operator==(const SupportPattern&, const SupportPattern&) = default;
};

inline SupportPattern collective_support(const BilinearSystem& sys) {
  SupportPattern pat{sys.p(), sys.q(), std::vector<std::vector<bool>>(sys.p(), std::vector<bool>(sys.q(), false))};
  for (const auto& a : sys.matrices())
    for (std::size_t i = 0; i < sys.p(); ++i)
      for (std::size_t j = 0; j < sys.q(); ++j)
        if (!a(i, j).is_zero()) pat.mask[i][j] = true;
  return pat;
}

/// No 2 x 2 submask has three or more entries set.
inline bool has_three_corner_property(const SupportPattern& pat) {
  for (std::size_t i = 0; i < pat.p; ++i)
    for (std::size_t k = i + 1; k < pat.p; ++k)
      for (std::size_t j = 0; j < pat.q; ++j)
        for (std::size_t l = j + 1; l < pat.q; ++l) {
          const int n = pat.mask[i][j] + pat.mask[i][l] + pat.mask[k][j] + pat.mask[k][l];
          if (n >= 3) return false;
        }
  return true;
}

/// A partial assignment of the unknowns after which every equation is linear
/// in the remaining ones: coefficients * u = g - constants.
struct Specialization {
  enum class Kind { FullY, FullX, Mixed, ThreeCorner };
  Kind kind = Kind::Mixed;
  std::vector<std::optional<Scalar>> x_fixed;  // length q
  std::vector<std::optional<Scalar>> y_fixed;  // length p
  std::vector<std::string> unknowns;           // column labels, e.g. "x1", "y2"
  Matrix coefficients;                         // m x |unknowns|
  Vector constants;                            // length m
  bool g_independent = false;                  // rank(coefficients) = m: solvable for every g

  std::string describe() const {
    std::string out;
    auto add = [&](const std::string& name, const std::optional<Scalar>& v) {
      if (!v) return;
      if (!out.empty()) out += ", ";
      out += name + "=" + v->to_string();
    };
    for (std::size_t j = 0; j < x_fixed.size(); ++j) add("x" + std::to_string(j + 1), x_fixed[j]);
    for (std::size_t i = 0; i < y_fixed.size(); ++i) add("y" + std::to_string(i + 1), y_fixed[i]);
    return out;
  }
};

inline std::string to_string(Specialization::Kind k) {
  switch (k) {
    case Specialization::Kind::FullY: return "full-y";
    case Specialization::Kind::FullX: return "full-x";
    case Specialization::Kind::Mixed: return "mixed";
    case Specialization::Kind::ThreeCorner: return "three-corner";
  }
  return "?";
}

/// The linear system left after fixing the given unknowns, or nullopt when
/// some dyad with a nonzero coefficient has both factors free.
inline std::optional<Specialization> specialize(const BilinearSystem& sys,
                                                const std::vector<std::optional<Scalar>>& x_fixed,
                                                const std::vector<std::optional<Scalar>>& y_fixed) {
  if (x_fixed.size() != sys.q() || y_fixed.size() != sys.p()) {
    throw Error(Errc::DimensionMismatch, "specialization arity");
  }
  const FieldSpec f = sys.field();
  const SupportPattern pat = collective_support(sys);
  std::vector<std::size_t> x_col(sys.q(), SIZE_MAX);
  std::vector<std::size_t> y_col(sys.p(), SIZE_MAX);
  Specialization spec;
  spec.x_fixed = x_fixed;
  spec.y_fixed = y_fixed;
  for (std::size_t i = 0; i < sys.p(); ++i)
    for (std::size_t j = 0; j < sys.q(); ++j) {
      if (!pat.mask[i][j]) continue;
      if (!x_fixed[j] && !y_fixed[i]) return std::nullopt;
      if (!x_fixed[j] && x_col[j] == SIZE_MAX) x_col[j] = 0;
      if (!y_fixed[i] && y_col[i] == SIZE_MAX) y_col[i] = 0;
    }
  std::size_t n = 0;
  for (std::size_t j = 0; j < sys.q(); ++j) {
    if (x_col[j] != SIZE_MAX) {
      x_col[j] = n++;
      spec.unknowns.push_back("x" + std::to_string(j + 1));
    }
  }
  for (std::size_t i = 0; i < sys.p(); ++i) {
    if (y_col[i] != SIZE_MAX) {
      y_col[i] = n++;
      spec.unknowns.push_back("y" + std::to_string(i + 1));
    }
  }
  spec.coefficients = Matrix(sys.m(), n, f);
  spec.constants = zero_vector(sys.m(), f);
  for (std::size_t k = 0; k < sys.m(); ++k)
    for (std::size_t i = 0; i < sys.p(); ++i)
      for (std::size_t j = 0; j < sys.q(); ++j) {
        const Scalar& a = sys.matrix(k)(i, j);
        if (a.is_zero()) continue;
        if (x_fixed[j] && y_fixed[i]) {
          spec.constants[k] += a * *x_fixed[j] * *y_fixed[i];
        } else if (y_fixed[i]) {
          spec.coefficients(k, x_col[j]) += a * *y_fixed[i];
        } else {
          spec.coefficients(k, y_col[i]) += a * *x_fixed[j];
        }
      }
  spec.g_independent = rank(spec.coefficients) == sys.m();
  return spec;
}

namespace detail {

// Unknowns u in column order back into (x, y); unspecified and unused
// coordinates default to zero.
inline SolutionPair assemble_pair(const BilinearSystem& sys, const Specialization& spec, const Vector& u) {
  const FieldSpec f = sys.field();
  SolutionPair s{zero_vector(sys.q(), f), zero_vector(sys.p(), f)};
  std::size_t col = 0;
  for (std::size_t j = 0; j < sys.q(); ++j) {
    if (spec.x_fixed[j]) {
      s.x[j] = *spec.x_fixed[j];
    } else if (col < spec.unknowns.size() && spec.unknowns[col] == "x" + std::to_string(j + 1)) {
      s.x[j] = u[col++];
    }
  }
  for (std::size_t i = 0; i < sys.p(); ++i) {
    if (spec.y_fixed[i]) {
      s.y[i] = *spec.y_fixed[i];
    } else if (col < spec.unknowns.size() && spec.unknowns[col] == "y" + std::to_string(i + 1)) {
      s.y[i] = u[col++];
    }
  }
  return s;
}

// Tries the particular solution and then deterministic pseudo-random kernel
// combinations until `make(u)` is accepted by the mode.
template <class Make>
std::optional<SolutionPair> accepted_point(const LinearSolution& sol, SolutionMode mode, Make make,
                                           std::size_t attempts = 64) {
  SolutionPair first = make(sol.particular);
  if (accepts(mode, first)) return first;
  if (sol.kernel.empty()) return std::nullopt;
  const FieldSpec f = sol.particular.empty() ? FieldSpec{} : sol.particular.front().field();
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (std::size_t a = 0; a < attempts; ++a) {
    Vector u = sol.particular;
    for (const auto& k : sol.kernel) u = u + Scalar::from_int(f, coef(rng)) * k;
    SolutionPair s = make(u);
    if (accepts(mode, s)) return s;
  }
  return std::nullopt;
}

}  // namespace detail

/// Solves the specialized linear system for the system's own rhs.
inline std::optional<SolutionPair> solve_specialization(const BilinearSystem& sys, const Specialization& spec,
                                                        SolutionMode mode = SolutionMode::Any) {
  const auto sol = solve_linear(spec.coefficients, sys.rhs() - spec.constants);
  if (!sol) return std::nullopt;
  return detail::accepted_point(*sol, mode, [&](const Vector& u) { return detail::assemble_pair(sys, spec, u); });
}

/// Theorem-of-the-3-corner construction: y_i = 1 for rows holding two or
/// more support entries, x_j = 1 for such columns, y_i = 1 for isolated
/// entries. Throws NotThreeCorner or SingularAfterSpecialization.
inline Specialization three_corner_specialization(const BilinearSystem& sys) {
  const SupportPattern pat = collective_support(sys);
  if (!has_three_corner_property(pat)) throw Error(Errc::NotThreeCorner, "support has a 2 x 2 subpattern with 3 entries");
  const FieldSpec f = sys.field();
  std::vector<std::optional<Scalar>> xf(sys.q());
  std::vector<std::optional<Scalar>> yf(sys.p());
  std::vector<std::size_t> row_count(sys.p(), 0);
  std::vector<std::size_t> col_count(sys.q(), 0);
  for (std::size_t i = 0; i < sys.p(); ++i)
    for (std::size_t j = 0; j < sys.q(); ++j)
      if (pat.mask[i][j]) {
        ++row_count[i];
        ++col_count[j];
      }
  for (std::size_t i = 0; i < sys.p(); ++i)
    for (std::size_t j = 0; j < sys.q(); ++j) {
      if (!pat.mask[i][j]) continue;
      if (row_count[i] >= 2) {
        yf[i] = Scalar::one(f);
      } else if (col_count[j] >= 2) {
        xf[j] = Scalar::one(f);
      } else {
        yf[i] = Scalar::one(f);
      }
    }
  auto spec = specialize(sys, xf, yf);
  if (!spec || !spec->g_independent) {
    throw Error(Errc::SingularAfterSpecialization, "3-corner specialization is not of full row rank");
  }
  spec->kind = Specialization::Kind::ThreeCorner;
  return *spec;
}

inline SolutionPair solve_three_corner(const BilinearSystem& sys) {
  const Specialization spec = three_corner_specialization(sys);
  auto s = solve_specialization(sys, spec);
  if (!s || !solves(sys, *s)) throw Error(Errc::SingularAfterSpecialization, "3-corner construction failed");
  return *s;
}

/// Constructive proof for m <= 2. Throws DependentMatrices unless the A_i are
/// linearly independent.
inline SolutionPair solve_m2(const BilinearSystem& sys) {
  const FieldSpec f = sys.field();
  if (sys.m() > 2) throw Error(Errc::DimensionMismatch, "solve_m2 needs m <= 2");
  if (rank(stack(sys)) != sys.m()) throw Error(Errc::DependentMatrices, "coefficient matrices are dependent");
  if (sys.m() == 0 || sys.is_homogeneous()) return {zero_vector(sys.q(), f), unit_vector(sys.p(), 0, f)};
  if (sys.m() == 1) {
    const Matrix& a = sys.matrix(0);
    for (std::size_t i = 0; i < sys.p(); ++i)
      for (std::size_t j = 0; j < sys.q(); ++j) {
        if (a(i, j).is_zero()) continue;
        return {(sys.rhs()[0] / a(i, j)) * unit_vector(sys.q(), j, f), unit_vector(sys.p(), i, f)};
      }
  }
  const RhsNormalization norm = normalize_rhs(sys);
  const Matrix& a1 = norm.system.matrix(0);
  const Matrix& a2 = norm.system.matrix(1);

  std::vector<Vector> candidates = nullspace(a2);
  const Echelon e = rref(a2);
  std::vector<Vector> completion;
  for (auto c : e.pivots) completion.push_back(unit_vector(sys.q(), c, f));
  candidates.insert(candidates.end(), completion.begin(), completion.end());
  for (std::size_t a = 0; a < completion.size(); ++a)
    for (std::size_t b = a + 1; b < completion.size(); ++b) candidates.push_back(completion[a] + completion[b]);

  for (const auto& xs : candidates) {
    const Vector u = a1 * xs;
    const Vector v = a2 * xs;
    const auto y = solve_linear(Matrix::from_rows(f, {v, u}), {Scalar::zero(f), Scalar::one(f)});
    if (!y) continue;
    SolutionPair s{xs, y->particular};
    if (!solves(sys, s)) throw Error(Errc::SingularAfterSpecialization, "m <= 2 construction lost the solution");
    return s;
  }
  throw Error(Errc::DependentMatrices, "no candidate x* separates A_1 x* from A_2 x*");
}

namespace detail {

// Small scalars used to build candidate vectors over infinite fields.
inline std::vector<Scalar> small_pool(const FieldSpec& f, bool nonzero_only) {
  std::vector<Scalar> out;
  if (f.is_finite()) {
    for (const Scalar& t : enumerate_field(f)) {
      if (!nonzero_only || !t.is_zero()) out.push_back(t);
    }
    return out;
  }
  for (long long v : {0, 1, -1, 2, -2}) {
    if (nonzero_only && v == 0) continue;
    out.push_back(Scalar::from_int(f, v));
  }
  if (f.kind() == FieldKind::GaussianRationals) {
    for (const auto& [re, im] : std::vector<std::pair<int, int>>{{0, 1}, {0, -1}, {1, 1}, {1, -1}}) {
      out.push_back(Scalar::gaussian(re, im));
    }
  }
  return out;
}

// Calls visit(v) for every vector over `pool` (odometer order) until it
// returns true or `limit` vectors were visited.
template <class Visit>
bool for_each_vector(std::size_t n, const std::vector<Scalar>& pool, std::uint64_t limit, Visit visit) {
  std::vector<std::size_t> idx(n, 0);
  for (std::uint64_t count = 0; count < limit; ++count) {
    Vector v;
    v.reserve(n);
    for (auto k : idx) v.push_back(pool[k]);
    if (visit(v)) return true;
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == pool.size()) idx[pos++] = 0;
    if (pos == n) return false;
  }
  return false;
}

}  // namespace detail

struct SpecializationOptions {
  std::size_t max_subset = 0;       // 0: all subset sizes up to p + q
  std::uint64_t max_candidates = 20000;
  SolutionMode mode = SolutionMode::Any;
  bool require_witness = false;     // only accept g-independent assignments
};

struct SpecializationResult {
  Specialization witness;
  std::optional<SolutionPair> solution;  // for the system's own rhs
};

/// Full-y, full-x, then mixed subsets of unknowns fixed to 1. Returns the
/// first g-independent witness; failing that, the first assignment that
/// solves the system for its own rhs (unless require_witness).
inline std::optional<SpecializationResult> specialization_search(const BilinearSystem& sys,
                                                                 const SpecializationOptions& opts = {}) {
  const FieldSpec f = sys.field();
  std::optional<SpecializationResult> fallback;
  auto consider = [&](Specialization spec) -> bool {
    auto sol = solve_specialization(sys, spec, opts.mode);
    if (spec.g_independent) {
      fallback = SpecializationResult{std::move(spec), std::move(sol)};
      return true;
    }
    if (!opts.require_witness && sol && !fallback) fallback = SpecializationResult{std::move(spec), std::move(sol)};
    return false;
  };

  const bool tn = opts.mode == SolutionMode::TotallyNonzero;
  const auto pool = detail::small_pool(f, tn);
  if (sys.m() <= sys.q()) {
    const bool hit = detail::for_each_vector(sys.p(), pool, opts.max_candidates, [&](const Vector& y) {
      if (is_zero(y)) return false;
      std::vector<std::optional<Scalar>> yf(y.begin(), y.end());
      auto spec = specialize(sys, std::vector<std::optional<Scalar>>(sys.q()), yf);
      spec->kind = Specialization::Kind::FullY;
      return consider(std::move(*spec));
    });
    if (hit) return fallback;
  }
  if (sys.m() <= sys.p()) {
    const bool hit = detail::for_each_vector(sys.q(), pool, opts.max_candidates, [&](const Vector& x) {
      if (is_zero(x)) return false;
      std::vector<std::optional<Scalar>> xf(x.begin(), x.end());
      auto spec = specialize(sys, xf, std::vector<std::optional<Scalar>>(sys.p()));
      spec->kind = Specialization::Kind::FullX;
      return consider(std::move(*spec));
    });
    if (hit) return fallback;
  }

  const std::size_t n = sys.p() + sys.q();
  const std::size_t max_size = opts.max_subset == 0 ? n : std::min(opts.max_subset, n);
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<bool> choose(n, false);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<std::optional<Scalar>> xf(sys.q());
      std::vector<std::optional<Scalar>> yf(sys.p());
      for (std::size_t v = 0; v < n; ++v) {
        if (!choose[v]) continue;
        if (v < sys.q()) {
          xf[v] = Scalar::one(f);
        } else {
          yf[v - sys.q()] = Scalar::one(f);
        }
      }
      if (auto spec = specialize(sys, xf, yf)) {
        spec->kind = Specialization::Kind::Mixed;
        if (consider(std::move(*spec))) return fallback;
      }
    } while (std::prev_permutation(choose.begin(), choose.end()));
  }
  return fallback;
}

namespace detail {

// Searches y(t) = base + t e_j for t making Y(y(t)) x = g solvable (or
// singular, for homogeneous systems). Returns the first accepted pair.
inline std::optional<SolutionPair> y_line_search(const BilinearSystem& sys, SolutionMode mode, std::size_t max_lines) {
  const FieldSpec f = sys.field();
  const bool homogeneous = sys.is_homogeneous();
  const bool tn = mode == SolutionMode::TotallyNonzero;
  const auto pool = small_pool(f, tn);
  std::vector<Scalar> samples;
  for (long long v : {7, -5, 11, 4}) samples.push_back(Scalar::from_int(f, v));
  std::size_t lines = 0;

  auto attempt = [&](const Vector& y) -> std::optional<SolutionPair> {
    if (is_zero(y)) return std::nullopt;
    const Matrix ym = assemble_Y(sys, y);
    const auto sol = solve_linear(ym, sys.rhs());
    if (!sol) return std::nullopt;
    LinearSolution use = *sol;
    if (homogeneous && mode != SolutionMode::Any) {
      if (use.kernel.empty()) return std::nullopt;
      use.particular = use.kernel.front();
    }
    return accepted_point(use, mode, [&](const Vector& x) { return SolutionPair{x, y}; });
  };

  for (std::size_t j = 0; j < sys.p(); ++j) {
    std::optional<SolutionPair> found;
    for_each_vector(sys.p() - 1, pool, max_lines, [&](const Vector& rest) {
      if (lines++ >= max_lines) return true;
      Vector base = zero_vector(sys.p(), f);
      for (std::size_t k = 0, s = 0; k < sys.p(); ++k) {
        if (k != j) base[k] = rest[s++];
      }
      const Vector dir = unit_vector(sys.p(), j, f);
      auto y_at = [&](const Scalar& t) { return base + t * dir; };

      std::size_t rho = 0;
      Scalar t0 = samples.front();
      for (const auto& t : samples) {
        const std::size_t rk = rank(assemble_Y(sys, y_at(t)));
        if (rk > rho) {
          rho = rk;
          t0 = t;
        }
      }
      const Matrix y0 = assemble_Y(sys, y_at(t0));
      std::vector<std::size_t> rows;
      std::vector<std::size_t> cols;
      bool with_g = false;
      if (!homogeneous) {
        Matrix aug(sys.m(), sys.q() + 1, f);
        for (std::size_t r = 0; r < sys.m(); ++r) {
          for (std::size_t c = 0; c < sys.q(); ++c) aug(r, c) = y0(r, c);
          aug(r, sys.q()) = sys.rhs()[r];
        }
        if (rank(aug) == rho) {
          found = attempt(y_at(t0));
          return found.has_value();
        }
        rows = rref(aug.transpose()).pivots;
        cols = rref(y0).pivots;
        with_g = true;
      } else {
        if (mode == SolutionMode::Any) return false;
        if (rho < sys.q()) {
          found = attempt(y_at(t0));
          return found.has_value();
        }
        rows = rref(y0.transpose()).pivots;
        for (std::size_t c = 0; c < sys.q(); ++c) cols.push_back(c);
      }
      const std::size_t size = cols.size() + (with_g ? 1 : 0);
      auto minor_at = [&](const Scalar& t) {
        const Matrix yt = assemble_Y(sys, y_at(t));
        Matrix sub(size, size, f);
        for (std::size_t r = 0; r < size; ++r) {
          for (std::size_t c = 0; c < cols.size(); ++c) sub(r, c) = yt(rows[r], cols[c]);
          if (with_g) sub(r, cols.size()) = sys.rhs()[rows[r]];
        }
        return determinant(sub);
      };
      Vector nodes;
      Vector values;
      for (std::size_t k = 0; k <= size; ++k) {
        nodes.push_back(Scalar::from_int(f, static_cast<long long>(k)));
        values.push_back(minor_at(nodes.back()));
      }
      const UniPoly poly = UniPoly::interpolate(nodes, values);
      if (poly.is_zero()) return false;
      const auto roots = field_roots(poly);
      if (!roots) return false;
      for (const auto& t : *roots) {
        if ((found = attempt(y_at(t)))) return true;
      }
      return false;
    });
    if (found) return found;
    if (lines >= max_lines) break;
  }
  return std::nullopt;
}

}  // namespace detail

/// Heuristic search along lines in y-space and then x-space. Complete along
/// each line it visits; the set of lines is finite, so absence proves nothing.
inline std::optional<SolutionPair> line_search(const BilinearSystem& sys, SolutionMode mode = SolutionMode::Any,
                                               std::size_t max_lines = 400) {
  if (auto s = detail::y_line_search(sys, mode, max_lines)) return s;
  if (auto s = detail::y_line_search(transposed(sys), mode, max_lines)) return SolutionPair{s->y, s->x};
  return std::nullopt;
}

struct AlwaysSolvableCertificate {
  enum class Verdict { Yes, ViolatesBound, Unknown };
  enum class Witness { None, MLE2, ThreeCorner, Specialization };
  Verdict verdict = Verdict::Unknown;
  Witness witness = Witness::None;
  std::optional<bls::Specialization> specialization;  // for ThreeCorner and Specialization

  std::string to_string() const {
    switch (verdict) {
      case Verdict::ViolatesBound: return "NO (m ≥ p+q)";
      case Verdict::Unknown: return "UNKNOWN (no structural witness)";
      case Verdict::Yes: break;
    }
    switch (witness) {
      case Witness::MLE2: return "YES (m ≤ 2)";
      case Witness::ThreeCorner: return "YES (3-corner property)";
      case Witness::Specialization: return "YES (specialization: " + specialization->describe() + ")";
      case Witness::None: break;
    }
    return "YES";
  }
};

/// Bound, then m <= 2, then the 3-corner property, then a g-independent
/// specialization. The matrices must be linearly independent.
inline AlwaysSolvableCertificate certify_always_solvable(const BilinearSystem& sys,
                                                         const SpecializationOptions& opts = {}) {
  using C = AlwaysSolvableCertificate;
  if (rank(stack(sys)) != sys.m()) throw Error(Errc::DependentMatrices, "certificates need independent matrices");
  if (sys.m() >= sys.p() + sys.q()) return {C::Verdict::ViolatesBound, C::Witness::None, std::nullopt};
  if (sys.m() <= 2) return {C::Verdict::Yes, C::Witness::MLE2, std::nullopt};
  if (has_three_corner_property(collective_support(sys))) {
    return {C::Verdict::Yes, C::Witness::ThreeCorner, three_corner_specialization(sys)};
  }
  SpecializationOptions o = opts;
  o.require_witness = true;
  o.mode = SolutionMode::Any;
  if (auto r = specialization_search(sys, o); r && r->witness.g_independent) {
    return {C::Verdict::Yes, C::Witness::Specialization, r->witness};
  }
  return {C::Verdict::Unknown, C::Witness::None, std::nullopt};
}

}  // namespace bls
