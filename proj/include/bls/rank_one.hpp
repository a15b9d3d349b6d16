#pragma once

// Rank-one points of an affine pencil. K(z) has rank <= 1 iff every 2 x 2
// minor vanishes, so the minors are the polynomial system to solve.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bls/error.hpp"
#include "bls/field.hpp"
#include "bls/matrix.hpp"
#include "bls/pencil.hpp"
#include "bls/poly.hpp"
#include "bls/system.hpp"

namespace bls {

struct MinorIndex {
  std::size_t row1, row2, col1, col2;
};

/// Minor positions in lexicographic (row pair, column pair) order.
inline std::vector<MinorIndex> minor_indices(std::size_t p, std::size_t q) {
  std::vector<MinorIndex> out;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t k = i + 1; k < p; ++k)
      for (std::size_t j = 0; j < q; ++j)
        for (std::size_t l = j + 1; l < q; ++l) out.push_back({i, k, j, l});
  return out;
}

inline AffineForm pencil_entry(const AffinePencil& pencil, std::size_t i, std::size_t j) {
  AffineForm a{pencil.k0(i, j), zero_vector(pencil.r(), pencil.field)};
  for (std::size_t k = 0; k < pencil.r(); ++k) a.coeffs[k] = pencil.basis[k](i, j);
  return a;
}

/// One quadratic per 2 x 2 minor of K(z); empty when p or q is 1.
inline std::vector<QuadPoly> minor_system(const AffinePencil& pencil) {
  std::vector<QuadPoly> out;
  for (const auto& mi : minor_indices(pencil.p, pencil.q)) {
    const auto a = pencil_entry(pencil, mi.row1, mi.col1);
    const auto b = pencil_entry(pencil, mi.row1, mi.col2);
    const auto c = pencil_entry(pencil, mi.row2, mi.col1);
    const auto d = pencil_entry(pencil, mi.row2, mi.col2);
    out.push_back(QuadPoly::product(a, d) - QuadPoly::product(b, c));
  }
  return out;
}

inline std::size_t exact_rank(const Matrix& m) { return rank(m); }

/// K = y x^T with y the first nonzero column of K scaled so its first
/// nonzero entry is 1. Throws NotRankOne unless rank K = 1.
inline SolutionPair factor_rank_one(const Matrix& k) {
  if (exact_rank(k) != 1) throw Error(Errc::NotRankOne, "matrix does not have rank one");
  std::size_t col = 0;
  while (bls::is_zero(k.col(col))) ++col;
  Vector y = k.col(col);
  std::size_t lead = 0;
  while (y[lead].is_zero()) ++lead;
  y = y[lead].inverse() * y;
  return {k.row(lead), std::move(y)};
}

enum class OutcomeStatus { Solutions, NoSolution, Undecided };

enum class CertificateKind {
  None,
  InconsistentReduction,
  R1NoCommonRoot,
  ConstantMinorNonzero,
  ExhaustedFiniteField,
  NoAcceptedSolution,  // the complete solution set is known and the mode rejects all of it
  GeneralRTooLarge,
  HeuristicsFailed,
};

inline std::string to_string(OutcomeStatus s) {
  switch (s) {
    case OutcomeStatus::Solutions: return "Solutions";
    case OutcomeStatus::NoSolution: return "NoSolution";
    case OutcomeStatus::Undecided: return "Undecided";
  }
  return "?";
}

inline std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::None: return "None";
    case CertificateKind::InconsistentReduction: return "InconsistentReduction";
    case CertificateKind::R1NoCommonRoot: return "R1NoCommonRoot";
    case CertificateKind::ConstantMinorNonzero: return "ConstantMinorNonzero";
    case CertificateKind::ExhaustedFiniteField: return "ExhaustedFiniteField";
    case CertificateKind::NoAcceptedSolution: return "NoAcceptedSolution";
    case CertificateKind::GeneralRTooLarge: return "GeneralRTooLarge";
    case CertificateKind::HeuristicsFailed: return "HeuristicsFailed";
  }
  return "?";
}

struct Certificate {
  CertificateKind kind = CertificateKind::None;
  std::string summary;
  std::vector<QuadPoly> polynomials;  // minors in the pencil parameters
  std::vector<Scalar> discriminants;
  std::optional<MinorIndex> minor;    // the offending minor for ConstantMinorNonzero
  std::vector<std::string> notes;
};

struct SolverOutcome {
  OutcomeStatus status = OutcomeStatus::Undecided;
  std::vector<SolutionPair> solutions;  // canonical, sorted
  Certificate certificate;
  std::optional<AffinePencil> pencil;   // parameter space the certificate refers to

  bool solved() const { return status == OutcomeStatus::Solutions; }
};

/// Every class of trivial solutions (x = 0 or y = 0) over GF(p), or one
/// representative of each kind when the field is infinite or the count
/// exceeds `limit`.
inline std::vector<SolutionPair> trivial_solutions(std::size_t p, std::size_t q, const FieldSpec& f,
                                                   std::uint64_t limit = 200000) {
  auto projective_points = [&](std::size_t n) {
    std::vector<Vector> pts;
    const std::uint64_t size = f.is_finite() ? f.modulus() : 0;
    double count = 0;
    if (size != 0) {
      for (std::size_t lead = 0; lead < n; ++lead) count += std::pow(static_cast<double>(size), n - lead - 1);
    }
    if (size == 0 || count > static_cast<double>(limit)) {
      pts.push_back(unit_vector(n, 0, f));
      return pts;
    }
    for (std::size_t lead = 0; lead < n; ++lead) {
      const std::size_t tail = n - lead - 1;
      std::vector<std::uint64_t> digits(tail, 0);
      while (true) {
        Vector v = zero_vector(n, f);
        v[lead] = Scalar::one(f);
        for (std::size_t t = 0; t < tail; ++t) v[lead + 1 + t] = Scalar::residue(f, digits[t]);
        pts.push_back(std::move(v));
        std::size_t pos = 0;
        while (pos < tail && ++digits[pos] == size) digits[pos++] = 0;
        if (pos == tail) break;
      }
    }
    return pts;
  };
  std::vector<SolutionPair> out;
  out.push_back({zero_vector(q, f), zero_vector(p, f)});
  for (auto& y : projective_points(p)) out.push_back({zero_vector(q, f), std::move(y)});
  for (auto& x : projective_points(q)) out.push_back({std::move(x), zero_vector(p, f)});
  return canonical_set(std::move(out));
}

inline bool pencil_contains_zero(const AffinePencil& pencil) {
  return in_span(detail::vec_all(pencil.basis), vec(pencil.k0));
}

namespace detail {

// Filters `found` by mode, adds trivial classes for homogeneous systems in
// mode Any, and settles the status. `complete` means `found` lists every
// nontrivial class, so an empty filtered result is a proof of absence.
inline SolverOutcome finish(const AffinePencil& pencil, std::vector<SolutionPair> found, SolutionMode mode,
                            bool complete, Certificate if_none) {
  SolverOutcome out;
  out.pencil = pencil;
  if (mode == SolutionMode::Any && pencil_contains_zero(pencil)) {
    for (auto& t : trivial_solutions(pencil.p, pencil.q, pencil.field)) found.push_back(std::move(t));
  }
  std::vector<SolutionPair> kept;
  for (auto& s : found) {
    if (accepts(mode, s)) kept.push_back(std::move(s));
  }
  kept = canonical_set(std::move(kept));
  if (!kept.empty()) {
    out.status = OutcomeStatus::Solutions;
    out.solutions = std::move(kept);
    out.certificate.notes = std::move(if_none.notes);
    return out;
  }
  if (!complete) {
    out.status = OutcomeStatus::Undecided;
    out.certificate.kind = CertificateKind::HeuristicsFailed;
    out.certificate.summary = "rank-one points exist but none found was accepted by mode " + to_string(mode);
    return out;
  }
  out.status = OutcomeStatus::NoSolution;
  if (!found.empty()) {
    if_none.kind = CertificateKind::NoAcceptedSolution;
    if_none.summary = std::to_string(found.size()) + " solution classes exist but none is accepted by mode " +
                      to_string(mode);
  } else if (if_none.kind == CertificateKind::None) {
    if_none.kind = CertificateKind::NoAcceptedSolution;
    if (if_none.summary.empty()) if_none.summary = "only trivial solutions exist";
  }
  out.certificate = std::move(if_none);
  return out;
}

inline std::optional<MinorIndex> constant_nonzero_minor(const std::vector<QuadPoly>& minors, std::size_t p,
                                                        std::size_t q) {
  const auto idx = minor_indices(p, q);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    if (minors[k].degree() == 0) return idx[k];
  }
  return std::nullopt;
}

inline std::string minor_label(const MinorIndex& mi) {
  return "rows " + std::to_string(mi.row1 + 1) + "," + std::to_string(mi.row2 + 1) + " cols " +
         std::to_string(mi.col1 + 1) + "," + std::to_string(mi.col2 + 1);
}

}  // namespace detail

/// r = 0: the pencil is the single matrix K0.
inline SolverOutcome solve_complete(const AffinePencil& pencil, SolutionMode mode = SolutionMode::Any) {
  if (pencil.r() != 0) throw Error(Errc::DimensionMismatch, "solve_complete needs r = 0");
  std::vector<SolutionPair> found;
  Certificate none;
  const std::size_t rk = exact_rank(pencil.k0);
  if (rk == 1) {
    found.push_back(factor_rank_one(pencil.k0));
  } else if (rk >= 2) {
    const auto minors = minor_system(pencil);
    none.kind = CertificateKind::ConstantMinorNonzero;
    none.minor = detail::constant_nonzero_minor(minors, pencil.p, pencil.q);
    none.polynomials = minors;
    none.summary = "K0 has rank " + std::to_string(rk) + "; minor " + detail::minor_label(*none.minor) + " is nonzero";
  } else {
    none.summary = "K0 = 0: only trivial solutions";
  }
  return detail::finish(pencil, std::move(found), mode, true, std::move(none));
}

namespace detail {

// Small sample of parameter values for pencils whose every point has rank <= 1.
inline std::vector<Scalar> sample_values(const FieldSpec& f) {
  std::vector<Scalar> out;
  if (f.is_finite()) {
    for (const Scalar& t : enumerate_field(f)) out.push_back(t);
    return out;
  }
  for (long long v : {0, 1, -1, 2, -2, 3, -3}) out.push_back(Scalar::from_int(f, v));
  return out;
}

}  // namespace detail

/// r = 1: K(z) = G + z H. Constant minors must vanish; every candidate root
/// of the lowest-degree nonconstant minor is checked against all minors and
/// by exact rank.
inline SolverOutcome solve_r1(const AffinePencil& pencil, SolutionMode mode = SolutionMode::Any) {
  if (pencil.r() != 1) throw Error(Errc::DimensionMismatch, "solve_r1 needs r = 1");
  const FieldSpec f = pencil.field;
  const auto minors = minor_system(pencil);
  const auto idx = minor_indices(pencil.p, pencil.q);
  Certificate cert;
  cert.polynomials = minors;

  const std::size_t rg = exact_rank(pencil.k0);
  const std::size_t rh = exact_rank(pencil.basis[0]);
  cert.notes.push_back("rank G = " + std::to_string(rg) + ", rank H = " + std::to_string(rh) +
                       (rg > rh + 1 || rh > rg + 1 ? " (screen fails unless the root is z = 0)" : ""));

  if (auto bad = detail::constant_nonzero_minor(minors, pencil.p, pencil.q)) {
    cert.kind = CertificateKind::ConstantMinorNonzero;
    cert.minor = bad;
    cert.summary = "minor " + detail::minor_label(*bad) + " is a nonzero constant";
    return detail::finish(pencil, {}, mode, true, std::move(cert));
  }

  std::optional<std::size_t> generator;
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const int d = minors[k].degree();
    if (d >= 1 && (!generator || d < minors[*generator].degree())) generator = k;
  }

  std::vector<SolutionPair> found;
  auto take = [&](const Scalar& z) {
    const Matrix k = pencil_eval(pencil, {z});
    if (exact_rank(k) == 1) found.push_back(factor_rank_one(k));
  };

  if (!generator) {
    // Every minor vanishes identically: each K(z) has rank <= 1.
    for (const Scalar& z : detail::sample_values(f)) take(z);
    if (!f.is_finite()) cert.notes.push_back("all minors vanish identically; solutions are samples of a family");
    return detail::finish(pencil, std::move(found), mode, f.is_finite(), std::move(cert));
  }

  const UniPoly gen = UniPoly::from_quad(minors[*generator]);
  if (auto disc = gen.discriminant()) cert.discriminants.push_back(*disc);
  const auto roots = quadratic_roots(gen);
  for (const Scalar& z : roots) {
    const bool common = std::all_of(minors.begin(), minors.end(), [&](const QuadPoly& m) {
      return m.evaluate({z}).is_zero();
    });
    if (common) take(z);
  }
  cert.kind = CertificateKind::R1NoCommonRoot;
  cert.summary = "generator minor " + detail::minor_label(idx[*generator]) + ": " + gen.to_string();
  if (roots.empty()) {
    cert.summary += cert.discriminants.empty() ? " has no root" : "; discriminant " + cert.discriminants.front().to_string() +
                                                                        " has no square root in " + f.to_string();
  } else {
    cert.summary += "; no root is common to all minors with rank K(z) = 1";
  }
  return detail::finish(pencil, std::move(found), mode, true, std::move(cert));
}

namespace detail {

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

}  // namespace detail

/// Exhaustive search over z in GF(p)^r. Throws BudgetExceeded when p^r
/// exceeds `budget` evaluations.
inline SolverOutcome solve_finite_field(const AffinePencil& pencil, std::uint64_t budget = 10'000'000,
                                        SolutionMode mode = SolutionMode::Any) {
  const FieldSpec f = pencil.field;
  if (!f.is_finite()) throw Error(Errc::InfiniteField, "solve_finite_field needs GF(p)");
  const std::uint64_t n = f.modulus();
  const std::size_t r = pencil.r();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < r; ++k) {
    if (total > budget / n) {
      throw Error(Errc::BudgetExceeded, std::to_string(n) + "^" + std::to_string(r) + " parameter points exceed budget " +
                                            std::to_string(budget));
    }
    total *= n;
  }

  const std::size_t p = pencil.p;
  const std::size_t q = pencil.q;
  const std::size_t cells = p * q;
  std::vector<std::uint64_t> k0(cells);
  std::vector<std::vector<std::uint64_t>> basis(r, std::vector<std::uint64_t>(cells));
  for (std::size_t c = 0; c < cells; ++c) {
    k0[c] = pencil.k0(c / q, c % q).residue();
    for (std::size_t k = 0; k < r; ++k) basis[k][c] = pencil.basis[k](c / q, c % q).residue();
  }

  // Odometer over z; K(z) is updated in place as each digit advances.
  std::vector<std::uint64_t> digits(r, 0);
  std::vector<std::uint64_t> cur = k0;
  std::vector<SolutionPair> found;
  auto rank_le_one = [&]() {
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t k = i + 1; k < p; ++k)
        for (std::size_t j = 0; j < q; ++j)
          for (std::size_t l = j + 1; l < q; ++l) {
            const auto ad = detail::mul_mod(cur[i * q + j], cur[k * q + l], n);
            const auto bc = detail::mul_mod(cur[i * q + l], cur[k * q + j], n);
            if (ad != bc) return false;
          }
    return true;
  };
  for (std::uint64_t step = 0; step < total; ++step) {
    const bool nonzero = std::any_of(cur.begin(), cur.end(), [](std::uint64_t v) { return v != 0; });
    if (nonzero && rank_le_one()) {
      Matrix m(p, q, f);
      for (std::size_t c = 0; c < cells; ++c) m(c / q, c % q) = Scalar::residue(f, cur[c]);
      found.push_back(factor_rank_one(m));
    }
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t c = 0; c < cells; ++c) cur[c] = detail::add_mod(cur[c], basis[k][c], n);
      if (++digits[k] < n) break;
      digits[k] = 0;  // cur has wrapped back around for this digit
    }
  }

  Certificate cert;
  cert.kind = CertificateKind::ExhaustedFiniteField;
  cert.summary = "no rank-one K(z) among all " + std::to_string(total) + " points of " + f.to_string() + "^" +
                 std::to_string(r);
  return detail::finish(pencil, std::move(found), mode, true, std::move(cert));
}

/// Homogeneous pencil with r = 2 and K0 = 0. Rank-one points form cones, so
/// it suffices to search the projective line: z = (1, 0) and z = (t, 1).
/// Over an infinite field one representative per line through the origin
/// is reported.
inline SolverOutcome solve_projective_line(const AffinePencil& pencil, SolutionMode mode = SolutionMode::Any) {
  if (pencil.r() != 2 || !pencil.k0.is_zero()) {
    throw Error(Errc::DimensionMismatch, "solve_projective_line needs a homogeneous pencil with r = 2");
  }
  std::vector<SolutionPair> found;
  if (exact_rank(pencil.basis[0]) == 1) found.push_back(factor_rank_one(pencil.basis[0]));
  const AffinePencil affine{pencil.p, pencil.q, pencil.field, pencil.basis[1], {pencil.basis[0]}};
  SolverOutcome chart = solve_r1(affine, SolutionMode::Any);
  bool complete = true;
  if (chart.solved()) {
    for (auto& s : chart.solutions) found.push_back(std::move(s));
  } else if (chart.status == OutcomeStatus::Undecided) {
    complete = false;
  }
  if (pencil.field.is_finite()) {
    // Over GF(p) each rank-one line carries p - 1 distinct classes.
    const std::size_t base = found.size();
    for (const Scalar& lambda : enumerate_field(pencil.field)) {
      if (lambda.is_zero() || lambda.is_one()) continue;
      for (std::size_t k = 0; k < base; ++k) found.push_back({lambda * found[k].x, found[k].y});
    }
  }
  Certificate cert = chart.certificate;
  cert.notes.push_back("K(1, 0) has rank " + std::to_string(exact_rank(pencil.basis[0])));
  SolverOutcome out = detail::finish(pencil, std::move(found), mode, complete, std::move(cert));
  // An identically rank <= 1 chart is infinite over Q: the sample is not exhaustive.
  if (!pencil.field.is_finite() && chart.certificate.kind == CertificateKind::None && out.status == OutcomeStatus::NoSolution) {
    out.status = OutcomeStatus::Undecided;
    out.certificate.kind = CertificateKind::HeuristicsFailed;
  }
  return out;
}

}  // namespace bls
