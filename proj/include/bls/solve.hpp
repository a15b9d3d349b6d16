#pragma once

// The solver pipeline: reduce, build the pencil, then the exact r = 0 / r = 1
// procedures, finite-field enumeration, structural constructions and
// heuristics. Everything reported as a solution is re-checked against the
// original system.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bls/error.hpp"
#include "bls/pencil.hpp"
#include "bls/rank_one.hpp"
#include "bls/reduction.hpp"
#include "bls/structural.hpp"
#include "bls/system.hpp"

namespace bls {

struct SolveOptions {
  std::uint64_t budget = 10'000'000;  // finite-field parameter points
  SolutionMode mode = SolutionMode::Any;
  std::size_t max_lines = 400;
};

namespace detail {

inline SolverOutcome verified(const BilinearSystem& original, SolverOutcome out) {
  for (const auto& s : out.solutions) {
    if (!solves(original, s)) throw std::logic_error("solver produced a pair with nonzero residual");
  }
  out.solutions = canonical_set(std::move(out.solutions));
  return out;
}

inline SolverOutcome single(const AffinePencil& pencil, SolutionPair s, std::string how) {
  SolverOutcome out;
  out.status = OutcomeStatus::Solutions;
  out.solutions.push_back(std::move(s));
  out.pencil = pencil;
  out.certificate.notes.push_back(std::move(how));
  return out;
}

}  // namespace detail

inline SolverOutcome solve(const BilinearSystem& sys, const SolveOptions& opts = {}) {
  const ReductionReport report = reduce_system(sys);
  if (report.inconsistent) {
    SolverOutcome out;
    out.status = OutcomeStatus::NoSolution;
    out.certificate.kind = CertificateKind::InconsistentReduction;
    out.certificate.summary = "pair " + std::to_string(*report.conflicting_pair + 1) +
                              " reduces to the zero matrix with rhs " + report.conflicting_rhs->to_string();
    for (const auto& op : report.ops) out.certificate.notes.push_back(op.to_string());
    return out;
  }
  const BilinearSystem& red = report.reduced;
  const AffinePencil pencil = build_pencil(red);
  const SolutionMode mode = opts.mode;

  const auto minors = minor_system(pencil);
  if (auto bad = detail::constant_nonzero_minor(minors, pencil.p, pencil.q)) {
    SolverOutcome out;
    out.status = OutcomeStatus::NoSolution;
    out.pencil = pencil;
    out.certificate.kind = CertificateKind::ConstantMinorNonzero;
    out.certificate.minor = bad;
    out.certificate.polynomials = minors;
    out.certificate.summary = "minor " + detail::minor_label(*bad) + " of K(z) is a nonzero constant";
    return out;
  }

  if (pencil.r() == 0) return detail::verified(sys, solve_complete(pencil, mode));
  if (pencil.r() == 1) return detail::verified(sys, solve_r1(pencil, mode));

  std::vector<std::string> notes;
  const bool finite = sys.field().is_finite();
  if (finite) {
    try {
      return detail::verified(sys, solve_finite_field(pencil, opts.budget, mode));
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExceeded) throw;
      notes.push_back(e.what());
    }
  }

  const bool homogeneous = red.is_homogeneous();
  if (homogeneous && mode == SolutionMode::Any) {
    auto out = detail::finish(pencil, {}, mode, true, {});
    out.certificate.notes.push_back("homogeneous: trivial solutions");
    return detail::verified(sys, std::move(out));
  }
  if (homogeneous && pencil.r() == 2 && !finite) {
    auto out = solve_projective_line(pencil, mode);
    if (out.status != OutcomeStatus::Undecided) return detail::verified(sys, std::move(out));
  }

  auto try_pair = [&](const SolutionPair& s) { return accepts(mode, s) && solves(red, s); };

  if (std::min(red.p(), red.q()) == 1) {
    // Every nonzero K(z) has rank one; look for one the mode accepts.
    std::vector<Scalar> vals = detail::small_pool(sys.field(), false);
    std::optional<SolutionPair> hit;
    detail::for_each_vector(pencil.r(), vals, 5000, [&](const Vector& z) {
      const Matrix k = pencil_eval(pencil, z);
      if (k.is_zero()) return false;
      const SolutionPair s = factor_rank_one(k);
      if (try_pair(s)) hit = s;
      return hit.has_value();
    });
    if (hit) return detail::verified(sys, detail::single(pencil, *hit, "single row or column: nonzero K(z)"));
  }

  if (red.m() <= 2) {
    const SolutionPair s = solve_m2(red);
    if (try_pair(s)) return detail::verified(sys, detail::single(pencil, s, "m <= 2 construction"));
  }
  if (has_three_corner_property(collective_support(red))) {
    const SolutionPair s = solve_three_corner(red);
    if (try_pair(s)) return detail::verified(sys, detail::single(pencil, s, "3-corner construction"));
  }

  SpecializationOptions sopts;
  sopts.mode = mode;
  sopts.max_subset = 3;
  if (auto r = specialization_search(red, sopts); r && r->solution && try_pair(*r->solution)) {
    return detail::verified(
        sys, detail::single(pencil, *r->solution, "specialization (" + to_string(r->witness.kind) + "): " +
                                                      r->witness.describe()));
  }
  if (auto s = line_search(red, mode, opts.max_lines); s && try_pair(*s)) {
    return detail::verified(sys, detail::single(pencil, *s, "line search"));
  }

  SolverOutcome out;
  out.status = OutcomeStatus::Undecided;
  out.pencil = pencil;
  out.certificate.kind = notes.empty() ? CertificateKind::GeneralRTooLarge : CertificateKind::HeuristicsFailed;
  out.certificate.summary = "r = " + std::to_string(pencil.r()) + ": no exact procedure applies and heuristics found nothing";
  out.certificate.notes = std::move(notes);
  return out;
}

}  // namespace bls
