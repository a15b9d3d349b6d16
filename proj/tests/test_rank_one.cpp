#include <gtest/gtest.h>

#include <algorithm>

#include "bls/rank_one.hpp"
#include "bls/solve.hpp"
#include "paper_examples.hpp"
#include "support.hpp"

using namespace bls;
namespace ts = testing_support;
using examples::ints;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec QI = FieldSpec::gaussian_rationals();

BilinearSystem example_2_1(const FieldSpec& f, std::initializer_list<long long> g) {
  return examples::example_2_1(f, ints(f, g));
}

QuadPoly uni(const FieldSpec& f, long long c, long long l, long long qd) {
  QuadPoly p(1, f);
  p.set_constant(Scalar::from_int(f, c));
  p.set_linear(0, Scalar::from_int(f, l));
  p.set_quadratic(0, 0, Scalar::from_int(f, qd));
  return p;
}

bool same_polys(const std::vector<QuadPoly>& a, const std::vector<QuadPoly>& b) {
  return a.size() == b.size() && std::is_permutation(a.begin(), a.end(), b.begin());
}

}  // namespace

TEST(Minors, Indices) {
  const auto idx = minor_indices(3, 2);
  ASSERT_EQ(idx.size(), 3u);
  EXPECT_EQ(idx[1].row1, 0u);
  EXPECT_EQ(idx[1].row2, 2u);
  EXPECT_EQ(idx[2].row1, 1u);
  EXPECT_TRUE(minor_indices(1, 4).empty());
  EXPECT_EQ(minor_indices(3, 4).size(), 18u);
}

TEST(Minors, Example_4_1_MatchPaper) {
  for (const auto& g : {ints(Q, {1, 2, 3}), ints(Q, {0, 0, 0}), ints(Q, {-2, 5, 7})}) {
    EXPECT_TRUE(same_polys(minor_system(examples::example_4_1_pencil(g)), examples::example_4_1_minors(g)));
    // the computed pencil is a reparametrization: check the minors on its points
    const auto computed = build_pencil(examples::example_4_1(Q, g));
    ts::Rng rng(51);
    for (int t = 0; t < 10; ++t) {
      const Matrix k = pencil_eval(computed, ts::random_vector(Q, 3, rng));
      auto minor = [&](std::size_t j, std::size_t l) { return k(0, j) * k(1, l) - k(0, l) * k(1, j); };
      EXPECT_EQ(exact_rank(k) <= 1, minor(0, 1).is_zero() && minor(0, 2).is_zero() && minor(1, 2).is_zero());
    }
  }
}

TEST(Minors, Remark) {
  for (const FieldSpec& f : {Q, QI, FieldSpec::prime(3), FieldSpec::prime(5)}) {
    const auto minors = minor_system(examples::remark_pencil(f));
    ASSERT_EQ(minors.size(), 3u);
    EXPECT_EQ(minors[0], uni(f, 0, 1, -1));
    EXPECT_EQ(minors[1], uni(f, 1, 0, 1));
    EXPECT_EQ(minors[2], uni(f, 0, 1, 1));
    EXPECT_TRUE(pencil_spaces_equal(build_pencil(examples::remark_system(f)), examples::remark_pencil(f)));
  }
}

TEST(RankOne, Factor) {
  const auto s = factor_rank_one(Matrix::from_ints(Q, {{2, 4}, {3, 6}}));
  EXPECT_EQ(outer(s.y, s.x), Matrix::from_ints(Q, {{2, 4}, {3, 6}}));
  EXPECT_EQ(s.y.front(), Scalar::one(Q));
  const auto t = factor_rank_one(Matrix::from_ints(Q, {{0, 0, 0}, {0, 5, 1}}));
  EXPECT_EQ(to_string(t.y), "(0, 1)");
  EXPECT_EQ(to_string(t.x), "(0, 5, 1)");
  try {
    (void)factor_rank_one(Matrix::identity(2, Q));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotRankOne);
  }
  EXPECT_THROW((void)factor_rank_one(Matrix(2, 2, Q)), Error);
}

TEST(RankOneProperty, FactorRecovers) {
  ts::Rng rng(52);
  for (const FieldSpec& f : {Q, QI, FieldSpec::prime(7)}) {
    for (int t = 0; t < 100; ++t) {
      const Vector y = ts::random_vector(f, 1 + rng() % 3, rng), x = ts::random_vector(f, 1 + rng() % 3, rng);
      if (is_zero(x) || is_zero(y)) continue;
      const Matrix k = outer(y, x);
      EXPECT_EQ(exact_rank(k), 1u);
      const auto s = factor_rank_one(k);
      EXPECT_EQ(outer(s.y, s.x), k);
      EXPECT_EQ(s, canonical(s));
    }
  }
}

TEST(Trivial, CountsOverGF2) {
  // (0, 0), three classes with x = 0, three with y = 0
  EXPECT_EQ(trivial_solutions(2, 2, FieldSpec::prime(2)).size(), 7u);
  EXPECT_EQ(trivial_solutions(2, 3, Q).size(), 3u);
}

TEST(Complete, RankDecides) {
  const AffinePencil one{2, 2, Q, Matrix::from_ints(Q, {{1, 2}, {2, 4}}), {}};
  const auto a = solve_complete(one);
  ASSERT_TRUE(a.solved());
  ASSERT_EQ(a.solutions.size(), 1u);
  EXPECT_EQ(outer(a.solutions[0].y, a.solutions[0].x), one.k0);

  const AffinePencil two{2, 2, Q, Matrix::identity(2, Q), {}};
  const auto b = solve_complete(two);
  EXPECT_EQ(b.status, OutcomeStatus::NoSolution);
  EXPECT_EQ(b.certificate.kind, CertificateKind::ConstantMinorNonzero);
  ASSERT_TRUE(b.certificate.minor);
  EXPECT_EQ(b.certificate.minor->col2, 1u);

  const AffinePencil zero{2, 2, Q, Matrix(2, 2, Q), {}};
  EXPECT_TRUE(solve_complete(zero).solved());
  EXPECT_EQ(solve_complete(zero, SolutionMode::Nontrivial).status, OutcomeStatus::NoSolution);
  EXPECT_THROW((void)solve_complete(examples::remark_pencil(Q)), Error);
}

TEST(R1, Example_2_1_OverQ) {
  const auto out = solve(example_2_1(Q, {3, 1, 2}));
  ASSERT_TRUE(out.solved());
  // K = [[a, g3], [g2, g1 - a]] with a^2 - 3a + 2 = 0
  ASSERT_EQ(out.solutions.size(), 2u);
  EXPECT_NE(std::find(out.solutions.begin(), out.solutions.end(), canonical({ints(Q, {1, 2}), ints(Q, {1, 1})})),
            out.solutions.end());
  EXPECT_NE(std::find(out.solutions.begin(), out.solutions.end(), canonical({ints(Q, {1, 1}), ints(Q, {2, 1})})),
            out.solutions.end());

  const auto none = solve(example_2_1(Q, {1, 1, 1}));
  EXPECT_EQ(none.status, OutcomeStatus::NoSolution);
  EXPECT_EQ(none.certificate.kind, CertificateKind::R1NoCommonRoot);
  ASSERT_EQ(none.certificate.discriminants.size(), 1u);
  EXPECT_EQ(none.certificate.discriminants[0], Scalar::from_int(Q, -3));
}

TEST(R1, Example_2_1_DiscriminantAcrossFields) {
  // g = (1, 1, 1): discriminant -3 is a square only where -3 is.
  EXPECT_EQ(solve(example_2_1(QI, {1, 1, 1})).status, OutcomeStatus::NoSolution);
  EXPECT_EQ(solve(example_2_1(FieldSpec::prime(5), {1, 1, 1})).status, OutcomeStatus::NoSolution);
  const auto gf3 = solve(example_2_1(FieldSpec::prime(3), {1, 1, 1}));
  ASSERT_TRUE(gf3.solved());
  EXPECT_EQ(gf3.solutions.size(), 1u);
  const auto gf7 = solve(example_2_1(FieldSpec::prime(7), {1, 1, 1}));  // -3 = 4 = 2^2 mod 7
  ASSERT_TRUE(gf7.solved());
  EXPECT_EQ(gf7.solutions.size(), 2u);
}

TEST(R1, Example_2_1_ZeroEntries) {
  const auto out = solve(example_2_1(Q, {0, 5, 0}));
  ASSERT_TRUE(out.solved());
  EXPECT_NE(std::find(out.solutions.begin(), out.solutions.end(), canonical({ints(Q, {5, 0}), ints(Q, {0, 1})})),
            out.solutions.end());
}

TEST(R1, RemarkNoCommonRoot) {
  for (const FieldSpec& f : {Q, QI, FieldSpec::prime(3), FieldSpec::prime(5)}) {
    const auto out = solve_r1(examples::remark_pencil(f));
    EXPECT_EQ(out.status, OutcomeStatus::NoSolution) << f.to_string();
    EXPECT_EQ(out.certificate.kind, CertificateKind::R1NoCommonRoot);
    EXPECT_EQ(solve(examples::remark_system(f)).status, OutcomeStatus::NoSolution);
  }
  // over GF(2) z = 1 gives the all-ones matrix
  const auto gf2 = solve_r1(examples::remark_pencil(FieldSpec::prime(2)));
  ASSERT_TRUE(gf2.solved());
  EXPECT_EQ(gf2.solutions.size(), 1u);
}

TEST(R1, IdenticallyRankOneFamily) {
  // K(z) = [[1, z], [0, 0]]: every point has rank one.
  const AffinePencil fam{2, 2, Q, Matrix::from_ints(Q, {{1, 0}, {0, 0}}), {Matrix::from_ints(Q, {{0, 1}, {0, 0}})}};
  const auto out = solve_r1(fam);
  ASSERT_TRUE(out.solved());
  EXPECT_GE(out.solutions.size(), 2u);
  EXPECT_FALSE(out.certificate.notes.empty());
  const auto gf3 = solve_r1(AffinePencil{2, 2, FieldSpec::prime(3), Matrix::from_ints(FieldSpec::prime(3), {{1, 0}, {0, 0}}),
                                         {Matrix::from_ints(FieldSpec::prime(3), {{0, 1}, {0, 0}})}});
  EXPECT_EQ(gf3.solutions.size(), 3u);
}

TEST(FiniteField, MatchesEnumerationOfPairs) {
  const FieldSpec f = FieldSpec::prime(3);
  const auto sys = examples::example_4_1(f, ints(f, {1, 2, 0}));
  const auto out = solve_finite_field(build_pencil(sys));
  EXPECT_EQ(ts::to_int_pairs(out.solutions), ts::naive_solutions(ts::to_ints(sys), SolutionMode::Any));
}

TEST(FiniteField, Budget) {
  const FieldSpec f = FieldSpec::prime(5);
  const auto pencil = build_pencil(examples::example_4_1(f, ints(f, {1, 2, 3})));
  try {
    (void)solve_finite_field(pencil, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetExceeded);
  }
  EXPECT_NO_THROW((void)solve_finite_field(pencil, 125));
  EXPECT_THROW((void)solve_finite_field(examples::remark_pencil(Q)), Error);
}

TEST(FiniteField, EmptyIsExhausted) {
  const FieldSpec f = FieldSpec::prime(3);
  const auto out = solve_finite_field(examples::remark_pencil(f));
  EXPECT_EQ(out.status, OutcomeStatus::NoSolution);
  EXPECT_EQ(out.certificate.kind, CertificateKind::ExhaustedFiniteField);
}

TEST(Homogeneous, Example_1_1_OverGaussian) {
  const auto out = solve(examples::example_1_1(QI), {.mode = SolutionMode::TotallyNonzero});
  ASSERT_TRUE(out.solved());
  const Scalar i = Scalar::imaginary_unit();
  const Vector v{i, Scalar::one(QI)};
  const auto want = canonical({v, v});
  bool found = false;
  for (const auto& s : out.solutions) {
    EXPECT_TRUE(solves(examples::example_1_1(QI), s));
    if (s.y == want.y && exact_rank(Matrix::from_rows(QI, {s.x, want.x})) == 1) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Homogeneous, Example_1_1_OverQ) {
  const auto sys = examples::example_1_1(Q);
  const auto any = solve(sys);
  ASSERT_TRUE(any.solved());
  for (const auto& s : any.solutions) EXPECT_TRUE(is_zero(s.x) || is_zero(s.y));
  EXPECT_EQ(solve(sys, {.mode = SolutionMode::Nontrivial}).status, OutcomeStatus::NoSolution);
}

TEST(Homogeneous, Example_1_1_FiniteFields) {
  for (std::uint64_t p : {3u, 5u}) {
    const FieldSpec f = FieldSpec::prime(p);
    const auto sys = examples::example_1_1(f);
    for (auto mode : {SolutionMode::Any, SolutionMode::Nontrivial, SolutionMode::TotallyNonzero}) {
      const auto out = solve(sys, {.mode = mode});
      EXPECT_EQ(ts::to_int_pairs(out.solutions), ts::naive_solutions(ts::to_ints(sys), mode));
    }
  }
}

TEST(Dispatch, Example_4_1) {
  const auto sys = examples::example_4_1(Q, ints(Q, {1, 2, 3}));
  const auto out = solve(sys);
  ASSERT_TRUE(out.solved());
  for (const auto& s : out.solutions) EXPECT_TRUE(solves(sys, s));
  EXPECT_TRUE(solves(sys, {ints(Q, {-3, 0, 1}), ints(Q, {1, 1})}));
}

TEST(Dispatch, InconsistentReduction) {
  const Matrix a = Matrix::identity(2, Q);
  const auto out = solve(BilinearSystem({a, Scalar::from_int(Q, 2) * a}, ints(Q, {1, 1})));
  EXPECT_EQ(out.status, OutcomeStatus::NoSolution);
  EXPECT_EQ(out.certificate.kind, CertificateKind::InconsistentReduction);
}

TEST(Dispatch, UndecidedWhenNothingApplies) {
  // Example 2.1 with g = (1, 1, 1) and an unused third column: r = 3.
  std::vector<Matrix> mats;
  const auto base = example_2_1(Q, {1, 1, 1});
  for (const auto& a : base.matrices()) {
    Matrix b(2, 3, Q);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) b(i, j) = a(i, j);
    mats.push_back(b);
  }
  const auto out = solve(BilinearSystem(mats, ints(Q, {1, 1, 1})));
  EXPECT_EQ(out.status, OutcomeStatus::Undecided);
  EXPECT_EQ(out.certificate.kind, CertificateKind::GeneralRTooLarge);
}

TEST(Dispatch, FiniteFieldBudgetFallsThrough) {
  const FieldSpec f = FieldSpec::prime(5);
  const auto sys = examples::example_4_1(f, ints(f, {1, 2, 3}));
  const auto out = solve(sys, {.budget = 10});
  EXPECT_NE(out.status, OutcomeStatus::NoSolution);
  for (const auto& s : out.solutions) EXPECT_TRUE(solves(sys, s));
}
