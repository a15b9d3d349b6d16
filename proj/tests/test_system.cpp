#include <gtest/gtest.h>

#include "bls/system.hpp"
#include "paper_examples.hpp"
#include "support.hpp"

using namespace bls;
namespace ts = testing_support;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec QI = FieldSpec::gaussian_rationals();

using examples::ints;

BilinearSystem example_2_1(const FieldSpec& f, std::initializer_list<long long> g) {
  return examples::example_2_1(f, ints(f, g));
}

}  // namespace

TEST(Vec, ColumnStacking) {
  EXPECT_EQ(vec(Matrix::from_ints(Q, {{1, 2}, {3, 4}})), ints(Q, {1, 3, 2, 4}));
  EXPECT_EQ(vec(Matrix::from_ints(Q, {{5, 6, 7}})), ints(Q, {5, 6, 7}));
  EXPECT_EQ(vec(Matrix(2, 3, Q)), zero_vector(6, Q));
}

TEST(Vec, Unvec) {
  EXPECT_EQ(unvec(ints(Q, {1, 3, 2, 4}), 2, 2), Matrix::from_ints(Q, {{1, 2}, {3, 4}}));
  EXPECT_EQ(unvec(ints(Q, {1, 2, 3}), 1, 3), Matrix::from_ints(Q, {{1, 2, 3}}));
  try {
    (void)unvec(ints(Q, {1, 2, 3, 4, 5}), 2, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionMismatch);
  }
}

TEST(VecProperty, RoundTrip) {
  ts::Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    const std::size_t p = 1 + rng() % 4, q = 1 + rng() % 4;
    const Matrix a = ts::random_matrix(Q, p, q, rng);
    EXPECT_EQ(unvec(vec(a), p, q), a);
    // entry k*p + r of vec(A) is A(r, k)
    const auto v = vec(a);
    for (std::size_t r = 0; r < p; ++r)
      for (std::size_t k = 0; k < q; ++k) EXPECT_EQ(v[k * p + r], a(r, k));
  }
}

TEST(System, ConstructionErrors) {
  EXPECT_THROW(BilinearSystem(2, 2, Q, {Matrix(2, 3, Q)}, ints(Q, {1})), Error);
  EXPECT_THROW(BilinearSystem(2, 2, Q, {Matrix(2, 2, Q)}, ints(Q, {1, 2})), Error);
  EXPECT_THROW(BilinearSystem(2, 2, Q, {Matrix(2, 2, QI)}, ints(Q, {1})), Error);
}

TEST(Evaluate, Example_1_1_ComplexSolution) {
  const auto sys = examples::example_1_1(QI);
  const Scalar i = Scalar::imaginary_unit();
  const Vector v{i, Scalar::one(QI)};
  EXPECT_EQ(evaluate(sys, {v, v}), zero_vector(2, QI));
  EXPECT_TRUE(solves(sys, {v, v}));
}

TEST(Evaluate, TrivialSolutionsOfHomogeneousSystems) {
  ts::Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto sys = ts::random_system(Q, 3, 2, 3, rng).with_rhs(zero_vector(3, Q));
    EXPECT_TRUE(solves(sys, {zero_vector(2, Q), ts::random_vector(Q, 3, rng)}));
    EXPECT_TRUE(solves(sys, {ts::random_vector(Q, 2, rng), zero_vector(3, Q)}));
  }
}

TEST(Evaluate, Example_2_1) {
  EXPECT_EQ(evaluate(example_2_1(Q, {3, 1, 2}), {ints(Q, {1, 2}), ints(Q, {1, 1})}), zero_vector(3, Q));
}

TEST(Slices, Example_1_1_Y) {
  // Y(y) = [[y1, y2], [-y2, y1]]
  const auto sys = examples::example_1_1(Q);
  EXPECT_EQ(assemble_Y(sys, ints(Q, {3, 5})), Matrix::from_ints(Q, {{3, 5}, {-5, 3}}));
  const auto sl = slices(sys);
  EXPECT_EQ(sl.row_slices[0], Matrix::from_ints(Q, {{1, 0}, {0, 1}}));
}

TEST(Slices, UnitYSelectsFirstRows) {
  const auto sys = examples::example_4_1(Q, ints(Q, {1, 2, 3}));
  const Matrix y = assemble_Y(sys, ints(Q, {1, 0}));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(y.row(k), sys.matrix(k).row(0));
}

TEST(Slices, Example_4_1_Y_IdenticallySingular) {
  // Y(y) = [[0, y1, y2], [-y1, 0, -y1], [-y2, y1, 0]]
  const auto sys = examples::example_4_1(Q, ints(Q, {1, 2, 3}));
  EXPECT_EQ(assemble_Y(sys, ints(Q, {2, 7})), Matrix::from_ints(Q, {{0, 2, 7}, {-2, 0, -2}, {-7, 2, 0}}));
  ts::Rng rng(3);
  for (int t = 0; t < 50; ++t) EXPECT_TRUE(determinant(assemble_Y(sys, ts::random_vector(Q, 2, rng))).is_zero());
}

TEST(Stack, Example_4_1) {
  const auto sys = examples::example_4_1(Q, ints(Q, {1, 2, 3}));
  EXPECT_EQ(stack(sys).transpose(),
            Matrix::from_ints(Q, {{0, 0, 1, 0, 0, 1}, {-1, 0, 0, 0, -1, 0}, {0, -1, 1, 0, 0, 0}}));
  const BilinearSystem one({Matrix::from_ints(Q, {{1, 0}, {0, 0}})}, ints(Q, {1}));
  EXPECT_EQ(stack(one), Matrix::from_ints(Q, {{1}, {0}, {0}, {0}}));
}

// y^T A_k x = (Y x)_k = (y^T X)_k = vec(y x^T) . vec(A_k)
TEST(SystemProperty, FourWaysToEvaluate) {
  ts::Rng rng(4);
  for (const FieldSpec& f : {Q, QI, FieldSpec::prime(5)}) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t p = 1 + rng() % 3, q = 1 + rng() % 3, m = 1 + rng() % 4;
      const auto sys = ts::random_system(f, p, q, m, rng);
      const SolutionPair s{ts::random_vector(f, q, rng), ts::random_vector(f, p, rng)};
      const Vector direct = evaluate(sys, s) + sys.rhs();
      EXPECT_EQ(assemble_Y(sys, s.y) * s.x, direct);
      EXPECT_EQ(assemble_X(sys, s.x).transpose() * s.y, direct);
      EXPECT_EQ(stack(sys).transpose() * vec(outer(s.y, s.x)), direct);
    }
  }
}

TEST(SystemProperty, ScalingInvariance) {
  ts::Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto sys = ts::random_system(Q, 2, 3, 3, rng);
    const SolutionPair s{ts::random_vector(Q, 3, rng), ts::random_vector(Q, 2, rng)};
    Scalar c = ts::small_rational(Q, rng);
    if (c.is_zero()) c = Scalar::one(Q);
    EXPECT_EQ(evaluate(sys, s), evaluate(sys, {c * s.x, c.inverse() * s.y}));
    EXPECT_EQ(canonical(s), canonical({c * s.x, c.inverse() * s.y}));
  }
}

TEST(Canonical, FirstNonzeroOfYIsOne) {
  const auto c = canonical({ints(Q, {4, 6}), ints(Q, {0, 2, 5})});
  EXPECT_EQ(to_string(c.y), "(0, 1, 5/2)");
  EXPECT_EQ(to_string(c.x), "(8, 12)");
  const auto d = canonical({ints(Q, {0, 3}), ints(Q, {0, 0})});
  EXPECT_EQ(to_string(d.x), "(0, 1)");
}

TEST(Modes, Accepts) {
  const SolutionPair trivial{ints(Q, {0, 0}), ints(Q, {1, 2})};
  const SolutionPair partial{ints(Q, {1, 0}), ints(Q, {1, 2})};
  const SolutionPair full{ints(Q, {1, 3}), ints(Q, {1, 2})};
  EXPECT_TRUE(accepts(SolutionMode::Any, trivial));
  EXPECT_FALSE(accepts(SolutionMode::Nontrivial, trivial));
  EXPECT_TRUE(accepts(SolutionMode::Nontrivial, partial));
  EXPECT_FALSE(accepts(SolutionMode::TotallyNonzero, partial));
  EXPECT_TRUE(accepts(SolutionMode::TotallyNonzero, full));
  EXPECT_EQ(parse_mode("totally_nonzero"), SolutionMode::TotallyNonzero);
  EXPECT_THROW(parse_mode("some"), Error);
}
