#include <gtest/gtest.h>

#include "bls/matrix.hpp"
#include "support.hpp"

using namespace bls;
namespace ts = testing_support;

namespace {
const FieldSpec Q = FieldSpec::rationals();
}

TEST(Matrix, RrefAndRank) {
  const Matrix a = Matrix::from_ints(Q, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(a), 2u);
  const Echelon e = rref(a);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(e.reduced, Matrix::from_ints(Q, {{1, 0, 1}, {0, 1, 1}, {0, 0, 0}}));
  EXPECT_EQ(rank(Matrix(2, 3, Q)), 0u);
}

TEST(Matrix, Nullspace) {
  const Matrix a = Matrix::from_ints(Q, {{1, 2, 3}, {2, 4, 6}});
  const auto ns = nullspace(a);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns) EXPECT_TRUE(is_zero(a * v));
}

TEST(Matrix, SolveLinear) {
  const Matrix a = Matrix::from_ints(Q, {{1, 1}, {1, -1}});
  const auto s = solve_linear(a, {Scalar::from_int(Q, 3), Scalar::from_int(Q, 1)});
  ASSERT_TRUE(s);
  EXPECT_EQ(to_string(s->particular), "(2, 1)");
  EXPECT_TRUE(s->kernel.empty());
  EXPECT_FALSE(solve_linear(Matrix::from_ints(Q, {{1, 1}, {2, 2}}), {Scalar::from_int(Q, 1), Scalar::from_int(Q, 3)}));
}

TEST(Matrix, InverseAndDeterminant) {
  const Matrix a = Matrix::from_ints(Q, {{2, 1}, {5, 3}});
  EXPECT_EQ(determinant(a), Scalar::one(Q));
  EXPECT_EQ(*inverse(a), Matrix::from_ints(Q, {{3, -1}, {-5, 2}}));
  EXPECT_FALSE(inverse(Matrix::from_ints(Q, {{1, 2}, {2, 4}})));
}

TEST(Matrix, ShapeErrors) {
  EXPECT_THROW((void)(Matrix(2, 2, Q) * Matrix(3, 2, Q)), Error);
  EXPECT_THROW((void)(Matrix(2, 2, Q) + Matrix(2, 3, Q)), Error);
}

// rank agrees with an independent elimination over Q and over GF(p).
TEST(MatrixProperty, RankMatchesNaive) {
  ts::Rng rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const Matrix a = ts::random_matrix(Q, r, c, rng);
    std::vector<std::vector<mpq_class>> raw(r, std::vector<mpq_class>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) raw[i][j] = a(i, j).real();
    EXPECT_EQ(rank(a), ts::naive_rank_q(raw));

    const FieldSpec f = FieldSpec::prime(rng() % 2 ? 3 : 5);
    const Matrix b = ts::random_matrix(f, r, c, rng);
    std::vector<std::vector<std::int64_t>> ints(r, std::vector<std::int64_t>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) ints[i][j] = static_cast<std::int64_t>(b(i, j).residue());
    EXPECT_EQ(rank(b), ts::naive_rank_mod(ints, static_cast<std::int64_t>(f.modulus())));
  }
}

TEST(MatrixProperty, RankNullity) {
  ts::Rng rng(6);
  for (const FieldSpec& f : {Q, FieldSpec::gaussian_rationals(), FieldSpec::prime(3)}) {
    for (int t = 0; t < 100; ++t) {
      const Matrix a = ts::random_matrix(f, 1 + rng() % 4, 1 + rng() % 5, rng);
      EXPECT_EQ(rank(a) + nullspace(a).size(), a.cols());
      EXPECT_EQ(rank(a), rank(a.transpose()));
    }
  }
}
