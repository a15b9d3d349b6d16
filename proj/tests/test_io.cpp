#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bls/io.hpp"
#include "bls/solve.hpp"
#include "paper_examples.hpp"
#include "support.hpp"

using namespace bls;
namespace ts = testing_support;
using examples::ints;

namespace {

const FieldSpec Q = FieldSpec::rationals();

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parse_error(std::string_view text) {
  try {
    (void)parse_system_file(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    return e.message();
  }
  return "";
}

}  // namespace

TEST(Parse, Example_2_1) {
  const auto file = parse_system_file(slurp(std::filesystem::path(BLS_FIXTURES) / "ex2_1_g111.bls"));
  EXPECT_EQ(file.system.matrices(), examples::example_2_1(Q, ints(Q, {1, 1, 1})).matrices());
  EXPECT_EQ(file.system.rhs(), ints(Q, {1, 1, 1}));
  EXPECT_FALSE(file.mode);
}

TEST(Parse, CommentsModeAndFieldOverride) {
  const std::string text =
      "# header\nfield Q\ndims 1 2 1\nmode nontrivial  # trailing\n\nmatrix 1\n  4 -1/2\nrhs 7\n";
  const auto file = parse_system_file(text);
  EXPECT_EQ(*file.mode, SolutionMode::Nontrivial);
  EXPECT_EQ(file.system.matrix(0)(0, 1), Scalar::from_rational(Q, mpq_class(-1, 2)));
  const auto gf5 = parse_system_file(text, FieldSpec::prime(5));
  EXPECT_EQ(gf5.system.field(), FieldSpec::prime(5));
  EXPECT_EQ(gf5.system.rhs()[0], Scalar::residue(FieldSpec::prime(5), 2));
  EXPECT_EQ(gf5.system.matrix(0)(0, 0), Scalar::residue(FieldSpec::prime(5), 4));
}

TEST(Parse, ErrorsCarryPosition) {
  EXPECT_EQ(parse_error("field Q\ndims 1 1 1\nmatrix 1\n1.5\nrhs 1\n").rfind("line 4, column 1:", 0), 0u);
  EXPECT_EQ(parse_error("field Q\ndims 1 2 1\nmatrix 1\n1   x\nrhs 1\n").rfind("line 4, column 5:", 0), 0u);
  EXPECT_EQ(parse_error("field Q\ndims 1 1 1\nmatrix 1\n1\n").rfind("line 4, column 1: missing 'rhs'", 0), 0u);
  EXPECT_NE(parse_error("field R\n").find("line 1, column 7"), std::string::npos);
  EXPECT_NE(parse_error("field Q\ndims 1 1 1\nmatrix 2\n1\nrhs 1\n").find("out of range"), std::string::npos);
  EXPECT_NE(parse_error("field Q\ndims 1 1 1\nbogus\n").find("unknown keyword 'bogus'"), std::string::npos);
  EXPECT_NE(parse_error("field Q\ndims 1 2 1\nmatrix 1\n1\nrhs 1\n").find("expected 2 entries"), std::string::npos);
  EXPECT_NE(parse_error("dims 1 1 1\nmatrix 1\n1\n").find("must precede"), std::string::npos);
  EXPECT_NE(parse_error("field GF(3)\ndims 1 1 1\nmatrix 1\n1/3\nrhs 1\n").find("line 4"), std::string::npos);
}

TEST(Parse, BadScalarFixture) {
  EXPECT_EQ(parse_error(slurp(std::filesystem::path(BLS_FIXTURES) / "bad_scalar.bls")).rfind("line 4, column 1", 0), 0u);
}

TEST(Emit, RoundTrip) {
  ts::Rng rng(91);
  for (const FieldSpec& f : {Q, FieldSpec::gaussian_rationals(), FieldSpec::prime(7)}) {
    for (int t = 0; t < 30; ++t) {
      SystemFile file{ts::random_system(f, 1 + rng() % 3, 1 + rng() % 3, rng() % 4, rng), std::nullopt};
      if (t % 3 == 0) file.mode = SolutionMode::TotallyNonzero;
      const auto text = emit_system_file(file);
      const auto back = parse_system_file(text);
      EXPECT_EQ(back.system.field(), f);
      EXPECT_EQ(back.system.matrices(), file.system.matrices());
      EXPECT_EQ(back.system.rhs(), file.system.rhs());
      EXPECT_EQ(back.mode, file.mode);
      EXPECT_EQ(emit_system_file(back), text);
    }
  }
}

TEST(Solution, FormatAndParse) {
  const SolutionPair s{ints(Q, {-2, 1, 0}), ints(Q, {1, 1})};
  EXPECT_EQ(format_solution(s), "x = (-2, 1, 0)  y = (1, 1)");
  EXPECT_EQ(parse_solution(format_solution(s), Q), s);
  const FieldSpec QI = FieldSpec::gaussian_rationals();
  const SolutionPair c{{Scalar::gaussian(mpq_class(-1), mpq_class(1, 2)), Scalar::one(QI)},
                       {Scalar::one(QI), Scalar::imaginary_unit()}};
  EXPECT_EQ(parse_solution(format_solution(c), QI), c);
  EXPECT_THROW((void)parse_solution("nothing here", Q), Error);
}

TEST(Pencil, Format) {
  const auto text = format_pencil(examples::remark_pencil(Q));
  EXPECT_EQ(text, "pencil p=2 q=3 r=1 field Q\nK0\n  1 0 0\n  0 0 1\nK1\n  0 1 -1\n  1 1 0\n");
}

// Every solution line printed for a fixture parses back to a pair with zero
// residual against the file's system.
TEST(EndToEnd, PrintedSolutionsSolveTheFixture) {
  std::size_t lines = 0;
  for (const auto& entry : std::filesystem::directory_iterator(BLS_FIXTURES)) {
    if (entry.path().extension() != ".bls" || entry.path().stem() == "bad_scalar") continue;
    const auto file = parse_system_file(slurp(entry.path()));
    SolveOptions opts;
    if (file.mode) opts.mode = *file.mode;
    const auto out = solve(file.system, opts);
    std::istringstream printed(format_outcome(out));
    std::string line;
    while (std::getline(printed, line)) {
      if (line.rfind("  x = ", 0) != 0) continue;
      const auto s = parse_solution(line, file.system.field());
      EXPECT_TRUE(solves(file.system, s)) << entry.path() << ": " << line;
      EXPECT_TRUE(accepts(opts.mode, s)) << entry.path() << ": " << line;
      ++lines;
    }
  }
  EXPECT_GT(lines, 10u);
}
