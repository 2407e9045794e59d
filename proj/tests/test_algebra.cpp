#include <gtest/gtest.h>

#include "sandlab/sandlab.hpp"

using namespace sandlab;

namespace {

Digraph zero_graph() { return gen::complete_with_sink(3); }

Integer vandermonde(const std::vector<long>& xs) {
  Integer p = 1;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j) p *= xs[j] - xs[i];
  return p;
}

}  // namespace

TEST(Determinant, SmallCases) {
  EXPECT_EQ(determinant(IntegerMatrix{{2, -1}, {-1, 2}}), 3);
  EXPECT_EQ(determinant(IntegerMatrix{{7}}), 7);
  EXPECT_EQ(determinant(IntegerMatrix::identity(5)), 1);
  EXPECT_EQ(determinant(IntegerMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntegerMatrix{{1, 2}, {2, 4}}), 0);
  EXPECT_EQ(determinant(IntegerMatrix{}), 1);
}

TEST(Determinant, NeedsPivotingAndBigIntegers) {
  // leading zero forces a row swap
  EXPECT_EQ(determinant(IntegerMatrix{{0, 2, 1}, {3, 0, 4}, {1, 5, 0}}), 23);
  std::vector<long> xs{-7, -3, 2, 11, 19, 40, 83, 150, 301, 999};
  IntegerMatrix m(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Integer p = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      m(i, j) = p;
      p *= xs[i];
    }
  }
  EXPECT_EQ(determinant(m), vandermonde(xs));
}

TEST(Determinant, UnreachableSinkGivesZero) {
  // vertex 1 only feeds itself and 0; vertex 2 is the sink but unreachable
  Digraph g = Digraph::build(3, {{0, 1}, {1, 0}}, Vertex{2});
  EXPECT_EQ(determinant(reduced_laplacian(g)), 0);
}

TEST(SmithNormalForm, ZeroGraphIsCyclicOfOrderThree) {
  auto s = smith_normal_form(reduced_laplacian(zero_graph()));
  EXPECT_EQ(s.order, 3);
  ASSERT_EQ(s.invariant_factors.size(), 1u);
  EXPECT_EQ(s.invariant_factors[0], 3);
}

TEST(SmithNormalForm, DiagonalCases) {
  auto a = smith_normal_form(IntegerMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(a.invariant_factors, (std::vector<Integer>{6}));
  auto b = smith_normal_form(IntegerMatrix{{2, 0}, {0, 2}});
  EXPECT_EQ(b.invariant_factors, (std::vector<Integer>{2, 2}));
  auto c = smith_normal_form(IntegerMatrix{{4, 0, 0}, {0, 6, 0}, {0, 0, 10}});
  EXPECT_EQ(c.invariant_factors, (std::vector<Integer>{2, 2, 60}));
  EXPECT_EQ(c.order, 240);
  auto id = smith_normal_form(IntegerMatrix::identity(4));
  EXPECT_EQ(id.order, 1);
  EXPECT_TRUE(id.invariant_factors.empty());
}

TEST(SmithNormalForm, FactorsDivideAndMultiplyToOrder) {
  for (long size : {2, 3, 4, 5}) {
    auto s = smith_normal_form(reduced_laplacian(gen::grid_wired(size)));
    Integer prod = 1;
    for (std::size_t i = 0; i < s.invariant_factors.size(); ++i) {
      prod *= s.invariant_factors[i];
      if (i > 0) {
        EXPECT_EQ(s.invariant_factors[i] % s.invariant_factors[i - 1], 0);
      }
    }
    EXPECT_EQ(prod, s.order) << "grid " << size;
    EXPECT_EQ(s.order, determinant(reduced_laplacian(gen::grid_wired(size))));
  }
}

TEST(SmithNormalForm, SingularThrows) {
  EXPECT_THROW(smith_normal_form(IntegerMatrix{{1, 1}, {1, 1}}), SingularMatrix);
}

TEST(SolveRational, HandElimination) {
  std::vector<Rational> b{1, 0};
  auto x = solve_rational(IntegerMatrix{{2, -1}, {-1, 2}}, b);
  EXPECT_EQ(x[0], Rational(2, 3));
  EXPECT_EQ(x[1], Rational(1, 3));
}

TEST(SolveRational, IdentityAndFractionalRhs) {
  std::vector<Rational> b{Rational(1, 2), Rational(-5, 7), 3};
  EXPECT_EQ(solve_rational(IntegerMatrix::identity(3), b), b);
}

TEST(SolveRational, SingularThrows) {
  std::vector<Rational> b{1, 1};
  EXPECT_THROW(solve_rational(IntegerMatrix{{1, 2}, {2, 4}}, b), SingularMatrix);
}

TEST(ModOne, FractionalPart) {
  EXPECT_EQ(mod_one(Rational(-1, 3)), Rational(2, 3));
  EXPECT_EQ(mod_one(Rational(7, 3)), Rational(1, 3));
  EXPECT_EQ(mod_one(Rational(-2)), Rational(0));
}

TEST(Resistance, SeriesAndParallel) {
  EXPECT_EQ(effective_resistance(gen::path_bidirected(2), 0), Rational(1));
  Digraph g3 = gen::path_bidirected(3);
  EXPECT_EQ(effective_resistance(g3, 0), Rational(2));
  EXPECT_EQ(effective_resistance(g3, 1), Rational(1));
  EXPECT_EQ(max_effective_resistance(g3), Rational(2));
  Digraph parallel = gen::bidirected(2, {{0, 1}, {0, 1}}, Vertex{1});
  EXPECT_EQ(effective_resistance(parallel, 0), Rational(1, 2));
}

TEST(Resistance, RejectsDirectedGraphs) {
  EXPECT_THROW(effective_resistance(gen::directed_torus(3), 1), InvalidInput);
}

TEST(CheckedArithmetic, Overflow) {
  EXPECT_THROW(detail::checked_add(INT64_MAX, 1), CounterOverflow);
  EXPECT_THROW(detail::checked_mul(INT64_MAX / 2, 3), CounterOverflow);
  EXPECT_EQ(detail::checked_mul(-4, 5), -20);
}
