#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hopfwave/errors.hpp"
#include "hopfwave/expr.hpp"

using namespace hopfwave;

TEST(Expr, EvaluatesArithmeticWithPrecedence) {
  EXPECT_DOUBLE_EQ(parse("1 + 2*3").eval({}), 7.0);
  EXPECT_DOUBLE_EQ(parse("(1 + 2)*3").eval({}), 9.0);
  EXPECT_DOUBLE_EQ(parse("2^3^2").eval({}), 512.0);
  EXPECT_DOUBLE_EQ(parse("-2^2").eval({}), -4.0);
  EXPECT_DOUBLE_EQ(parse("8/4/2").eval({}), 1.0);
  EXPECT_DOUBLE_EQ(parse("1e-3*2.5E2").eval({}), 0.25);
}

TEST(Expr, BindsVariablesAndFunctions) {
  const Bindings b(0.3, 0.1, 0.5, -0.25, 2.0, -1.0);
  const Expr e = parse("sin(x) + cos(lambda)*u1 - exp(u2) + sqrt(u3) + tanh(u4)");
  const double want = std::sin(0.3) + std::cos(0.1) * 0.5 - std::exp(-0.25) + std::sqrt(2.0) + std::tanh(-1.0);
  EXPECT_NEAR(e.eval(b), want, 1e-15);
  EXPECT_NEAR(e.compile().eval(b), want, 1e-15);
}

TEST(Expr, PiIsNamedConstant) {
  EXPECT_DOUBLE_EQ(parse("2/pi").eval({}), 2.0 / std::numbers::pi);
  EXPECT_TRUE(parse("2/pi").is_constant());
}

TEST(Expr, RejectsNonIntegerExponent) {
  EXPECT_THROW(parse("u1^1.5"), SyntaxError);
  EXPECT_THROW(parse("u1^x"), SyntaxError);
  EXPECT_NO_THROW(parse("u1^(-2)"));
}

TEST(Expr, ReportsSyntaxErrorPosition) {
  try {
    parse("1 + * 2");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse("(1 + 2"), SyntaxError);
  EXPECT_THROW(parse(""), SyntaxError);
  EXPECT_THROW(parse("1 2"), SyntaxError);
}

TEST(Expr, RejectsUnknownIdentifiers) {
  try {
    parse("u5 + 1");
    FAIL() << "expected UnknownIdentifier";
  } catch (const UnknownIdentifier& e) {
    EXPECT_EQ(e.name(), "u5");
    EXPECT_EQ(e.position(), 0u);
  }
  EXPECT_THROW(parse("log(x)"), UnknownIdentifier);
}

TEST(Expr, DomainErrorsAtEvaluation) {
  EXPECT_THROW(parse("1/x").eval(Bindings(0.0, 0.0)), DomainError);
  EXPECT_THROW(parse("sqrt(x - 1)").eval(Bindings(0.0, 0.0)), DomainError);
  EXPECT_THROW(parse("x^(-1)").eval(Bindings(0.0, 0.0)), DomainError);
  EXPECT_THROW(parse("1/x").compile().eval(Bindings(0.0, 0.0)), DomainError);
}

TEST(Expr, SymbolicDerivativesMatchFiniteDifferences) {
  const Expr e = parse("sin(x)*u1^3/6 + exp(0.3*u2)*cos(u3) + tanh(u4*x) + sqrt(2 + u1^2)");
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-0.8, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    Bindings b(0.5 * (d(rng) + 1.0), 0.0, d(rng), d(rng), d(rng), d(rng));
    for (Var v : kStateVars) {
      const double h = 1e-5;
      Bindings bp = b, bm = b;
      bp[v] += h;
      bm[v] -= h;
      const double fd = (e.eval(bp) - e.eval(bm)) / (2 * h);
      EXPECT_NEAR(e.diff(v).eval(b), fd, 1e-8);
      const double fd2 = (e.eval(bp) - 2 * e.eval(b) + e.eval(bm)) / (h * h);
      EXPECT_NEAR(e.diff(v, 2).eval(b), fd2, 1e-4);
    }
  }
}

TEST(Expr, ThirdDerivativeOfCubicIsExact) {
  const Expr e = parse("(1 + x)*u1^3/6");
  EXPECT_DOUBLE_EQ(e.diff(Var::u1, 3).eval(Bindings(0.5, 0.0)), 1.5);
  EXPECT_DOUBLE_EQ(e.diff(Var::u1, 4).eval(Bindings(0.5, 0.0, 0.7)), 0.0);
}

TEST(Expr, DependencyQuery) {
  const Expr e = parse("x*u2 + lambda");
  EXPECT_TRUE(e.depends_on(Var::x));
  EXPECT_TRUE(e.depends_on(Var::u2));
  EXPECT_TRUE(e.depends_on(Var::lambda));
  EXPECT_FALSE(e.depends_on(Var::u1));
}

TEST(Expr, PrintedFormReparsesToSameValues) {
  const char* sources[] = {"u1^3/6 + u2 + u3", "-(x - 2)*sin(pi*x/2)^2", "exp(-lambda)*u4/(1 + x^2)", "2^3^2 - -1"};
  const Bindings b(0.37, 0.2, 0.3, -0.4, 0.5, 0.9);
  for (const char* s : sources) {
    const Expr e = parse(s);
    const Expr again = parse(e.to_string());
    EXPECT_NEAR(again.eval(b), e.eval(b), 1e-14) << s << " -> " << e.to_string();
  }
}

TEST(Expr, CompiledMatchesTreeEvaluation) {
  const Expr e = parse("((u1 + u2)*(u3 - u4))^2/(1 + x) + cos(lambda*u1)");
  const CompiledExpr c = e.compile();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    Bindings b(0.5 * (d(rng) + 1.0), d(rng), d(rng), d(rng), d(rng), d(rng));
    EXPECT_DOUBLE_EQ(c.eval(b), e.eval(b));
  }
}
