#include <gtest/gtest.h>

#include "hopfwave/errors.hpp"
#include "problem_file.hpp"

using namespace hopfwave;
using hopfwave::cli::parse_problem;

TEST(ProblemFile, DefaultsApply) {
  const auto p = parse_problem(R"j({"a": "2/pi", "b": "u2 + u3"})j");
  EXPECT_DOUBLE_EQ(p.tau_guess, 1.0);
  EXPECT_EQ(p.eigen_M, 256u);
  EXPECT_EQ(p.solver.N, 8);
  EXPECT_EQ(p.solver.M, 64u);
  EXPECT_EQ(p.eps_grid.size(), 10u);
  EXPECT_FALSE(p.simulate.tau.has_value());
}

TEST(ProblemFile, ReadsNestedSections) {
  const auto p = parse_problem(R"j({
    "a": "1 + 0.1*x", "b": "-u1^3 - u2 - u3", "lambda": 0.01, "tau_guess": 2, "seed": 7,
    "eigen": {"M": 128, "K_max": 20},
    "solver": {"N": 6, "M": 48, "eps_grid": [0.01, 0.02, 0.03], "tolerances": {"orbit": 1e-8}},
    "simulate": {"tau": 1.6, "T": 50, "M": 100}
  })j");
  EXPECT_DOUBLE_EQ(p.spec.lambda, 0.01);
  EXPECT_EQ(p.eigen.seed, 7u);
  EXPECT_EQ(p.eigen_M, 128u);
  EXPECT_EQ(p.eigen.K_max, 20);
  EXPECT_EQ(p.solver.N, 6);
  EXPECT_DOUBLE_EQ(p.solver.tol_orbit, 1e-8);
  EXPECT_EQ(p.eps_grid.size(), 3u);
  EXPECT_DOUBLE_EQ(*p.simulate.tau, 1.6);
  EXPECT_EQ(p.simulate.options.M, 100u);
}

TEST(ProblemFile, BetaForm) {
  const auto p = parse_problem(R"j({"a": "2/pi", "beta": ["u1^3/6", "u2", "u3", "0"]})j");
  ASSERT_TRUE(p.spec.beta.has_value());
  EXPECT_FALSE(p.spec.b.has_value());
  EXPECT_THROW(parse_problem(R"j({"a": "2/pi", "beta": ["u1", "u2"]})j"), InvalidProblem);
}

TEST(ProblemFile, RejectsUnknownKeysAtEveryLevel) {
  EXPECT_THROW(parse_problem(R"j({"a": "1", "b": "u2", "speed": 1})j"), Error);
  EXPECT_THROW(parse_problem(R"j({"a": "1", "b": "u2", "solver": {"N": 4, "colour": 1}})j"), Error);
  EXPECT_THROW(parse_problem(R"j({"a": "1", "b": "u2", "solver": {"tolerances": {"orbitt": 1}}})j"), Error);
  EXPECT_THROW(parse_problem(R"j({"a": "1", "b": "u2", "simulate": {"dx": 1}})j"), Error);
}

TEST(ProblemFile, RejectsBadValues) {
  EXPECT_THROW(parse_problem(R"j({"a": "1"})j"), InvalidProblem);
  EXPECT_THROW(parse_problem(R"j({"a": "1", "b": "sinh(u1)"})j"), UnknownIdentifier);
  EXPECT_THROW(parse_problem(R"j({"a": "1", "b": "u1 +"})j"), SyntaxError);
  EXPECT_THROW(parse_problem(R"j({"a": "1", "b": "u2", "solver": {"M": 8}})j"), Error);
  EXPECT_THROW(parse_problem(R"j({"a": "x - 1", "b": "u2"})j"), InvalidProblem);
  EXPECT_THROW(parse_problem("not json"), Error);
}
