#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hopfwave/operators.hpp"
#include "oracles.hpp"

using namespace hopfwave;

namespace {

constexpr int kN = 4;
constexpr std::size_t kM = 64;

ProblemSpec variable_problem() {
  ProblemSpec s;
  s.a = parse(oracle::kVariableA);
  s.b = parse(oracle::kVariableB);
  return s;
}

const OrbitOperators& variable_ops() {
  static const OrbitOperators ops(variable_problem(), 0.0, kN, kM);
  return ops;
}

}  // namespace

TEST(Operators, BoundaryTransportMatchesTimeShiftOracle) {
  std::mt19937_64 rng(11);
  const auto c = oracle::variable_coefficients();
  for (double omega : {1.0, 0.83}) {
    const auto v = oracle::random_field(kN, rng);
    const FourierField got = variable_ops().apply_C(v.sample(kN, kM), omega);
    EXPECT_LT(oracle::max_difference(got, oracle::boundary_transport(v, c, omega, kM)), 1e-9) << omega;
  }
}

TEST(Operators, CharacteristicIntegralMatchesQuadratureOracle) {
  std::mt19937_64 rng(12);
  const auto c = oracle::variable_coefficients();
  for (double omega : {1.0, 1.27}) {
    const auto f = oracle::random_field(kN, rng);
    const FourierField got = variable_ops().apply_D(f.sample(kN, kM), omega);
    EXPECT_LT(oracle::max_difference(got, oracle::characteristic_integral(f, c, omega, kM)), 1e-8) << omega;
  }
}

TEST(Operators, LinearSourceMatchesPointwiseOracle) {
  std::mt19937_64 rng(13);
  const auto c = oracle::variable_coefficients();
  const auto v = oracle::random_admissible_field(kN, rng);
  for (double tau : {0.0, 0.9, 2.4}) {
    const FourierField got = variable_ops().apply_B(v.sample(kN, kM), 1.1, tau);
    EXPECT_LT(oracle::max_difference(got, oracle::linear_source(v, c, 1.1, tau, kM)), 1e-8) << tau;
  }
}

TEST(Operators, OutputsAreRealFields) {
  std::mt19937_64 rng(14);
  const FourierField v = oracle::random_admissible_field(kN, rng).sample(kN, kM);
  const auto& ops = variable_ops();
  EXPECT_TRUE(ops.apply_C(v, 1.0).is_symmetric(1e-14));
  EXPECT_TRUE(ops.apply_D(v, 1.0).is_symmetric(1e-14));
  EXPECT_TRUE(ops.apply_B(v, 1.0, 0.7).is_symmetric(1e-14));
}

TEST(Operators, CommuteWithTimeShifts) {
  std::mt19937_64 rng(15);
  const FourierField v = oracle::random_admissible_field(kN, rng).sample(kN, kM);
  const auto& ops = variable_ops();
  const double phi = 0.731;
  EXPECT_LT((ops.apply_C(v.shifted(phi), 1.0) - ops.apply_C(v, 1.0).shifted(phi)).max_abs(), 1e-13);
  EXPECT_LT((ops.apply_D(v.shifted(phi), 1.0) - ops.apply_D(v, 1.0).shifted(phi)).max_abs(), 1e-13);
  EXPECT_LT((ops.apply_B(v.shifted(phi), 1.0, 1.3) - ops.apply_B(v, 1.0, 1.3).shifted(phi)).max_abs(), 1e-12);
}

TEST(Operators, ZeroMapsToZero) {
  const auto& ops = variable_ops();
  EXPECT_EQ(ops.apply_C(ops.zero(), 1.0).max_abs(), 0.0);
  EXPECT_EQ(ops.apply_D(ops.zero(), 1.0).max_abs(), 0.0);
  EXPECT_EQ(ops.apply_B(ops.zero(), 1.0, 1.0).max_abs(), 0.0);
  EXPECT_EQ(ops.fixed_point_residual(ops.zero(), 1.0, 1.0).max_abs(), 0.0);
}

TEST(Operators, CubicOfCosineHasOnlyFirstAndThirdHarmonics) {
  ProblemSpec s;
  s.a = parse("1");
  s.b = parse("u3^3");
  const OrbitOperators ops(s, 0.0, 5, 32);
  FourierField v = ops.zero();
  for (std::size_t m = 0; m <= 32; ++m) v(0, 1, m) = v(1, 1, m) = 0.5;  // v1 = v2 = cos t
  const FourierField B = ops.apply_B(v, 1.0, 0.0);
  for (int j = 0; j < 2; ++j)
    for (std::size_t m = 0; m <= 32; ++m) {
      EXPECT_NEAR(std::abs(B(j, 1, m) - 3.0 / 8), 0.0, 1e-14);
      EXPECT_NEAR(std::abs(B(j, 3, m) - 1.0 / 8), 0.0, 1e-14);
      for (int k : {0, 2, 4, 5}) EXPECT_LT(std::abs(B(j, k, m)), 1e-14);
    }
}

TEST(Operators, ConstantSpeedUndampedKernelsArePureShifts) {
  ProblemSpec s;
  s.a = parse("1");
  s.b = parse("u1^3");
  const OrbitOperators ops(s, 0.0, 2, 32);
  FourierField v = ops.zero();
  for (std::size_t m = 0; m <= 32; ++m) {
    v(0, 1, m) = 1.0;
    v(1, 1, m) = cplx(0.0, 2.0);
  }
  const FourierField out = ops.apply_C(v, 1.0);
  for (std::size_t m = 0; m <= 32; ++m) {
    const double x = m / 32.0;
    EXPECT_NEAR(std::abs(out(0, 1, m) + cplx(0.0, 2.0) * std::polar(1.0, x)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(out(1, 1, m) - std::polar(1.0, 1.0 - x)), 0.0, 1e-14);
  }
}

TEST(Operators, FixedPointResidualComposes) {
  std::mt19937_64 rng(16);
  const FourierField v = oracle::random_admissible_field(kN, rng).sample(kN, kM);
  const auto& ops = variable_ops();
  const FourierField want = v - ops.apply_C(v, 0.9) - ops.apply_D(ops.apply_B(v, 0.9, 1.2), 0.9);
  EXPECT_LT((ops.fixed_point_residual(v, 0.9, 1.2) - want).max_abs(), 1e-14);
}
