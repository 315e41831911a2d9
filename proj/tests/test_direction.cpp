#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "hopfwave/direction.hpp"
#include "hopfwave/errors.hpp"
#include "oracles.hpp"

using namespace hopfwave;

namespace {

ProblemSpec with_cubic(const std::string& cubic, const std::string& linear = "u2 + u3") {
  ProblemSpec s;
  s.a = parse("2/pi");
  s.b = parse(linear + " + " + cubic);
  return s;
}

double curvature_of(const ProblemSpec& s) {
  const HopfCertificate cert = certify(s, 1.5);
  return compute_direction(cert, check_structure(s, cert.M));
}

}  // namespace

TEST(Direction, SingleChannelsMatchGalerkinOracle) {
  EXPECT_NEAR(curvature_of(with_cubic("u1^3/6")), oracle::kCurvatureBeta1, 1e-7);
  EXPECT_NEAR(curvature_of(with_cubic("u2^3/6")), oracle::kCurvatureBeta2, 1e-7);
  EXPECT_NEAR(curvature_of(with_cubic("u3^3/6")), oracle::kCurvatureBeta3, 1e-7);
  EXPECT_NEAR(curvature_of(with_cubic("u4^3/6")), oracle::kCurvatureBeta4, 1e-7);
}

TEST(Direction, LinearInTheCubicCoefficients) {
  const double combined = curvature_of(with_cubic("0.5*u1^3 - 0.25*u3^3 + 2*u4^3"));
  const double want =
      6 * (0.5 * oracle::kCurvatureBeta1 - 0.25 * oracle::kCurvatureBeta3 + 2 * oracle::kCurvatureBeta4);
  EXPECT_NEAR(combined, want, 1e-6);
}

TEST(Direction, ReportSignConvention) {
  ProblemSpec s = with_cubic("-u1^3/6", "-u2 - u3");
  const HopfCertificate cert = certify(s, 1.5);
  const DirectionReport r = direction_report(cert, check_structure(s, cert.M));
  EXPECT_NEAR(r.tau_curvature, 0.1875, 1e-7);
  EXPECT_NEAR(r.indicator, cert.rho * r.tau_curvature, 1e-14);
  EXPECT_GT(cert.rho, 0.0);
  EXPECT_TRUE(r.supercritical);
}

TEST(Direction, AgreesWithSineModeClosedFormForRandomProfiles) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> d(-0.3, 0.3);
  const std::size_t M = 256;
  for (int trial = 0; trial < 20; ++trial) {
    const double c1 = d(rng), c2 = d(rng);
    const double p[3] = {d(rng) * 3, d(rng) * 3, d(rng) * 3};
    const double q[3] = {d(rng), d(rng), d(rng)};
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "(1 + %.17g*x + %.17g*x^2)*(u2 + u3) + (%.17g + %.17g*x)*u1^3/6 + (%.17g + %.17g*x)*u2^3/6 + "
                  "(%.17g + %.17g*x)*u3^3/6",
                  c1, c2, p[0], q[0], p[1], q[1], p[2], q[2]);
    ProblemSpec s;
    s.a = parse("2/pi");
    s.b = parse(buf);

    std::vector<double> c(M + 1), b1(M + 1), b2(M + 1), b3(M + 1);
    for (std::size_t m = 0; m <= M; ++m) {
      const double x = static_cast<double>(m) / M;
      c[m] = 1 + c1 * x + c2 * x * x;
      b1[m] = p[0] + q[0] * x;
      b2[m] = p[1] + q[1] * x;
      b3[m] = p[2] + q[2] * x;
    }
    const HopfCertificate cert = certify(s, 1.5, M);
    EXPECT_NEAR(cert.rho, rho_sine_mode(c), 1e-8);
    EXPECT_NEAR(compute_direction(cert, check_structure(s, M)), direction_sine_mode(c, b1, b2, b3), 1e-8) << buf;
  }
}

TEST(Direction, StructureChecks) {
  EXPECT_THROW(check_structure(with_cubic("u1^2"), 64), QuadraticTermPresent);
  EXPECT_THROW(check_structure(with_cubic("u1*u3^2"), 64), NotSeparable);
  EXPECT_THROW(check_structure(with_cubic("u1*u2*u3"), 64), NotSeparable);
  EXPECT_NO_THROW(check_structure(with_cubic("x*u1^3 + u4^5"), 64));
  const CubicCoeffs cc = check_structure(with_cubic("(1 + x)*u1^3/6 + 2*u4^3"), 32);
  EXPECT_NEAR(cc.beta0[0][16], 1.5, 1e-12);
  EXPECT_NEAR(cc.beta0[3][0], 12.0, 1e-12);
  EXPECT_NEAR(cc.beta0[1][7], 0.0, 1e-12);
}

TEST(Direction, SeparableBetaFormIsAccepted) {
  ProblemSpec s;
  s.a = parse("2/pi");
  s.beta = std::array<Expr, 4>{parse("u1^3/6"), parse("u2"), parse("u3"), parse("0")};
  EXPECT_NEAR(curvature_of(s), oracle::kCurvatureBeta1, 1e-7);
}

TEST(Direction, ZeroRhoRaises) {
  ProblemSpec s;
  s.a = parse("2/pi");
  s.b = parse("u1^3");
  HopfCertificate cert = certify(s, 1.0);
  EXPECT_THROW(compute_direction(cert, check_structure(s, cert.M)), RhoZero);
}
