#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hopfwave/errors.hpp"
#include "hopfwave/orbit_solver.hpp"
#include "oracles.hpp"

using namespace hopfwave;

namespace {

constexpr double kPi = std::numbers::pi;

ProblemSpec damped() {
  ProblemSpec s;
  s.a = parse("2/pi");
  s.b = parse("-u1^3/6 - u2 - u3");
  return s;
}

SolverOptions small_grid() {
  SolverOptions o;
  o.N = 5;
  o.M = 40;
  return o;
}

struct Fixture {
  ProblemSpec spec = damped();
  HopfCertificate cert = certify(spec, 1.5);
  OrbitSolver solver{spec, cert, 0.0, small_grid()};
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

}  // namespace

TEST(OrbitSolver, PredictorIsScaledCriticalMode) {
  const auto& s = fixture().solver;
  const PeriodicOrbit p = s.predictor(0.03);
  EXPECT_DOUBLE_EQ(p.omega, 1.0);
  EXPECT_DOUBLE_EQ(p.tau, s.tau0());
  EXPECT_NEAR(s.amplitude(p.v), 0.03, 1e-13);
  EXPECT_NEAR(s.phase(p.v), 0.0, 1e-13);
  const ScalarField u = s.reconstruct_u(p);
  const std::size_t M = u.nodes - 1;
  for (std::size_t m = 0; m <= M; ++m) {
    const double x = static_cast<double>(m) / M;
    EXPECT_NEAR(std::abs(u.harmonics[1][m] - 0.015 * std::sin(0.5 * kPi * x)), 0.0, 1e-7);
    EXPECT_NEAR(std::abs(u.harmonics[0][m]), 0.0, 1e-15);
  }
}

TEST(OrbitSolver, PredictorResidualIsSecondOrder) {
  const auto& s = fixture().solver;
  auto field_norm = [&](double eps) {
    const auto r = s.residual(s.predictor(eps));
    double n = 0.0;
    for (std::size_t i = 0; i + 2 < r.size(); ++i) n = std::max(n, std::abs(r[i]));
    return n;
  };
  // The cubic nonlinearity leaves an eps^3 defect; the linear part is exact at the Hopf point.
  EXPECT_NEAR(field_norm(0.02) / field_norm(0.01), 8.0, 0.1);
}

TEST(OrbitSolver, ZeroAmplitudeGivesTrivialOrbit) {
  const auto& s = fixture().solver;
  const PeriodicOrbit o = s.newton_solve(s.predictor(0.0), 0.0);
  EXPECT_EQ(o.v.max_abs(), 0.0);
  EXPECT_NEAR(o.omega, 1.0, 1e-12);
  EXPECT_NEAR(o.tau, s.tau0(), 1e-12);
}

TEST(OrbitSolver, SmallAmplitudeConvergesQuickly) {
  const auto& s = fixture().solver;
  const PeriodicOrbit o = s.newton_solve(s.predictor(1e-3), 1e-3);
  EXPECT_LE(o.iterations, 5);
  EXPECT_LT(std::abs(o.omega - 1.0), 1e-5);
  EXPECT_LT(std::abs(o.tau - s.tau0()), 1e-5);
  EXPECT_LT(o.residual_norm, 1e-9);
  EXPECT_NEAR(s.amplitude(o.v), 1e-3, 1e-10);
  EXPECT_NEAR(s.phase(o.v), 0.0, 1e-10);
}

TEST(OrbitSolver, DelayShiftScalesWithSquareOfAmplitude) {
  const auto& s = fixture().solver;
  const PeriodicOrbit a = s.newton_solve(s.predictor(0.02), 0.02);
  const PeriodicOrbit b = s.newton_solve(s.predictor(0.04), 0.04);
  const double ratio = (b.tau - s.tau0()) / (a.tau - s.tau0());
  EXPECT_NEAR(ratio, 4.0, 0.05);
  EXPECT_GT(a.tau, s.tau0());
}

TEST(OrbitSolver, PhaseConditionSelectsOneShift) {
  const auto& s = fixture().solver;
  const PeriodicOrbit o = s.newton_solve(s.predictor(0.03), 0.03);
  EXPECT_NEAR(s.amplitude(o.v.shifted(kPi)), -0.03, 1e-9);
  for (double phi : {0.3, 1.0, 2.0}) EXPECT_GT(std::abs(s.phase(o.v.shifted(phi))), 1e-3) << phi;
}

TEST(OrbitSolver, OrbitSatisfiesBoundaryConditionsAndPde) {
  const auto& s = fixture().solver;
  const PeriodicOrbit o = s.newton_solve(s.predictor(0.05), 0.05);
  const ScalarField u = s.reconstruct_u(o);
  const std::size_t M = u.nodes - 1;
  for (std::size_t n = 0; n < u.times; ++n) {
    EXPECT_NEAR(u.at(u.u, n, 0), 0.0, 1e-15);
    EXPECT_NEAR(u.at(u.ux, n, M), 0.0, 1e-10);
  }
  EXPECT_LT(s.pde_residual_check(o), 1e-6);
}

TEST(OrbitSolver, ContinuationAndFits) {
  const auto& s = fixture().solver;
  const BranchResult br = s.continue_branch({0.01, 0.02, 0.03, 0.04});
  ASSERT_EQ(br.orbits.size(), 4u);
  for (const auto& o : br.orbits) EXPECT_LT(o.residual_norm, 1e-9);
  EXPECT_NEAR(br.fit_tau_curvature, 0.1875, 5e-4);
  EXPECT_LT(std::abs(br.fit_tau_slope), 1e-6);
  EXPECT_LT(std::abs(br.fit_omega_slope), 1e-6);
}

TEST(OrbitSolver, RejectsDegenerateGrids) {
  const auto& s = fixture().solver;
  EXPECT_THROW(s.continue_branch({0.01, 0.02}), InvalidArgument);
  EXPECT_THROW(s.continue_branch({0.01, 0.01, 0.02}), InvalidArgument);
  EXPECT_THROW(s.continue_branch({-0.01, 0.01, 0.02}), InvalidArgument);
}

TEST(OrbitSolver, SensitivitiesAtTheCriticalMode) {
  ProblemSpec s;
  s.a = parse("2/pi");
  s.b = parse("u2 + u3");
  const HopfCertificate cert = certify(s, 1.5);
  const OrbitSolver solver(s, cert, 0.0);
  const HDerivatives h = solver.h_derivatives();
  EXPECT_NEAR(std::abs(h.d_omega - cplx(0.0, 1.0)), 0.0, 1e-6);
  EXPECT_NEAR(h.d_tau.real(), -oracle::rho_sine(), 1e-5);
}

TEST(OrbitSolver, UndampedStringHasSingularJacobian) {
  ProblemSpec s;
  s.a = parse("2/pi");
  s.b = parse("u1^3");
  const HopfCertificate cert = certify(s, 1.0);
  SolverOptions o;
  o.N = 4;
  o.M = 32;
  const OrbitSolver solver(s, cert, 0.0, o);
  EXPECT_ANY_THROW(solver.newton_solve(solver.predictor(0.01), 0.01));
}

TEST(OrbitSolver, ParameterContinuity) {
  ProblemSpec s;
  s.a = parse("2/pi");
  s.b = parse("-u1^3/6 - (1 + lambda)*(u2 + u3)");
  const HopfCertificate cert = certify(s, 1.5);
  const OrbitSolver at0(s, cert, 0.0, small_grid());
  const OrbitSolver near(s, cert, 1e-6, small_grid());
  const PeriodicOrbit a = at0.newton_solve(at0.predictor(0.02), 0.02);
  const PeriodicOrbit b = near.newton_solve(near.predictor(0.02), 0.02);
  EXPECT_LT(std::abs(a.tau - b.tau), 1e-4);
  EXPECT_LT((a.v - b.v).max_abs(), 1e-4);
}
