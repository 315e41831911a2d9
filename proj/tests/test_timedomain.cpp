#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hopfwave/errors.hpp"
#include "hopfwave/timedomain.hpp"

using namespace hopfwave;

namespace {

constexpr double kPi = std::numbers::pi;

ProblemSpec make(const std::string& a, const std::string& b) {
  ProblemSpec s;
  s.a = parse(a);
  s.b = parse(b);
  return s;
}

std::vector<double> sine_profile(std::size_t M, double amp) {
  std::vector<double> v(M + 1);
  for (std::size_t m = 0; m <= M; ++m) v[m] = amp * std::sin(0.5 * kPi * m / M);
  return v;
}

}  // namespace

TEST(TimeDomain, RejectsNegativeDelayAndLargeSteps) {
  const ProblemSpec s = make("2/pi", "-u1^3/6 - u2 - u3");
  EXPECT_THROW(Simulator(s, -0.1), NegativeDelayUnsupported);
  SimOptions o;
  o.M = 100;
  o.dt = 0.02;  // a dt / dx = 1.27
  EXPECT_THROW(Simulator(s, 1.0, o), CFLViolation);
  o.dt = 0.0;
  o.cfl = 1.2;
  EXPECT_THROW(Simulator(s, 1.0, o), CFLViolation);
}

TEST(TimeDomain, ZeroStateStaysZero) {
  const Simulator sim(make("1 + 0.3*sin(x)", "-u1^3/6 - u2 - u3"), 1.0);
  SimState st = sim.initial(std::vector<double>(51, 0.0), std::vector<double>(51, 0.0));
  for (int i = 0; i < 500; ++i) sim.step(st);
  EXPECT_EQ(*std::max_element(st.v1.begin(), st.v1.end()), 0.0);
  EXPECT_EQ(*std::min_element(st.v2.begin(), st.v2.end()), 0.0);
}

TEST(TimeDomain, PulseTravelsAlongCharacteristics) {
  SimOptions o;
  o.M = 800;
  const Simulator sim(make("1", "u1^3"), 0.0, o);
  std::vector<double> v1(o.M + 1), v2(o.M + 1, 0.0);
  for (std::size_t m = 0; m <= o.M; ++m) {
    const double x = static_cast<double>(m) / o.M;
    v1[m] = 1e-3 * std::exp(-std::pow((x - 0.7) / 0.05, 2));
  }
  SimState st = sim.initial(v1, v2);
  while (st.t < 0.3 - 1e-12) sim.step(st);
  const auto peak = std::max_element(st.v1.begin(), st.v1.end()) - st.v1.begin();
  EXPECT_NEAR(static_cast<double>(peak) / o.M, 0.7 - st.t, 0.01);
  const double height = *std::max_element(st.v1.begin(), st.v1.end());
  EXPECT_GT(height, 0.8e-3);
  EXPECT_LT(height, 1.0e-3);
}

TEST(TimeDomain, BoundaryConditionsHoldAfterEachStep) {
  const Simulator sim(make("2/pi", "-u1^3/6 - u2 - u3"), 1.5);
  SimState st = sim.initial(sine_profile(40, 0.1), sine_profile(40, 0.1));
  for (int i = 0; i < 100; ++i) {
    sim.step(st);
    EXPECT_DOUBLE_EQ(st.v1.front() + st.v2.front(), 0.0);
    EXPECT_DOUBLE_EQ(st.v1.back(), st.v2.back());
  }
  const auto u = sim.displacement(st.v1, st.v2);
  EXPECT_EQ(u.front(), 0.0);
}

TEST(TimeDomain, DisplacementOfSineMode) {
  const Simulator sim(make("2/pi", "-u1^3/6 - u2 - u3"), 1.5);
  // v1 - v2 = 2 a u_x for u = sin(pi x / 2)
  const std::size_t M = sim.grid().M;
  std::vector<double> v1(M + 1), v2(M + 1);
  for (std::size_t m = 0; m <= M; ++m) {
    const double x = sim.grid().x(m);
    v1[m] = std::cos(0.5 * kPi * x);
    v2[m] = -v1[m];
  }
  const auto u = sim.displacement(v1, v2);
  for (std::size_t m = 0; m <= M; m += 40) EXPECT_NEAR(u[m], std::sin(0.5 * kPi * sim.grid().x(m)), 1e-10);
}

TEST(TimeDomain, DecayBelowCriticalDelayIsReported) {
  SimOptions o;
  o.M = 200;
  const Simulator sim(make("2/pi", "u1^3/6 - u2 - u3"), 1.3, o);
  try {
    sim.run_to_orbit(sim.initial(sine_profile(200, 0.02), sine_profile(200, 0.02)), 150.0);
    FAIL() << "expected NoOscillationDetected";
  } catch (const NoOscillationDetected& e) {
    EXPECT_LT(e.final_amplitude(), 0.02);
  }
}

TEST(TimeDomain, AffineProblemIsFlagged) {
  SimOptions o;
  o.M = 200;
  const Simulator sim(make("2/pi", "-u2 - u3"), 1.5707963267948966, o);
  EXPECT_THROW(sim.run_to_orbit(sim.initial(sine_profile(200, 0.02), sine_profile(200, 0.02)), 80.0),
               NoOscillationDetected);
}

TEST(TimeDomain, SettlesOnPeriodicOrbitAboveCriticalDelay) {
  SimOptions o;
  o.M = 200;
  const Simulator sim(make("2/pi", "-u1^3/6 - u2 - u3"), 1.62, o);
  const SimResult r = sim.run_to_orbit(sim.initial(sine_profile(200, 0.7), sine_profile(200, 0.7)), 300.0);
  EXPECT_NEAR(r.period, 2 * kPi, 0.1);
  EXPECT_GT(r.amplitude, 0.05);
  EXPECT_GE(r.crossings, 3u);
  EXPECT_EQ(r.final_u.size(), 201u);
}
