#include <gtest/gtest.h>

#include <cmath>

#include "hopfwave/errors.hpp"
#include "hopfwave/quadrature.hpp"

using namespace hopfwave;

namespace {

std::vector<double> sample(std::size_t M, double (*f)(double)) {
  UniformGrid g(M);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g.x(i));
  return v;
}

}  // namespace

TEST(Quadrature, CumulativeIntegralExactForQuintics) {
  UniformGrid g(17);
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = g.x(i);
    f[i] = 1 - 2 * x + 3 * x * x - x * x * x * x + 6 * std::pow(x, 5);
  }
  const auto F = cumulative_integral(f, g.h());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = g.x(i);
    const double want = x - x * x + x * x * x - std::pow(x, 5) / 5 + std::pow(x, 6);
    EXPECT_NEAR(F[i], want, 1e-14);
  }
}

TEST(Quadrature, SixthOrderConvergence) {
  auto err = [](std::size_t M) {
    const auto F = cumulative_integral(sample(M, [](double x) { return std::exp(std::sin(3 * x)); }), 1.0 / M);
    // reference by a fine grid
    const auto R = cumulative_integral(sample(8 * M, [](double x) { return std::exp(std::sin(3 * x)); }), 1.0 / (8 * M));
    double e = 0.0;
    for (std::size_t i = 0; i <= M; ++i) e = std::max(e, std::abs(F[i] - R[8 * i]));
    return e;
  };
  const double e1 = err(16), e2 = err(32);
  EXPECT_GT(e1 / e2, 40.0);
}

TEST(Quadrature, ComplexIntegrate) {
  UniformGrid g(64);
  std::vector<cplx> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::polar(1.0, 2.0 * g.x(i));
  const cplx want = (std::polar(1.0, 2.0) - 1.0) / cplx(0.0, 2.0);
  EXPECT_NEAR(std::abs(integrate(f, g.h()) - want), 0.0, 1e-11);
}

TEST(Quadrature, InterpolationIsExactAtNodesAndAccurateBetween) {
  const std::size_t M = 40;
  const auto v = sample(M, [](double x) { return std::cos(2 * x); });
  for (std::size_t i = 0; i <= M; ++i) EXPECT_NEAR(interpolate(v, 1.0 / M, static_cast<double>(i) / M), v[i], 1e-15);
  for (double x : {0.0013, 0.31, 0.5001, 0.977, 1.0}) EXPECT_NEAR(interpolate(v, 1.0 / M, x), std::cos(2 * x), 1e-9);
}

TEST(Quadrature, ResampleSubsamplesAndInterpolates) {
  const auto v = sample(64, [](double x) { return std::sin(x) + x * x; });
  const auto coarse = resample(v, 16);
  ASSERT_EQ(coarse.size(), 17u);
  for (std::size_t i = 0; i <= 16; ++i) EXPECT_DOUBLE_EQ(coarse[i], v[4 * i]);
  const auto odd = resample(v, 50);
  for (std::size_t i = 0; i <= 50; ++i) {
    const double x = static_cast<double>(i) / 50;
    EXPECT_NEAR(odd[i], std::sin(x) + x * x, 1e-11);
  }
}

TEST(Quadrature, RejectsTooFewNodes) {
  EXPECT_THROW(UniformGrid(4), InvalidArgument);
  EXPECT_THROW(cumulative_integral(std::vector<double>(5, 1.0), 0.25), InvalidArgument);
}
