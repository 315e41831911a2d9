#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hopfwave/expr.hpp"
#include "hopfwave/quadrature.hpp"

namespace hopfwave {

/// Wave speed a(x, lambda) and nonlinearity b(x, lambda, u1..u4) of
///
///   u_tt - a^2 u_xx = b(x, lambda, u, u(t - tau), u_t, u_x),  u(t,0) = u_x(t,1) = 0.
///
/// b is either one joint expression or four separable terms beta_j(x, lambda, u_j).
struct ProblemSpec {
  Expr a;
  std::optional<Expr> b;
  std::optional<std::array<Expr, 4>> beta;
  double lambda = 0.0;
  bool delay_sign_allowed = true;

  /// The joint nonlinearity; the sum of the beta terms in the separable form.
  Expr nonlinearity() const;

  /// Sampled checks a > 0 and b(x, lambda, 0, 0, 0, 0) = 0 at `lambda` and at 0.
  /// Throws InvalidProblem.
  void validate(std::size_t samples = 1024) const;
};

/// Coefficients of the linearization at u = 0, sampled on a grid.
struct CoeffSamples {
  std::vector<double> a, ax;
  std::vector<double> b3, b4, b5, b6;
  std::vector<double> b1, b2;
};

struct LinearizedCoeffs {
  UniformGrid grid;
  double lambda = 0.0;
  CoeffSamples nodes;       // at lambda
  CoeffSamples nodes_zero;  // at lambda = 0
  CoeffSamples mid_zero;    // at lambda = 0, interval midpoints (RK4 stages)

  double h() const { return grid.h(); }
};

CoeffSamples sample_coefficients(const ProblemSpec& spec, double lambda, const std::vector<double>& xs);

/// Samples a, a_x, b_3..b_6 and b_1, b_2 on M intervals. Requires M >= 16.
LinearizedCoeffs linearize(const ProblemSpec& spec, double lambda, std::size_t M);

/// Characteristic kernels built from cumulative integrals of 1/a, b_1/a and b_2/a:
///   A(x, xi)  = int_xi^x 1/a
///   c1(x, xi) = exp int_x^xi b_1/a
///   c2(x, xi) = exp int_xi^x b_2/a
class CharKernels {
 public:
  CharKernels() = default;
  explicit CharKernels(const LinearizedCoeffs& coeffs);

  double A(double x, double xi) const;
  double c1(double x, double xi) const;
  double c2(double x, double xi) const;

  /// Node tables: phi = int_0^x 1/a, p1 = int_0^x b_1/a, p2 = int_0^x b_2/a.
  const std::vector<double>& phi() const { return phi_; }
  const std::vector<double>& p1() const { return p1_; }
  const std::vector<double>& p2() const { return p2_; }
  const UniformGrid& grid() const { return grid_; }

 private:
  double at(const std::vector<double>& table, double x) const;

  UniformGrid grid_;
  std::vector<double> phi_, p1_, p2_;
};

CharKernels kernels(const LinearizedCoeffs& coeffs);

/// int_0^1 b_5^0 / a_0.
double fredholm_integral(const LinearizedCoeffs& coeffs);

}  // namespace hopfwave
