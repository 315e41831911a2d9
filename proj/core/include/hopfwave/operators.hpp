#pragma once

// Partial integral operators of the fixed-point formulation
//
//   v = C(omega) v + D(omega) B(v, omega, tau)
//
// acting on truncated Fourier fields. Time shifts along characteristics are
// phase factors per harmonic; x integrals use the cumulative quadrature.

#include <vector>

#include "hopfwave/fourier_field.hpp"
#include "hopfwave/model.hpp"

namespace hopfwave {

class OrbitOperators {
 public:
  OrbitOperators(const ProblemSpec& spec, double lambda, int N, std::size_t M);

  int harmonics() const { return N_; }
  std::size_t intervals() const { return coeffs_.grid.M; }
  double lambda() const { return coeffs_.lambda; }
  const LinearizedCoeffs& coeffs() const { return coeffs_; }
  const CharKernels& kernels() const { return kernels_; }
  const TimeGrid& collocation() const { return times_; }
  const ProblemSpec& spec() const { return spec_; }

  FourierField zero() const { return FourierField(N_, intervals()); }

  /// Boundary transport: out_1 = -c1(x,0) v_2(t + omega A(x,0), 0),
  /// out_2 = c2(x,1) v_1(t - omega A(x,1), 1).
  FourierField apply_C(const FourierField& v, double omega) const;

  /// Integration along characteristics of the source f.
  FourierField apply_D(const FourierField& f, double omega) const;

  /// Nonlinear source (B_1, B_2) = B - (b_1 v_1, b_2 v_2) evaluated pseudo-spectrally
  /// on the collocation times.
  FourierField apply_B(const FourierField& v, double omega, double tau) const;

  /// u = (1/2) int_0^x (v_1 - v_2)/a, one row of nodal coefficients per harmonic k = 0..N.
  std::vector<std::vector<cplx>> integrate_u(const FourierField& v) const;

  /// v - C v - D B(v).
  FourierField fixed_point_residual(const FourierField& v, double omega, double tau) const;

 private:
  /// e^{i omega phi(x_m)}
  std::vector<cplx> phase_table(double omega) const;

  ProblemSpec spec_;
  int N_;
  LinearizedCoeffs coeffs_;
  CharKernels kernels_;
  TimeGrid times_;
  CompiledExpr b_;
  std::vector<double> e1_, e2_;  // exp(p1), exp(-p2) on nodes
};

}  // namespace hopfwave
