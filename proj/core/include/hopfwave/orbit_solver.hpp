#pragma once

#include <vector>

#include "hopfwave/eigenproblem.hpp"
#include "hopfwave/fourier_field.hpp"
#include "hopfwave/operators.hpp"

namespace hopfwave {

struct SolverOptions {
  int N = 8;
  std::size_t M = 64;
  double tol_orbit = 1e-9;
  double tol_constraint = 1e-10;
  int max_iter = 30;
  double fd_step = 1e-7;
  double min_rcond = 1e-12;
};

struct PeriodicOrbit {
  FourierField v;
  double omega = 1.0;
  double tau = 0.0;
  double eps = 0.0;
  double lambda = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
};

struct BranchResult {
  std::vector<PeriodicOrbit> orbits;
  double tau0 = 0.0;
  double fit_tau_curvature = 0.0;
  double fit_omega_curvature = 0.0;
  double fit_tau_slope = 0.0;
  double fit_omega_slope = 0.0;
};

/// u, omega u_t and u_x on the collocation times (rows) and grid nodes (columns).
struct ScalarField {
  std::size_t times = 0;
  std::size_t nodes = 0;
  std::vector<double> t;
  std::vector<double> u, omega_ut, ux;
  std::vector<std::vector<cplx>> harmonics;  // u, k = 0..N

  double at(const std::vector<double>& f, std::size_t n, std::size_t m) const { return f[n * nodes + m]; }
};

/// Projected sensitivities of the fixed-point residual at the critical mode.
struct HDerivatives {
  cplx d_omega;
  cplx d_tau;
};

class OrbitSolver {
 public:
  OrbitSolver(const ProblemSpec& spec, const HopfCertificate& cert, double lambda, const SolverOptions& opts = {});

  const OrbitOperators& operators() const { return ops_; }
  const SolverOptions& options() const { return opts_; }
  double tau0() const { return tau0_; }

  /// Critical mode v0 = (i u0 + a0 u0', i u0 - a0 u0') on the solver grid.
  const std::vector<cplx>& critical_mode(int j) const { return v0_[j]; }

  /// v = eps Re(e^{it} v0), omega = 1, tau = tau0.
  PeriodicOrbit predictor(double eps) const;

  /// Amplitude and phase of v relative to the critical mode.
  double amplitude(const FourierField& v) const;
  double phase(const FourierField& v) const;

  /// Packed fixed-point residual followed by the amplitude and phase equations.
  std::vector<double> residual(const PeriodicOrbit& orbit) const;

  /// Damped Newton with a finite-difference Jacobian in (v, omega, tau).
  /// Throws NoConvergence or JacobianSingular.
  PeriodicOrbit newton_solve(const PeriodicOrbit& guess, double eps) const;

  /// Sequential continuation over an increasing eps grid.
  BranchResult continue_branch(const std::vector<double>& eps_grid) const;

  ScalarField reconstruct_u(const PeriodicOrbit& orbit, std::size_t samples = 0) const;

  /// Max-norm of omega^2 u_tt - a^2 u_xx - b(...) over interior nodes; spectral in t,
  /// fourth-order finite differences in x.
  double pde_residual_check(const PeriodicOrbit& orbit) const;

  /// Derivatives in omega and tau of the residual at eps v0, projected on the
  /// cokernel functional and divided by eps.
  HDerivatives h_derivatives(double eps = 1e-4, double step = 1e-6) const;

 private:
  std::vector<double> pack(const PeriodicOrbit& orbit) const;
  PeriodicOrbit unpack(const std::vector<double>& z, double eps) const;
  cplx project_first_harmonic(const FourierField& v, const std::vector<cplx>* weights) const;
  std::vector<cplx> cokernel_weights() const;

  SolverOptions opts_;
  OrbitOperators ops_;
  double tau0_;
  double lambda_;
  std::vector<cplx> v0_[2];
  std::vector<cplx> psi_[2];  // adjoint weights, interior part of the cokernel functional
  double v0_norm_ = 0.0;      // (1/2) int |v0|^2
};

/// Least-squares fits on the three smallest eps: tau - tau0 = c eps^2 / 2 and
/// tau - tau0 = s eps + c eps^2 / 2 (likewise for omega - 1).
void fit_branch(BranchResult& branch);

}  // namespace hopfwave
