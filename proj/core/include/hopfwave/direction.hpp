#pragma once

#include <array>
#include <string>
#include <vector>

#include "hopfwave/eigenproblem.hpp"

namespace hopfwave {

/// Third derivatives beta_j^0(x) = d^3/du_j^3 b(x, 0, 0) of a separable nonlinearity.
struct CubicCoeffs {
  UniformGrid grid;
  std::array<std::vector<double>, 4> beta0;
};

/// Verifies the separable form with no quadratic part and samples beta_j^0 on
/// M intervals. Throws NotSeparable or QuadraticTermPresent.
CubicCoeffs check_structure(const ProblemSpec& spec, std::size_t M, double tol = 1e-10);

struct DirectionReport {
  double tau_curvature = 0.0;  // second derivative of tau along the branch at eps = 0
  double indicator = 0.0;      // rho * tau_curvature; positive means supercritical
  bool supercritical = false;
  std::string caveat;
};

/// Second derivative of the delay along the branch,
///
///   -1/(4 rho) Re( (1/sigma) int ((beta1 + beta2 e^{-i tau0} + i beta3) |u0|^2 u0
///                                 + beta4 |u0'|^2 u0') conj(u*) ),
///
/// using the certificate's sigma and rho. Throws RhoZero.
double compute_direction(const HopfCertificate& cert, const CubicCoeffs& cubic);

DirectionReport direction_report(const HopfCertificate& cert, const CubicCoeffs& cubic);

/// Closed form for a = 2/pi, b3 = b6 = 0, b4 = b5 = c(x), beta4 = 0 with the
/// eigenfunctions u0 = u* = sin(pi x / 2) and tau0 = pi/2. Nodal samples of
/// c and beta1..beta3 on a common uniform grid.
double direction_sine_mode(const std::vector<double>& c, const std::vector<double>& beta1,
                           const std::vector<double>& beta2, const std::vector<double>& beta3);

/// rho for the same family: (int c sin^2)^2 / |sigma|^2.
double rho_sine_mode(const std::vector<double>& c);
cplx sigma_sine_mode(const std::vector<double>& c);

}  // namespace hopfwave
