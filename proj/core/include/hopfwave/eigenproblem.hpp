#pragma once

// Critical eigenvalue problem of the linearization at u = 0, lambda = 0:
//
//   (mu^2 - b5 mu - b4 e^{-mu tau} - b3) u = a^2 u'' + b6 u',   u(0) = u'(1) = 0,
//
// solved by shooting from x = 0 with u(0) = 0, u'(0) = 1.  The mismatch
// D(mu, tau) = u'(1) is the characteristic function.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hopfwave/model.hpp"

namespace hopfwave {

struct EigenOptions {
  double tol_eig = 1e-8;
  double tol_resonance = 1e-6;
  double tol_rho = 1e-8;
  double tol_sigma = 1e-8;
  double tol_fredholm = 1e-8;
  double tol_richardson = 1e-8;
  int max_iter = 100;
  int restarts = 8;
  std::uint64_t seed = 20240229;
  int K_max = 50;
};

struct ShootResult {
  cplx D;
  std::vector<cplx> u;
  std::vector<cplx> u_prime;
};

struct Eigenpair {
  cplx mu{0.0, 1.0};
  double tau = 0.0;
  std::vector<cplx> u0;
  std::vector<cplx> u0_prime;
};

struct AdjointPair {
  std::vector<cplx> u_star;
  std::vector<cplx> u_star_prime;
  std::vector<cplx> U_star;
  double robin_residual = 0.0;
};

struct ResonanceEntry {
  int k = 0;
  double abs_D = 0.0;
};

struct CertificateFlags {
  bool a1 = false;          // |D(i, tau0)| below tol_eig
  bool a2 = false;          // no resonance for 0 < |k| <= K_max, k != 1
  bool sigma = false;       // |sigma| above tol
  bool rho = false;         // |rho| above tol
  bool fredholm = false;    // |int b5/a| above tol
  bool richardson = false;  // tau0 stable under grid doubling
  bool passed() const { return a1 && a2 && sigma && rho && fredholm; }
};

struct HopfCertificate {
  std::size_t M = 0;
  double tau0 = 0.0;
  Eigenpair eigenpair;
  AdjointPair adjoint;
  cplx sigma_raw;       // before normalization, max-modulus scaled eigenfunctions
  cplx sigma{1.0, 0.0}; // after normalization
  double rho = 0.0;
  double fredholm = 0.0;
  double tau0_fine = 0.0;  // tau0 on the doubled grid
  int K_max = 0;
  std::vector<ResonanceEntry> a2_scan;
  CertificateFlags flags;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

ShootResult shoot_evp(cplx mu, double tau, const LinearizedCoeffs& coeffs);

/// Damped Gauss-Newton on |D(mu_target, tau)|^2 with seeded restarts.
/// Throws NoConvergence or ResidualAboveTolerance.
double find_tau0(double tau_guess, const LinearizedCoeffs& coeffs, const EigenOptions& opts = {},
                 cplx mu_target = cplx(0.0, 1.0));

/// |D(ik, tau0)| for k = 0, +-2, ..., +-K_max.
std::vector<ResonanceEntry> check_A2(double tau0, int K_max, const LinearizedCoeffs& coeffs);
bool a2_passes(const std::vector<ResonanceEntry>& scan, double tol_resonance);

/// Shoots the adjoint problem; throws AdjointInconsistent if the Robin
/// condition at x = 1 fails by more than tol_eig.
AdjointPair solve_adjoint(double tau0, const LinearizedCoeffs& coeffs, double tol_eig = 1e-8);

/// Eigenpair at (i, tau0) scaled so its value of largest modulus is 1.
Eigenpair critical_eigenpair(double tau0, const LinearizedCoeffs& coeffs);

struct TransversalityData {
  cplx sigma;
  double rho = 0.0;
};

/// Throws SigmaZero or RhoZero below the given tolerances.
TransversalityData compute_sigma_rho(const Eigenpair& eig, const AdjointPair& adj, const LinearizedCoeffs& coeffs,
                                     double tol_sigma = 1e-8, double tol_rho = 1e-8);

/// Rescales u_star by 1/conj(sigma) so the recomputed sigma is 1.
std::pair<Eigenpair, AdjointPair> normalize(const Eigenpair& eig, const AdjointPair& adj, cplx sigma);

/// Full pipeline at lambda = 0. Never throws for failed conditions; they are
/// recorded in the flags. Throws NoConvergence if tau0 cannot be located.
HopfCertificate certify(const ProblemSpec& spec, double tau_guess, std::size_t M = 256, const EigenOptions& opts = {});

}  // namespace hopfwave
