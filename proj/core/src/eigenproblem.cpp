#include "hopfwave/eigenproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "hopfwave/errors.hpp"

namespace hopfwave {

namespace {

constexpr cplx I{0.0, 1.0};

struct State {
  cplx y0, y1;
};

State axpy(const State& s, double c, const State& k) { return {s.y0 + c * k.y0, s.y1 + c * k.y1}; }

// Fixed-step RK4 over the grid; rhs(sample, state) where sample indexes
// node i (2i) or midpoint i (2i+1).
template <class Rhs>
void rk4(std::size_t M, double h, State y, Rhs rhs, std::vector<cplx>& y0, std::vector<cplx>& y1) {
  y0.assign(M + 1, cplx{});
  y1.assign(M + 1, cplx{});
  y0[0] = y.y0;
  y1[0] = y.y1;
  for (std::size_t i = 0; i < M; ++i) {
    const State k1 = rhs(2 * i, y);
    const State k2 = rhs(2 * i + 1, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(2 * i + 1, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(2 * i + 2, axpy(y, h, k3));
    y.y0 += h / 6.0 * (k1.y0 + 2.0 * k2.y0 + 2.0 * k3.y0 + k4.y0);
    y.y1 += h / 6.0 * (k1.y1 + 2.0 * k2.y1 + 2.0 * k3.y1 + k4.y1);
    y0[i + 1] = y.y0;
    y1[i + 1] = y.y1;
  }
}

// Accessor for coefficient samples interleaved as node, midpoint, node, ...
struct Interleaved {
  const CoeffSamples& nodes;
  const CoeffSamples& mids;
  double get(const std::vector<double> CoeffSamples::*field, std::size_t s) const {
    return s % 2 == 0 ? (nodes.*field)[s / 2] : (mids.*field)[s / 2];
  }
};

double abs_D(cplx mu, double tau, const LinearizedCoeffs& c) { return std::abs(shoot_evp(mu, tau, c).D); }

struct GaussNewtonRun {
  double tau = 0.0;
  double residual = 0.0;
  bool converged = false;
};

GaussNewtonRun gauss_newton(double tau, cplx mu, const LinearizedCoeffs& c, int max_iter) {
  GaussNewtonRun run;
  cplx D = shoot_evp(mu, tau, c).D;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(D) < 1e-15) {
      run.converged = true;
      break;
    }
    const double dt = 1e-6 * std::max(1.0, std::abs(tau));
    const cplx dD = (shoot_evp(mu, tau + dt, c).D - shoot_evp(mu, tau - dt, c).D) / (2.0 * dt);
    const double g = std::norm(dD);
    if (g < 1e-28) {
      // D does not depend on tau: the residual is stationary.
      run.converged = true;
      break;
    }
    double step = -std::real(std::conj(dD) * D) / g;
    double lambda = 1.0;
    cplx trial = shoot_evp(mu, tau + step, c).D;
    int halvings = 0;
    while (std::abs(trial) > std::abs(D) && halvings < 30) {
      lambda *= 0.5;
      trial = shoot_evp(mu, tau + lambda * step, c).D;
      ++halvings;
    }
    if (halvings == 30) {
      run.converged = true;  // local minimum of |D|
      break;
    }
    tau += lambda * step;
    D = trial;
    if (std::abs(lambda * step) < 1e-14 * std::max(1.0, std::abs(tau))) {
      run.converged = true;
      break;
    }
  }
  run.tau = tau;
  run.residual = std::abs(D);
  return run;
}

}  // namespace

ShootResult shoot_evp(cplx mu, double tau, const LinearizedCoeffs& coeffs) {
  const Interleaved s{coeffs.nodes_zero, coeffs.mid_zero};
  const cplx delay = std::exp(-mu * tau);
  const cplx mu2 = mu * mu;
  auto rhs = [&](std::size_t k, const State& y) {
    const double a = s.get(&CoeffSamples::a, k);
    const cplx q = mu2 - s.get(&CoeffSamples::b5, k) * mu - s.get(&CoeffSamples::b4, k) * delay -
                   s.get(&CoeffSamples::b3, k);
    return State{y.y1, (q * y.y0 - s.get(&CoeffSamples::b6, k) * y.y1) / (a * a)};
  };
  ShootResult r;
  rk4(coeffs.grid.M, coeffs.h(), State{0.0, 1.0}, rhs, r.u, r.u_prime);
  r.D = r.u_prime.back();
  return r;
}

double find_tau0(double tau_guess, const LinearizedCoeffs& coeffs, const EigenOptions& opts, cplx mu_target) {
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> offset(-std::numbers::pi, std::numbers::pi);
  GaussNewtonRun best;
  bool any_converged = false;
  bool have_best = false;
  for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
    const double start = attempt == 0 ? tau_guess : tau_guess + offset(rng);
    const GaussNewtonRun run = gauss_newton(start, mu_target, coeffs, opts.max_iter);
    any_converged = any_converged || run.converged;
    if (run.converged && run.residual < opts.tol_eig) return run.tau;
    if (!have_best || run.residual < best.residual) {
      best = run;
      have_best = true;
    }
  }
  if (!any_converged) throw NoConvergence("find_tau0: Gauss-Newton iteration cap reached");
  std::ostringstream msg;
  msg << "find_tau0: smallest |D(mu, tau)| = " << best.residual << " at tau = " << best.tau << " exceeds "
      << opts.tol_eig;
  throw ResidualAboveTolerance(msg.str(), best.tau, best.residual);
}

std::vector<ResonanceEntry> check_A2(double tau0, int K_max, const LinearizedCoeffs& coeffs) {
  if (K_max < 2) throw InvalidArgument("check_A2 needs K_max >= 2");
  std::vector<ResonanceEntry> scan;
  scan.push_back({0, abs_D(cplx(0.0, 0.0), tau0, coeffs)});
  for (int k = 2; k <= K_max; ++k) {
    scan.push_back({-k, abs_D(cplx(0.0, -k), tau0, coeffs)});
    scan.push_back({k, abs_D(cplx(0.0, k), tau0, coeffs)});
  }
  return scan;
}

bool a2_passes(const std::vector<ResonanceEntry>& scan, double tol_resonance) {
  return std::all_of(scan.begin(), scan.end(), [&](const ResonanceEntry& e) { return e.abs_D > tol_resonance; });
}

namespace {

std::size_t argmax_modulus(const std::vector<cplx>& u) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < u.size(); ++i)
    if (std::abs(u[i]) > std::abs(u[best])) best = i;
  return best;
}

}  // namespace

Eigenpair critical_eigenpair(double tau0, const LinearizedCoeffs& coeffs) {
  ShootResult r = shoot_evp(I, tau0, coeffs);
  const cplx scale = r.u[argmax_modulus(r.u)];
  Eigenpair e;
  e.mu = I;
  e.tau = tau0;
  e.u0.resize(r.u.size());
  e.u0_prime.resize(r.u.size());
  for (std::size_t i = 0; i < r.u.size(); ++i) {
    e.u0[i] = r.u[i] / scale;
    e.u0_prime[i] = r.u_prime[i] / scale;
  }
  return e;
}

AdjointPair solve_adjoint(double tau0, const LinearizedCoeffs& coeffs, double tol_eig) {
  // y0 = u, y1 = (a^2 u)' - b6 u = a^2 u' + (2 a a' - b6) u
  const Interleaved s{coeffs.nodes_zero, coeffs.mid_zero};
  const cplx delay = std::exp(I * tau0);
  auto rhs = [&](std::size_t k, const State& y) {
    const double a = s.get(&CoeffSamples::a, k);
    const double drift = 2.0 * a * s.get(&CoeffSamples::ax, k) - s.get(&CoeffSamples::b6, k);
    const cplx q = -1.0 + I * s.get(&CoeffSamples::b5, k) - s.get(&CoeffSamples::b4, k) * delay -
                   s.get(&CoeffSamples::b3, k);
    return State{(y.y1 - drift * y.y0) / (a * a), q * y.y0};
  };
  const auto& n = coeffs.nodes_zero;
  std::vector<cplx> u, flux;
  rk4(coeffs.grid.M, coeffs.h(), State{0.0, n.a[0] * n.a[0]}, rhs, u, flux);

  const std::size_t np = u.size();
  const cplx scale = u[argmax_modulus(u)];
  const double robin = std::abs(flux.back() / scale);
  if (!(robin <= tol_eig)) {
    std::ostringstream msg;
    msg << "adjoint Robin condition at x = 1 fails: residual " << robin;
    throw AdjointInconsistent(msg.str());
  }

  AdjointPair adj;
  adj.robin_residual = robin;
  adj.u_star.resize(np);
  adj.u_star_prime.resize(np);
  std::vector<cplx> weight(np);
  for (std::size_t i = 0; i < np; ++i) {
    const double drift = 2.0 * n.a[i] * n.ax[i] - n.b6[i];
    adj.u_star[i] = u[i] / scale;
    adj.u_star_prime[i] = (flux[i] - drift * u[i]) / (n.a[i] * n.a[i]) / scale;
    weight[i] = (n.b3[i] + n.b4[i] * delay) * adj.u_star[i];
  }
  const std::vector<cplx> cum = cumulative_integral(weight, coeffs.h());
  adj.U_star.resize(np);
  for (std::size_t i = 0; i < np; ++i) {
    const cplx tail = cum.back() - cum[i];
    adj.U_star[i] = (n.b6[i] / n.a[i] - 2.0 * n.ax[i]) * adj.u_star[i] - n.a[i] * adj.u_star_prime[i] + tail / n.a[i];
  }
  return adj;
}

TransversalityData compute_sigma_rho(const Eigenpair& eig, const AdjointPair& adj, const LinearizedCoeffs& coeffs,
                                     double tol_sigma, double tol_rho) {
  const auto& n = coeffs.nodes_zero;
  const double tau0 = eig.tau;
  const cplx delay = std::exp(-I * tau0);
  const std::size_t np = eig.u0.size();
  std::vector<cplx> fs(np), fr(np);
  for (std::size_t i = 0; i < np; ++i) {
    const cplx pair = eig.u0[i] * std::conj(adj.u_star[i]);
    fs[i] = (2.0 * I - n.b5[i] + tau0 * delay * n.b4[i]) * pair;
    fr[i] = n.b4[i] * pair;
  }
  TransversalityData t;
  t.sigma = integrate(fs, coeffs.h());
  if (std::abs(t.sigma) < tol_sigma) throw SigmaZero("sigma vanishes: |sigma| = " + std::to_string(std::abs(t.sigma)));
  t.rho = std::imag(delay / t.sigma * integrate(fr, coeffs.h()));
  if (std::abs(t.rho) < tol_rho) throw RhoZero("rho vanishes: rho = " + std::to_string(t.rho));
  return t;
}

std::pair<Eigenpair, AdjointPair> normalize(const Eigenpair& eig, const AdjointPair& adj, cplx sigma) {
  if (sigma == cplx{}) throw SigmaZero("cannot normalize with sigma = 0");
  AdjointPair out = adj;
  const cplx f = 1.0 / std::conj(sigma);
  for (auto* v : {&out.u_star, &out.u_star_prime, &out.U_star})
    for (auto& z : *v) z *= f;
  return {eig, out};
}

HopfCertificate certify(const ProblemSpec& spec, double tau_guess, std::size_t M, const EigenOptions& opts) {
  HopfCertificate cert;
  cert.M = M;
  cert.K_max = opts.K_max;
  cert.seed = opts.seed;
  const LinearizedCoeffs coeffs = linearize(spec, 0.0, M);

  cert.fredholm = fredholm_integral(coeffs);
  cert.flags.fredholm = std::abs(cert.fredholm) > opts.tol_fredholm;

  try {
    cert.tau0 = find_tau0(tau_guess, coeffs, opts);
    cert.flags.a1 = true;
  } catch (const ResidualAboveTolerance& e) {
    cert.tau0 = e.tau();
    cert.notes.push_back(e.what());
  }

  cert.a2_scan = check_A2(cert.tau0, opts.K_max, coeffs);
  cert.flags.a2 = a2_passes(cert.a2_scan, opts.tol_resonance);
  if (!cert.flags.a2) cert.notes.push_back("resonance detected within |k| <= K_max");
  cert.notes.push_back("nonresonance checked only for |k| <= " + std::to_string(opts.K_max));

  cert.eigenpair = critical_eigenpair(cert.tau0, coeffs);
  try {
    cert.adjoint = solve_adjoint(cert.tau0, coeffs, opts.tol_eig);
  } catch (const AdjointInconsistent& e) {
    cert.notes.push_back(e.what());
    cert.flags.a1 = false;
    cert.adjoint = solve_adjoint(cert.tau0, coeffs, std::numeric_limits<double>::infinity());
  }

  try {
    const TransversalityData t = compute_sigma_rho(cert.eigenpair, cert.adjoint, coeffs, opts.tol_sigma, 0.0);
    cert.sigma_raw = t.sigma;
    cert.flags.sigma = true;
    auto [e, a] = normalize(cert.eigenpair, cert.adjoint, t.sigma);
    cert.eigenpair = std::move(e);
    cert.adjoint = std::move(a);
    const TransversalityData n = compute_sigma_rho(cert.eigenpair, cert.adjoint, coeffs, 0.0, 0.0);
    cert.sigma = n.sigma;
    cert.rho = n.rho;
    cert.flags.rho = std::abs(cert.rho) > opts.tol_rho;
  } catch (const SigmaZero& e) {
    cert.notes.push_back(e.what());
  }
  if (cert.flags.sigma && !cert.flags.rho) cert.notes.push_back("rho vanishes");
  if (!cert.flags.fredholm) cert.notes.push_back("integral of b5/a vanishes");

  if (cert.flags.a1) {
    const LinearizedCoeffs fine = linearize(spec, 0.0, 2 * M);
    try {
      cert.tau0_fine = find_tau0(cert.tau0, fine, opts);
      cert.flags.richardson = std::abs(cert.tau0_fine - cert.tau0) <= opts.tol_richardson;
    } catch (const Error& e) {
      cert.notes.push_back(std::string("grid refinement: ") + e.what());
    }
    if (!cert.flags.richardson) cert.notes.push_back("LOW-CONFIDENCE: tau0 changes under grid doubling");
  }
  return cert;
}

}  // namespace hopfwave
