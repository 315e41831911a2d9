#include "hopfwave/orbit_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "hopfwave/errors.hpp"

namespace hopfwave {

namespace {

constexpr cplx I{0.0, 1.0};

struct Evaluation {
  std::vector<double> r;
  double field_norm = 0.0;
  double constraint_norm = 0.0;
  double merit = 0.0;
};

}  // namespace

OrbitSolver::OrbitSolver(const ProblemSpec& spec, const HopfCertificate& cert, double lambda, const SolverOptions& opts)
    : opts_(opts), ops_(spec, lambda, opts.N, opts.M), tau0_(cert.tau0), lambda_(lambda) {
  const std::size_t M = opts.M;
  const auto u0 = resample(cert.eigenpair.u0, M);
  const auto du0 = resample(cert.eigenpair.u0_prime, M);
  const auto us = resample(cert.adjoint.u_star, M);
  const auto Us = resample(cert.adjoint.U_star, M);
  const auto& z = ops_.coeffs().nodes_zero;
  const std::size_t np = M + 1;
  const double h = ops_.coeffs().h();

  v0_[0].resize(np);
  v0_[1].resize(np);
  std::vector<double> density(np);
  std::vector<cplx> tail_density(np);
  const cplx delay = std::exp(I * tau0_);
  for (std::size_t m = 0; m < np; ++m) {
    v0_[0][m] = I * u0[m] + z.a[m] * du0[m];
    v0_[1][m] = I * u0[m] - z.a[m] * du0[m];
    density[m] = 0.5 * (std::norm(v0_[0][m]) + std::norm(v0_[1][m]));
    tail_density[m] = (z.b3[m] + z.b4[m] * delay) * us[m];
  }
  v0_norm_ = integrate(density, h);

  const auto cum = cumulative_integral(tail_density, h);
  psi_[0].resize(np);
  psi_[1].resize(np);
  for (std::size_t m = 0; m < np; ++m) {
    const cplx tail = (cum.back() - cum[m]) / z.a[m];
    psi_[0][m] = tail + z.b1[m] * (us[m] - I * Us[m]);
    psi_[1][m] = -tail + z.b2[m] * (us[m] + I * Us[m]);
  }
}

PeriodicOrbit OrbitSolver::predictor(double eps) const {
  PeriodicOrbit o;
  o.v = ops_.zero();
  for (int j = 0; j < 2; ++j)
    for (std::size_t m = 0; m < o.v.nodes(); ++m) o.v(j, 1, m) = 0.5 * eps * v0_[j][m];
  o.omega = 1.0;
  o.tau = tau0_;
  o.eps = eps;
  o.lambda = lambda_;
  return o;
}

cplx OrbitSolver::project_first_harmonic(const FourierField& v, const std::vector<cplx>* w) const {
  std::vector<cplx> f(v.nodes());
  for (std::size_t m = 0; m < f.size(); ++m) f[m] = v(0, 1, m) * std::conj(w[0][m]) + v(1, 1, m) * std::conj(w[1][m]);
  return integrate(f, ops_.coeffs().h());
}

double OrbitSolver::amplitude(const FourierField& v) const { return project_first_harmonic(v, v0_).real() / v0_norm_; }

double OrbitSolver::phase(const FourierField& v) const { return project_first_harmonic(v, v0_).imag(); }

std::vector<double> OrbitSolver::pack(const PeriodicOrbit& orbit) const {
  const std::size_t n = FourierField::packed_size(opts_.N, opts_.M);
  std::vector<double> z(n + 2);
  orbit.v.pack(std::span<double>(z.data(), n));
  z[n] = orbit.omega;
  z[n + 1] = orbit.tau;
  return z;
}

PeriodicOrbit OrbitSolver::unpack(const std::vector<double>& z, double eps) const {
  const std::size_t n = FourierField::packed_size(opts_.N, opts_.M);
  PeriodicOrbit o;
  o.v = FourierField::unpack(opts_.N, opts_.M, std::span<const double>(z.data(), n));
  o.omega = z[n];
  o.tau = z[n + 1];
  o.eps = eps;
  o.lambda = lambda_;
  return o;
}

std::vector<double> OrbitSolver::residual(const PeriodicOrbit& orbit) const {
  const std::size_t n = FourierField::packed_size(opts_.N, opts_.M);
  std::vector<double> r(n + 2);
  const FourierField F = ops_.fixed_point_residual(orbit.v, orbit.omega, orbit.tau);
  F.pack(std::span<double>(r.data(), n));
  r[n] = amplitude(orbit.v) - orbit.eps;
  r[n + 1] = phase(orbit.v);
  return r;
}

PeriodicOrbit OrbitSolver::newton_solve(const PeriodicOrbit& guess, double eps) const {
  const std::size_t n = FourierField::packed_size(opts_.N, opts_.M);
  const std::size_t dim = n + 2;

  auto evaluate = [&](const std::vector<double>& z) {
    Evaluation e;
    PeriodicOrbit o = unpack(z, eps);
    e.r = residual(o);
    for (std::size_t i = 0; i < n; ++i) e.field_norm = std::max(e.field_norm, std::abs(e.r[i]));
    e.constraint_norm = std::max(std::abs(e.r[n]), std::abs(e.r[n + 1]));
    double s = 0.0;
    for (double x : e.r) s += x * x;
    e.merit = std::sqrt(s);
    return e;
  };
  auto converged = [&](const Evaluation& e) {
    return e.field_norm <= opts_.tol_orbit && e.constraint_norm <= opts_.tol_constraint;
  };

  std::vector<double> z = pack(guess);
  Evaluation cur = evaluate(z);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  bool need_jacobian = true;
  for (int it = 0; it <= opts_.max_iter; ++it) {
    if (converged(cur)) {
      PeriodicOrbit o = unpack(z, eps);
      o.residual_norm = cur.field_norm;
      o.iterations = it;
      return o;
    }
    if (it == opts_.max_iter) break;
    if (need_jacobian) {
      Eigen::MatrixXd J(dim, dim);
      std::vector<double> zp = z;
      for (std::size_t j = 0; j < dim; ++j) {
        const double step = opts_.fd_step * std::max(1.0, std::abs(z[j]));
        zp[j] = z[j] + step;
        const PeriodicOrbit o = unpack(zp, eps);
        const std::vector<double> rp = residual(o);
        for (std::size_t i = 0; i < dim; ++i) J(i, j) = (rp[i] - cur.r[i]) / step;
        zp[j] = z[j];
      }
      lu.compute(J);
      double rc = lu.rcond();
      if (!std::isfinite(rc)) rc = 0.0;  // exactly singular pivots
      if (!(rc >= opts_.min_rcond)) {
        std::ostringstream msg;
        msg << "Newton Jacobian is singular (rcond = " << rc << ") at eps = " << eps;
        throw JacobianSingular(msg.str(), rc);
      }
    }
    const Eigen::Map<const Eigen::VectorXd> r(cur.r.data(), static_cast<Eigen::Index>(dim));
    const Eigen::VectorXd dz = lu.solve(-r);

    double t = 1.0;
    std::vector<double> trial_z(dim);
    Evaluation trial;
    for (;;) {
      for (std::size_t i = 0; i < dim; ++i) trial_z[i] = z[i] + t * dz[static_cast<Eigen::Index>(i)];
      trial = evaluate(trial_z);
      if (trial.merit < cur.merit || t < 1.0 / 64.0) break;
      t *= 0.5;
    }
    const double ratio = trial.merit / std::max(cur.merit, 1e-300);
    z = std::move(trial_z);
    cur = std::move(trial);
    need_jacobian = ratio > 0.1;
  }
  std::ostringstream msg;
  msg << "Newton did not converge at eps = " << eps << " (field residual " << cur.field_norm << ")";
  throw NoConvergence(msg.str());
}

BranchResult OrbitSolver::continue_branch(const std::vector<double>& eps_grid) const {
  if (eps_grid.size() < 3) throw InvalidArgument("continuation needs at least three eps values for the fit");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0)) throw InvalidArgument("eps values must be positive");
    if (i > 0 && !(eps_grid[i] > eps_grid[i - 1])) throw InvalidArgument("eps grid must be increasing");
  }
  BranchResult branch;
  branch.tau0 = tau0_;
  double last_good = 0.0;
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    const double eps = eps_grid[i];
    PeriodicOrbit guess;
    if (i == 0) {
      guess = predictor(eps);
    } else {
      const PeriodicOrbit& prev = branch.orbits.back();
      const double s = eps / prev.eps;
      guess = prev;
      guess.v *= s;
      guess.omega = 1.0 + (prev.omega - 1.0) * s * s;
      guess.tau = tau0_ + (prev.tau - tau0_) * s * s;
      guess.eps = eps;
    }
    try {
      branch.orbits.push_back(newton_solve(guess, eps));
    } catch (const NoConvergence& e) {
      throw NoConvergence(e.what(), last_good);
    }
    last_good = eps;
  }
  fit_branch(branch);
  return branch;
}

void fit_branch(BranchResult& branch) {
  if (branch.orbits.size() < 3) throw InvalidArgument("fit needs three orbits");
  std::vector<const PeriodicOrbit*> sorted;
  for (const auto& o : branch.orbits) sorted.push_back(&o);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->eps < b->eps; });
  sorted.resize(3);

  auto fit = [&](auto value, double& curvature, double& slope) {
    double s4 = 0.0, sy2 = 0.0;
    Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
    Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
    for (const PeriodicOrbit* o : sorted) {
      const double e = o->eps;
      const double y = value(*o);
      s4 += e * e * e * e;
      sy2 += y * e * e;
      const Eigen::Vector2d phi(e, 0.5 * e * e);
      A += phi * phi.transpose();
      rhs += phi * y;
    }
    curvature = 2.0 * sy2 / s4;
    slope = A.ldlt().solve(rhs)(0);
  };
  fit([&](const PeriodicOrbit& o) { return o.tau - branch.tau0; }, branch.fit_tau_curvature, branch.fit_tau_slope);
  fit([](const PeriodicOrbit& o) { return o.omega - 1.0; }, branch.fit_omega_curvature, branch.fit_omega_slope);
}

ScalarField OrbitSolver::reconstruct_u(const PeriodicOrbit& orbit, std::size_t samples) const {
  const int N = opts_.N;
  const TimeGrid tg(N, samples ? samples : 4 * static_cast<std::size_t>(N) + 1);
  const auto& a = ops_.coeffs().nodes.a;
  ScalarField f;
  f.times = tg.samples();
  f.nodes = orbit.v.nodes();
  f.harmonics = ops_.integrate_u(orbit.v);
  f.t.resize(f.times);
  for (std::size_t n = 0; n < f.times; ++n) f.t[n] = tg.time(n);
  f.u.resize(f.times * f.nodes);
  f.omega_ut.resize(f.u.size());
  f.ux.resize(f.u.size());
  std::vector<cplx> cu(N + 1), ct(N + 1), cx(N + 1);
  std::vector<double> tu(f.times), tt(f.times), tx(f.times);
  for (std::size_t m = 0; m < f.nodes; ++m) {
    for (int k = 0; k <= N; ++k) {
      cu[k] = f.harmonics[k][m];
      ct[k] = 0.5 * (orbit.v(0, k, m) + orbit.v(1, k, m));
      cx[k] = 0.5 * (orbit.v(0, k, m) - orbit.v(1, k, m)) / a[m];
    }
    tg.synthesize(cu, tu);
    tg.synthesize(ct, tt);
    tg.synthesize(cx, tx);
    for (std::size_t n = 0; n < f.times; ++n) {
      f.u[n * f.nodes + m] = tu[n];
      f.omega_ut[n * f.nodes + m] = tt[n];
      f.ux[n * f.nodes + m] = tx[n];
    }
  }
  return f;
}

double OrbitSolver::pde_residual_check(const PeriodicOrbit& orbit) const {
  const int N = opts_.N;
  const TimeGrid tg(N, 4 * static_cast<std::size_t>(N) + 1);
  const std::size_t Nt = tg.samples();
  const std::size_t np = orbit.v.nodes();
  const double h = ops_.coeffs().h();
  const auto& a = ops_.coeffs().nodes.a;
  const auto uk = ops_.integrate_u(orbit.v);
  const double w = orbit.omega;

  std::vector<double> u(Nt * np), utt(Nt * np), ut(Nt * np), ud(Nt * np);
  std::vector<cplx> c0(N + 1), c1(N + 1), c2(N + 1), c3(N + 1);
  std::vector<double> t0(Nt), t1(Nt), t2(Nt), t3(Nt);
  for (std::size_t m = 0; m < np; ++m) {
    for (int k = 0; k <= N; ++k) {
      const cplx c = uk[k][m];
      c0[k] = c;
      c1[k] = -static_cast<double>(k * k) * w * w * c;
      c2[k] = I * static_cast<double>(k) * w * c;
      c3[k] = c * std::polar(1.0, -k * w * orbit.tau);
    }
    tg.synthesize(c0, t0);
    tg.synthesize(c1, t1);
    tg.synthesize(c2, t2);
    tg.synthesize(c3, t3);
    for (std::size_t n = 0; n < Nt; ++n) {
      u[n * np + m] = t0[n];
      utt[n * np + m] = t1[n];
      ut[n * np + m] = t2[n];
      ud[n * np + m] = t3[n];
    }
  }

  const CompiledExpr b = ops_.spec().nonlinearity().compile();
  std::array<double, kVarCount> vars{};
  vars[static_cast<std::size_t>(Var::lambda)] = lambda_;
  double worst = 0.0;
  for (std::size_t n = 0; n < Nt; ++n) {
    const double* row = u.data() + n * np;
    for (std::size_t m = 2; m + 2 < np; ++m) {
      const double uxx = (-row[m - 2] + 16.0 * row[m - 1] - 30.0 * row[m] + 16.0 * row[m + 1] - row[m + 2]) / (12.0 * h * h);
      const double ux = (row[m - 2] - 8.0 * row[m - 1] + 8.0 * row[m + 1] - row[m + 2]) / (12.0 * h);
      vars[static_cast<std::size_t>(Var::x)] = ops_.coeffs().grid.x(m);
      vars[static_cast<std::size_t>(Var::u1)] = row[m];
      vars[static_cast<std::size_t>(Var::u2)] = ud[n * np + m];
      vars[static_cast<std::size_t>(Var::u3)] = ut[n * np + m];
      vars[static_cast<std::size_t>(Var::u4)] = ux;
      const double r = utt[n * np + m] - a[m] * a[m] * uxx - b.eval(std::span<const double, kVarCount>(vars));
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

std::vector<cplx> OrbitSolver::cokernel_weights() const {
  // Left null vector of the linearized first-harmonic block at (1, tau0). Its
  // interior matches the adjoint weights psi up to a factor; the end entries
  // carry the point terms at r_2(0) and r_1(1).
  const std::size_t np = opts_.M + 1;
  const std::size_t n = 2 * np;
  const double delta = 1e-7;
  Eigen::MatrixXcd A(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    FourierField v = ops_.zero();
    v(static_cast<int>(c / np), 1, c % np) = delta;
    const FourierField r = ops_.fixed_point_residual(v, 1.0, tau0_);
    for (std::size_t i = 0; i < n; ++i) A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = r(static_cast<int>(i / np), 1, i % np) / delta;
  }
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A.adjoint());
  Eigen::VectorXcd y = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(n));
  for (int it = 0; it < 3; ++it) {
    y = lu.solve(y);
    y /= y.norm();
  }
  const double h = ops_.coeffs().h();
  cplx num = 0.0;
  double den = 0.0;
  for (int j = 0; j < 2; ++j)
    for (std::size_t m = 6; m + 6 < np; ++m) {
      const cplx w = h * psi_[j][m];
      num += y(static_cast<Eigen::Index>(j * np + m)) * std::conj(w);
      den += std::norm(w);
    }
  const cplx q = num / den;
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = y(static_cast<Eigen::Index>(i)) / q;
  return out;
}

HDerivatives OrbitSolver::h_derivatives(double eps, double step) const {
  const std::vector<cplx> y = cokernel_weights();
  const std::size_t np = opts_.M + 1;
  const FourierField v = predictor(eps).v;
  auto diff = [&](double w_plus, double t_plus, double w_minus, double t_minus) {
    FourierField d = ops_.fixed_point_residual(v, w_plus, t_plus);
    d -= ops_.fixed_point_residual(v, w_minus, t_minus);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < 2 * np; ++i) acc += std::conj(y[i]) * d(static_cast<int>(i / np), 1, i % np);
    return acc / (2.0 * step * eps);
  };
  HDerivatives hd;
  hd.d_omega = diff(1.0 + step, tau0_, 1.0 - step, tau0_);
  hd.d_tau = diff(1.0, tau0_ + step, 1.0, tau0_ - step);
  return hd;
}

}  // namespace hopfwave
