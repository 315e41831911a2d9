#include "hopfwave/direction.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "hopfwave/errors.hpp"

namespace hopfwave {

namespace {

constexpr cplx I{0.0, 1.0};

const char* const kCaveat =
    "sign of rho * tau'' suggests orbital stability only heuristically; no stability proof is available for "
    "hyperbolic problems of this type";

void check_sampled_zero(const CompiledExpr& e, const std::vector<Bindings>& points, double tol, const char* what,
                        bool quadratic) {
  for (const Bindings& p : points) {
    const double v = e.eval(p);
    if (std::abs(v) > tol) {
      std::ostringstream msg;
      msg << what << " = " << v << " at x = " << p[Var::x] << ", lambda = " << p[Var::lambda];
      if (quadratic) throw QuadraticTermPresent(msg.str());
      throw NotSeparable(msg.str());
    }
  }
}

}  // namespace

CubicCoeffs check_structure(const ProblemSpec& spec, std::size_t M, double tol) {
  std::vector<Bindings> at_origin;
  std::vector<Bindings> scattered;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (double lam : {spec.lambda, 0.0}) {
    for (int i = 0; i <= 32; ++i) {
      const double x = i / 32.0;
      at_origin.emplace_back(x, lam);
      scattered.emplace_back(x, lam, U(rng), U(rng), U(rng), U(rng));
    }
  }

  std::array<Expr, 4> terms;
  if (spec.beta) {
    terms = *spec.beta;
    for (std::size_t j = 0; j < 4; ++j) {
      for (Var v : kStateVars)
        if (v != kStateVars[j] && terms[j].depends_on(v))
          throw NotSeparable("beta_" + std::to_string(j + 1) + " depends on " + std::string(var_name(v)));
      check_sampled_zero(terms[j].compile(), at_origin, tol, "beta_j(x, lambda, 0)", true);
    }
  } else {
    const Expr b = spec.nonlinearity();
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        const std::string what = "d^2 b / d" + std::string(var_name(kStateVars[i])) + " d" +
                                 std::string(var_name(kStateVars[j]));
        check_sampled_zero(b.diff(kStateVars[i]).diff(kStateVars[j]).compile(), scattered, tol, what.c_str(), false);
      }
    terms.fill(b);
  }

  CubicCoeffs cubic;
  cubic.grid = UniformGrid(M);
  std::vector<Bindings> at_zero;
  for (std::size_t i = 0; i <= M; ++i) at_zero.emplace_back(cubic.grid.x(i), 0.0);
  std::vector<Bindings> origin_zero;
  for (const Bindings& p : at_origin)
    if (p[Var::lambda] == 0.0) origin_zero.push_back(p);
  for (std::size_t j = 0; j < 4; ++j) {
    const Var v = kStateVars[j];
    const std::string what = "d^2 b / d" + std::string(var_name(v)) + "^2 at u = 0";
    check_sampled_zero(terms[j].diff(v, 2).compile(), origin_zero, tol, what.c_str(), true);
    const CompiledExpr third = terms[j].diff(v, 3).compile();
    cubic.beta0[j].resize(M + 1);
    for (std::size_t i = 0; i <= M; ++i) cubic.beta0[j][i] = third.eval(at_zero[i]);
  }
  return cubic;
}

double compute_direction(const HopfCertificate& cert, const CubicCoeffs& cubic) {
  if (!cert.flags.rho || cert.rho == 0.0) throw RhoZero("direction undefined for rho = 0");
  const auto& u0 = cert.eigenpair.u0;
  const auto& du0 = cert.eigenpair.u0_prime;
  const auto& us = cert.adjoint.u_star;
  const std::size_t np = u0.size();
  std::array<std::vector<double>, 4> beta;
  for (std::size_t j = 0; j < 4; ++j) beta[j] = resample(cubic.beta0[j], np - 1);

  const cplx delay = std::exp(-I * cert.tau0);
  std::vector<cplx> f(np);
  for (std::size_t i = 0; i < np; ++i) {
    const cplx cubic_u = (beta[0][i] + beta[1][i] * delay + I * beta[2][i]) * std::norm(u0[i]) * u0[i];
    const cplx cubic_ux = beta[3][i] * std::norm(du0[i]) * du0[i];
    f[i] = (cubic_u + cubic_ux) * std::conj(us[i]);
  }
  const cplx projection = integrate(f, 1.0 / static_cast<double>(np - 1)) / cert.sigma;
  return -std::real(projection) / (4.0 * cert.rho);
}

DirectionReport direction_report(const HopfCertificate& cert, const CubicCoeffs& cubic) {
  DirectionReport r;
  r.tau_curvature = compute_direction(cert, cubic);
  r.indicator = cert.rho * r.tau_curvature;
  r.supercritical = r.indicator > 0.0;
  r.caveat = kCaveat;
  return r;
}

namespace {

struct SineModeIntegrals {
  double c_sin2 = 0.0;
  double drift_sin2 = 0.0;  // int (2 - (pi/2) c) sin^2
};

double sin_power_integral(const std::vector<double>& w, int power) {
  const std::size_t n = w.size();
  const double h = 1.0 / static_cast<double>(n - 1);
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = w[i] * std::pow(std::sin(0.5 * std::numbers::pi * i * h), power);
  return integrate(f, h);
}

SineModeIntegrals sine_mode_integrals(const std::vector<double>& c) {
  std::vector<double> drift(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) drift[i] = 2.0 - 0.5 * std::numbers::pi * c[i];
  return {sin_power_integral(c, 2), sin_power_integral(drift, 2)};
}

}  // namespace

cplx sigma_sine_mode(const std::vector<double>& c) {
  const SineModeIntegrals s = sine_mode_integrals(c);
  return {-s.c_sin2, s.drift_sin2};
}

double rho_sine_mode(const std::vector<double>& c) {
  const SineModeIntegrals s = sine_mode_integrals(c);
  return s.c_sin2 * s.c_sin2 / (s.c_sin2 * s.c_sin2 + s.drift_sin2 * s.drift_sin2);
}

double direction_sine_mode(const std::vector<double>& c, const std::vector<double>& beta1,
                           const std::vector<double>& beta2, const std::vector<double>& beta3) {
  const SineModeIntegrals s = sine_mode_integrals(c);
  std::vector<double> odd(beta2.size());
  for (std::size_t i = 0; i < odd.size(); ++i) odd[i] = beta3[i] - beta2[i];
  const double rhs = -s.c_sin2 * sin_power_integral(beta1, 4) + s.drift_sin2 * sin_power_integral(odd, 4);
  const double sigma2 = s.c_sin2 * s.c_sin2 + s.drift_sin2 * s.drift_sin2;
  if (s.c_sin2 == 0.0) throw RhoZero("rho vanishes: int c sin^2 = 0");
  // -4 |sigma|^2 rho tau'' = rhs
  return -rhs / (4.0 * sigma2 * rho_sine_mode(c));
}

}  // namespace hopfwave
