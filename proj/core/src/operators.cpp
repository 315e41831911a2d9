#include "hopfwave/operators.hpp"

#include <array>
#include <cmath>

#include "hopfwave/errors.hpp"

namespace hopfwave {

OrbitOperators::OrbitOperators(const ProblemSpec& spec, double lambda, int N, std::size_t M)
    : spec_(spec),
      N_(N),
      coeffs_(linearize(spec, lambda, M)),
      kernels_(coeffs_),
      times_(N, 4 * static_cast<std::size_t>(N) + 1),
      b_(spec.nonlinearity().compile()) {
  if (N < 1) throw InvalidArgument("OrbitOperators: need at least one harmonic");
  const std::size_t np = M + 1;
  e1_.resize(np);
  e2_.resize(np);
  for (std::size_t m = 0; m < np; ++m) {
    e1_[m] = std::exp(kernels_.p1()[m]);
    e2_[m] = std::exp(-kernels_.p2()[m]);
  }
}

std::vector<cplx> OrbitOperators::phase_table(double omega) const {
  const auto& phi = kernels_.phi();
  std::vector<cplx> ph(phi.size());
  for (std::size_t m = 0; m < phi.size(); ++m) ph[m] = std::polar(1.0, omega * phi[m]);
  return ph;
}

FourierField OrbitOperators::apply_C(const FourierField& v, double omega) const {
  FourierField out = zero();
  const std::size_t np = out.nodes();
  const std::size_t last = np - 1;
  const std::vector<cplx> ph1 = phase_table(omega);
  std::vector<cplx> ph(np, cplx(1.0, 0.0));
  for (int k = 0; k <= N_; ++k) {
    if (k > 0)
      for (std::size_t m = 0; m < np; ++m) ph[m] *= ph1[m];
    const cplx left = v(1, k, 0);
    const cplx right = v(0, k, last) * ph[last];
    for (std::size_t m = 0; m < np; ++m) {
      out(0, k, m) = -ph[m] * left / e1_[m];
      out(1, k, m) = (e2_[last] / e2_[m]) * std::conj(ph[m]) * right;
    }
  }
  out.enforce_symmetry();
  return out;
}

FourierField OrbitOperators::apply_D(const FourierField& f, double omega) const {
  FourierField out = zero();
  const std::size_t np = out.nodes();
  const double h = coeffs_.h();
  const auto& a = coeffs_.nodes.a;
  const std::vector<cplx> ph1 = phase_table(omega);
  std::vector<cplx> ph(np, cplx(1.0, 0.0));
  std::vector<cplx> g1(np), g2(np);
  for (int k = 0; k <= N_; ++k) {
    if (k > 0)
      for (std::size_t m = 0; m < np; ++m) ph[m] *= ph1[m];
    for (std::size_t m = 0; m < np; ++m) {
      g1[m] = e1_[m] * std::conj(ph[m]) * f(0, k, m) / a[m];
      g2[m] = e2_[m] * ph[m] * f(1, k, m) / a[m];
    }
    const std::vector<cplx> G1 = cumulative_integral(g1, h);
    const std::vector<cplx> G2 = cumulative_integral(g2, h);
    for (std::size_t m = 0; m < np; ++m) {
      out(0, k, m) = -ph[m] * G1[m] / e1_[m];
      out(1, k, m) = -std::conj(ph[m]) * (G2.back() - G2[m]) / e2_[m];
    }
  }
  out.enforce_symmetry();
  return out;
}

std::vector<std::vector<cplx>> OrbitOperators::integrate_u(const FourierField& v) const {
  const std::size_t np = v.nodes();
  const auto& a = coeffs_.nodes.a;
  std::vector<std::vector<cplx>> u(static_cast<std::size_t>(N_) + 1);
  std::vector<cplx> d(np);
  for (int k = 0; k <= N_; ++k) {
    for (std::size_t m = 0; m < np; ++m) d[m] = 0.5 * (v(0, k, m) - v(1, k, m)) / a[m];
    u[k] = cumulative_integral(d, coeffs_.h());
  }
  return u;
}

FourierField OrbitOperators::apply_B(const FourierField& v, double omega, double tau) const {
  const std::size_t np = v.nodes();
  const std::size_t Nt = times_.samples();
  const auto& s = coeffs_.nodes;
  const auto u = integrate_u(v);

  std::vector<cplx> delay(static_cast<std::size_t>(N_) + 1);
  for (int k = 0; k <= N_; ++k) delay[k] = std::polar(1.0, -k * omega * tau);

  FourierField out = zero();
  std::vector<cplx> cu(N_ + 1), cd(N_ + 1), ct(N_ + 1), cx(N_ + 1), cb(N_ + 1);
  std::vector<double> tu(Nt), td(Nt), tt(Nt), tx(Nt), tb(Nt);
  std::array<double, kVarCount> vars{};
  vars[static_cast<std::size_t>(Var::lambda)] = coeffs_.lambda;
  for (std::size_t m = 0; m < np; ++m) {
    for (int k = 0; k <= N_; ++k) {
      cu[k] = u[k][m];
      cd[k] = u[k][m] * delay[k];
      ct[k] = 0.5 * (v(0, k, m) + v(1, k, m));
      cx[k] = 0.5 * (v(0, k, m) - v(1, k, m)) / s.a[m];
    }
    times_.synthesize(cu, tu);
    times_.synthesize(cd, td);
    times_.synthesize(ct, tt);
    times_.synthesize(cx, tx);
    vars[static_cast<std::size_t>(Var::x)] = coeffs_.grid.x(m);
    for (std::size_t n = 0; n < Nt; ++n) {
      vars[static_cast<std::size_t>(Var::u1)] = tu[n];
      vars[static_cast<std::size_t>(Var::u2)] = td[n];
      vars[static_cast<std::size_t>(Var::u3)] = tt[n];
      vars[static_cast<std::size_t>(Var::u4)] = tx[n];
      tb[n] = b_.eval(std::span<const double, kVarCount>(vars));
    }
    times_.analyze(tb, cb);
    for (int k = 0; k <= N_; ++k) {
      const cplx v1 = v(0, k, m);
      const cplx v2 = v(1, k, m);
      const cplx common = cb[k] - 0.5 * s.ax[m] * (v1 - v2);
      out(0, k, m) = common - s.b1[m] * v1;
      out(1, k, m) = common - s.b2[m] * v2;
    }
  }
  out.enforce_symmetry();
  return out;
}

FourierField OrbitOperators::fixed_point_residual(const FourierField& v, double omega, double tau) const {
  FourierField r = v;
  r -= apply_C(v, omega);
  r -= apply_D(apply_B(v, omega, tau), omega);
  return r;
}

}  // namespace hopfwave
