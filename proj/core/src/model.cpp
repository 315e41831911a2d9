#include "hopfwave/model.hpp"

#include <cmath>
#include <sstream>

#include "hopfwave/errors.hpp"

namespace hopfwave {

Expr ProblemSpec::nonlinearity() const {
  if (b) return *b;
  if (beta) return (*beta)[0] + (*beta)[1] + (*beta)[2] + (*beta)[3];
  return Expr();
}

void ProblemSpec::validate(std::size_t samples) const {
  if (b && beta) throw InvalidProblem("give either b or beta, not both");
  if (beta) {
    for (std::size_t j = 0; j < 4; ++j) {
      for (Var v : kStateVars) {
        if (v != kStateVars[j] && (*beta)[j].depends_on(v))
          throw InvalidProblem("beta_" + std::to_string(j + 1) + " depends on " + std::string(var_name(v)));
      }
    }
  }
  for (Var v : kStateVars) {
    if (a.depends_on(v)) throw InvalidProblem("a must not depend on " + std::string(var_name(v)));
  }
  const Expr bx = nonlinearity();
  const CompiledExpr ac = a.compile();
  const CompiledExpr bc = bx.compile();
  for (double lam : {lambda, 0.0}) {
    for (std::size_t i = 0; i <= samples; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(samples);
      const Bindings at(x, lam);
      const double av = ac.eval(at);
      if (!(av > 0.0)) {
        std::ostringstream msg;
        msg << "a(x, lambda) must be positive; a(" << x << ", " << lam << ") = " << av;
        throw InvalidProblem(msg.str());
      }
      const double bv = bc.eval(at);
      if (std::abs(bv) > 1e-12) {
        std::ostringstream msg;
        msg << "b(x, lambda, 0, 0, 0, 0) must vanish; got " << bv << " at x = " << x << ", lambda = " << lam;
        throw InvalidProblem(msg.str());
      }
    }
  }
}

CoeffSamples sample_coefficients(const ProblemSpec& spec, double lambda, const std::vector<double>& xs) {
  const Expr bx = spec.nonlinearity();
  const CompiledExpr a = spec.a.compile();
  const CompiledExpr ax = spec.a.diff(Var::x).compile();
  std::array<CompiledExpr, 4> bj;
  for (std::size_t j = 0; j < 4; ++j) bj[j] = bx.diff(kStateVars[j]).compile();

  CoeffSamples s;
  const std::size_t n = xs.size();
  for (auto* v : {&s.a, &s.ax, &s.b3, &s.b4, &s.b5, &s.b6, &s.b1, &s.b2}) v->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Bindings at(xs[i], lambda);
    s.a[i] = a.eval(at);
    s.ax[i] = ax.eval(at);
    s.b3[i] = bj[0].eval(at);
    s.b4[i] = bj[1].eval(at);
    s.b5[i] = bj[2].eval(at);
    s.b6[i] = bj[3].eval(at);
    s.b1[i] = 0.5 * (-s.ax[i] + s.b5[i] + s.b6[i] / s.a[i]);
    s.b2[i] = 0.5 * (s.ax[i] + s.b5[i] - s.b6[i] / s.a[i]);
  }
  return s;
}

LinearizedCoeffs linearize(const ProblemSpec& spec, double lambda, std::size_t M) {
  if (M < 16) throw InvalidArgument("linearize needs M >= 16");
  LinearizedCoeffs c;
  c.grid = UniformGrid(M);
  c.lambda = lambda;
  const std::vector<double> xs = c.grid.nodes();
  std::vector<double> mids(M);
  for (std::size_t i = 0; i < M; ++i) mids[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(M);
  c.nodes = sample_coefficients(spec, lambda, xs);
  c.nodes_zero = lambda == 0.0 ? c.nodes : sample_coefficients(spec, 0.0, xs);
  c.mid_zero = sample_coefficients(spec, 0.0, mids);
  return c;
}

CharKernels::CharKernels(const LinearizedCoeffs& coeffs) : grid_(coeffs.grid) {
  const auto& s = coeffs.nodes;
  const std::size_t n = grid_.size();
  std::vector<double> inv(n), r1(n), r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv[i] = 1.0 / s.a[i];
    r1[i] = s.b1[i] / s.a[i];
    r2[i] = s.b2[i] / s.a[i];
  }
  phi_ = cumulative_integral(inv, grid_.h());
  p1_ = cumulative_integral(r1, grid_.h());
  p2_ = cumulative_integral(r2, grid_.h());
}

double CharKernels::at(const std::vector<double>& table, double x) const {
  return interpolate(table, grid_.h(), x);
}

double CharKernels::A(double x, double xi) const {
  if (x == xi) return 0.0;
  return at(phi_, x) - at(phi_, xi);
}

double CharKernels::c1(double x, double xi) const {
  if (x == xi) return 1.0;
  return std::exp(at(p1_, xi) - at(p1_, x));
}

double CharKernels::c2(double x, double xi) const {
  if (x == xi) return 1.0;
  return std::exp(at(p2_, x) - at(p2_, xi));
}

CharKernels kernels(const LinearizedCoeffs& coeffs) { return CharKernels(coeffs); }

double fredholm_integral(const LinearizedCoeffs& coeffs) {
  const auto& s = coeffs.nodes_zero;
  std::vector<double> f(s.a.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = s.b5[i] / s.a[i];
  return integrate(f, coeffs.h());
}

}  // namespace hopfwave
