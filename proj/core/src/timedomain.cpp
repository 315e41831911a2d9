#include "hopfwave/timedomain.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "hopfwave/errors.hpp"

namespace hopfwave {

namespace {

// True when every second derivative in the state variables vanishes at a few
// random states, i.e. b is affine in u.
bool affine_in_state(const Expr& b, double lambda) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<CompiledExpr> second;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) second.push_back(b.diff(kStateVars[i]).diff(kStateVars[j]).compile());
  for (int trial = 0; trial < 8; ++trial) {
    Bindings at(0.5 * (dist(rng) + 1.0), lambda, dist(rng), dist(rng), dist(rng), dist(rng));
    for (const auto& d : second)
      if (std::abs(d.eval(at)) > 1e-12) return false;
  }
  return true;
}

}  // namespace

Simulator::Simulator(const ProblemSpec& spec, double tau, const SimOptions& opts)
    : spec_(spec), tau_(tau), opts_(opts), grid_(opts.M), b_(spec.nonlinearity().compile()) {
  if (tau < 0.0) throw NegativeDelayUnsupported("time-domain simulation needs tau >= 0");
  const auto xs = grid_.nodes();
  const CoeffSamples s = sample_coefficients(spec, spec.lambda, xs);
  a_ = s.a;
  ax_ = s.ax;
  const double a_max = *std::max_element(a_.begin(), a_.end());
  const double limit = opts.cfl * grid_.h() / a_max;
  if (opts.dt > 0.0) {
    if (opts.dt * a_max / grid_.h() > 0.9 + 1e-12) {
      std::ostringstream msg;
      msg << "CFL number " << opts.dt * a_max / grid_.h() << " exceeds 0.9";
      throw CFLViolation(msg.str());
    }
    dt_ = opts.dt;
  } else {
    if (opts.cfl > 0.9 + 1e-12 || opts.cfl <= 0.0) throw CFLViolation("CFL number must lie in (0, 0.9]");
    dt_ = limit;
  }
  ring_ = static_cast<std::size_t>(std::ceil(tau / dt_)) + 2;
  linear_ = affine_in_state(spec.nonlinearity(), spec.lambda);
}

std::vector<double> Simulator::displacement(const std::vector<double>& v1, const std::vector<double>& v2) const {
  std::vector<double> d(v1.size());
  for (std::size_t m = 0; m < d.size(); ++m) d[m] = 0.5 * (v1[m] - v2[m]) / a_[m];
  return cumulative_integral(d, grid_.h());
}

SimState Simulator::initial(const std::vector<double>& v1, const std::vector<double>& v2) const {
  if (v1.size() != v2.size() || v1.size() < 6) throw InvalidArgument("initial state: mismatched or too short profiles");
  SimState s;
  s.grid = grid_;
  s.dt = dt_;
  s.v1 = v1.size() == grid_.size() ? v1 : resample(v1, grid_.M);
  s.v2 = v2.size() == grid_.size() ? v2 : resample(v2, grid_.M);
  s.v2.front() = -s.v1.front();
  s.v1.back() = s.v2.back();
  s.history.assign(ring_, displacement(s.v1, s.v2));
  s.head = 0;
  return s;
}

double Simulator::delayed(const SimState& s, std::size_t m) const {
  const double steps = tau_ / dt_;
  const auto back = static_cast<std::size_t>(steps);
  const double frac = steps - static_cast<double>(back);
  const std::size_t n = s.history.size();
  const std::size_t i0 = (s.head + n - back % n) % n;
  const std::size_t i1 = (i0 + n - 1) % n;
  return (1.0 - frac) * s.history[i0][m] + frac * s.history[i1][m];
}

void Simulator::step(SimState& s) const {
  const std::size_t np = grid_.size();
  const double dx = grid_.h();
  const double dt = s.dt;
  if (dt * *std::max_element(a_.begin(), a_.end()) / dx > 0.9 + 1e-12) throw CFLViolation("CFL number exceeds 0.9");

  s.head = (s.head + 1) % s.history.size();
  s.history[s.head] = displacement(s.v1, s.v2);
  const auto& u = s.history[s.head];

  std::vector<double> src(np);
  std::array<double, kVarCount> vars{};
  vars[static_cast<std::size_t>(Var::lambda)] = spec_.lambda;
  for (std::size_t m = 0; m < np; ++m) {
    const double diff = s.v1[m] - s.v2[m];
    vars[static_cast<std::size_t>(Var::x)] = grid_.x(m);
    vars[static_cast<std::size_t>(Var::u1)] = u[m];
    vars[static_cast<std::size_t>(Var::u2)] = delayed(s, m);
    vars[static_cast<std::size_t>(Var::u3)] = 0.5 * (s.v1[m] + s.v2[m]);
    vars[static_cast<std::size_t>(Var::u4)] = 0.5 * diff / a_[m];
    src[m] = b_.eval(std::span<const double, kVarCount>(vars)) - 0.5 * ax_[m] * diff;
  }

  std::vector<double> n1(np), n2(np);
  for (std::size_t m = 0; m + 1 < np; ++m) n1[m] = s.v1[m] + dt * (a_[m] * (s.v1[m + 1] - s.v1[m]) / dx + src[m]);
  for (std::size_t m = 1; m < np; ++m) n2[m] = s.v2[m] + dt * (-a_[m] * (s.v2[m] - s.v2[m - 1]) / dx + src[m]);
  n1[np - 1] = n2[np - 1];
  n2[0] = -n1[0];
  s.v1 = std::move(n1);
  s.v2 = std::move(n2);
  s.t += dt;
}

SimResult Simulator::run_to_orbit(SimState s, double T_end) const {
  if (!(T_end > s.t)) throw InvalidArgument("run_to_orbit: T_end must exceed the current time");
  const double h = grid_.h();
  const double t_start = s.t;
  const double t_window = t_start + opts_.discard * (T_end - t_start);
  const std::size_t stride = std::max<std::size_t>(1, opts_.trace_stride);

  SimResult r;
  std::size_t n = 0;
  while (s.t < T_end) {
    step(s);
    const double p = interpolate(s.history[s.head], h, opts_.x_probe);
    const double tp = s.t - s.dt;  // the profile just stored belongs to the start of the step
    if (n++ % stride == 0) {
      r.t.push_back(tp);
      r.probe.push_back(p);
    }
    if (tp >= t_window) {
      r.cycle_t.push_back(tp);
      r.cycle_probe.push_back(p);
    }
  }
  r.final_u = displacement(s.v1, s.v2);

  const auto& y = r.cycle_probe;
  const auto& t = r.cycle_t;
  if (y.size() < 4) throw NoOscillationDetected("analysis window is empty", 0.0);
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  r.amplitude = 0.5 * (*hi - *lo);
  if (r.amplitude < opts_.noise_floor) {
    std::ostringstream msg;
    msg << "oscillation decayed below the noise floor (amplitude " << r.amplitude << ")";
    throw NoOscillationDetected(msg.str(), r.amplitude);
  }

  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  std::vector<double> up;
  for (std::size_t i = 1; i < y.size(); ++i) {
    const double y0 = y[i - 1] - mean;
    const double y1 = y[i] - mean;
    if (y0 < 0.0 && y1 >= 0.0) up.push_back(t[i - 1] + (t[i] - t[i - 1]) * (-y0) / (y1 - y0));
  }
  r.crossings = up.size();
  if (up.size() < 3) throw NoOscillationDetected("fewer than three periods in the analysis window", r.amplitude);
  r.period = (up.back() - up.front()) / static_cast<double>(up.size() - 1);

  const std::size_t half = y.size() / 2;
  const auto [lo1, hi1] = std::minmax_element(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(half));
  const auto [lo2, hi2] = std::minmax_element(y.begin() + static_cast<std::ptrdiff_t>(half), y.end());
  const double amp1 = 0.5 * (*hi1 - *lo1);
  const double amp2 = 0.5 * (*hi2 - *lo2);
  const double drift = std::abs(amp2 - amp1) / std::max(amp1, 1e-300);
  if (linear_) {
    std::ostringstream msg;
    msg << "affine problem has no isolated limit cycle; amplitude " << r.amplitude << " did not decay";
    throw NoOscillationDetected(msg.str(), r.amplitude);
  }
  if (drift > opts_.settle_tol) {
    std::ostringstream msg;
    msg << "amplitude did not settle (relative drift " << drift << " across the analysis window)";
    throw NoOscillationDetected(msg.str(), amp2);
  }
  return r;
}

}  // namespace hopfwave
