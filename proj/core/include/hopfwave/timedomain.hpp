#pragma once

// Direct time integration of the first-order form
//
//   v1_t - a v1_x = B,   v2_t + a v2_x = B,
//   B = b(x, lambda, u, u(t - tau), (v1 + v2)/2, (v1 - v2)/(2a)) - a_x (v1 - v2)/2,
//
// with v2 = -v1 at x = 0 and v1 = v2 at x = 1, in unscaled time. First-order
// upwind in space, forward Euler in time, u recovered by cumulative quadrature.

#include <cstddef>
#include <vector>

#include "hopfwave/model.hpp"

namespace hopfwave {

struct SimOptions {
  std::size_t M = 400;     // grid intervals
  double cfl = 0.9;        // dt = cfl dx / a_max unless dt > 0
  double dt = 0.0;
  double x_probe = 1.0;
  double discard = 0.8;    // leading fraction of the run treated as transient
  double noise_floor = 1e-8;
  double settle_tol = 0.05;  // relative amplitude drift allowed across the analysis window
  std::size_t trace_stride = 10;
};

struct SimState {
  UniformGrid grid;
  std::vector<double> v1, v2;
  std::vector<std::vector<double>> history;  // ring of u profiles, one per step
  std::size_t head = 0;                      // slot of the newest profile
  double t = 0.0;
  double dt = 0.0;
};

struct SimResult {
  double period = 0.0;
  double amplitude = 0.0;  // half peak-to-peak of u(., x_probe) over the analysis window
  std::size_t crossings = 0;
  std::vector<double> t, probe;              // decimated probe trace of the whole run
  std::vector<double> cycle_t, cycle_probe;  // analysis window, every step
  std::vector<double> final_u;
};

class Simulator {
 public:
  /// Throws NegativeDelayUnsupported for tau < 0 and CFLViolation for an explicit dt
  /// beyond the CFL limit.
  Simulator(const ProblemSpec& spec, double tau, const SimOptions& opts = {});

  const UniformGrid& grid() const { return grid_; }
  double dt() const { return dt_; }
  double tau() const { return tau_; }
  const SimOptions& options() const { return opts_; }

  /// State from nodal v1, v2 on any uniform grid (resampled); the history is the
  /// constant extension of the initial u.
  SimState initial(const std::vector<double>& v1, const std::vector<double>& v2) const;

  /// u = (1/2) int_0^x (v1 - v2)/a.
  std::vector<double> displacement(const std::vector<double>& v1, const std::vector<double>& v2) const;

  void step(SimState& s) const;

  /// Integrates to T_end and estimates the period from upward mean crossings of
  /// u(., x_probe) in the final (1 - discard) of the run. Throws NoOscillationDetected.
  SimResult run_to_orbit(SimState s, double T_end) const;

 private:
  double delayed(const SimState& s, std::size_t m) const;

  ProblemSpec spec_;
  double tau_;
  SimOptions opts_;
  UniformGrid grid_;
  double dt_;
  std::size_t ring_;
  std::vector<double> a_, ax_;
  CompiledExpr b_;
  bool linear_;
};

}  // namespace hopfwave
