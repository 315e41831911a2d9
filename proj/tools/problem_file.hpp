#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hopfwave/eigenproblem.hpp"
#include "hopfwave/orbit_solver.hpp"
#include "hopfwave/timedomain.hpp"

namespace hopfwave::cli {

/// Settings of the `simulate` command.
struct SimulateSection {
  std::optional<double> tau;  // defaults to the certified tau0
  double T = 300.0;
  double amplitude = 0.05;  // initial v1 = v2 = amplitude sin(pi x / 2)
  SimOptions options;
};

struct ProblemFile {
  ProblemSpec spec;
  double tau_guess = 1.0;
  std::size_t eigen_M = 256;
  EigenOptions eigen;
  SolverOptions solver;
  std::vector<double> eps_grid{0.005, 0.01, 0.015, 0.02, 0.025, 0.03, 0.035, 0.04, 0.045, 0.05};
  SimulateSection simulate;
};

/// Parses a problem document. Unknown keys, malformed expressions and invalid
/// values throw hopfwave::Error subclasses (SyntaxError, UnknownIdentifier,
/// InvalidProblem, InvalidArgument).
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

}  // namespace hopfwave::cli
