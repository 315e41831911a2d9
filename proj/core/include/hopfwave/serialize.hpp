#pragma once

// JSON and CSV encodings of results. Complex numbers are [re, im] pairs;
// doubles are written with round-trip precision.

#include <string>

#include "hopfwave/direction.hpp"
#include "hopfwave/eigenproblem.hpp"
#include "hopfwave/orbit_solver.hpp"
#include "hopfwave/timedomain.hpp"

namespace hopfwave {

std::string certificate_to_json(const HopfCertificate& cert, int indent = 2);

/// Inverse of certificate_to_json; throws InvalidArgument on malformed input.
HopfCertificate certificate_from_json(const std::string& text);

std::string direction_to_json(const DirectionReport& report, int indent = 2);

/// Harmonic coefficients k = 0..N of both components plus omega, tau, eps, lambda.
std::string orbit_to_json(const PeriodicOrbit& orbit, int indent = 2);

/// Header eps,omega,tau,residual_norm.
std::string branch_csv(const BranchResult& branch);

/// Header t,u.
std::string probe_csv(const SimResult& sim);

}  // namespace hopfwave
