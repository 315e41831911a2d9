// hopfwave {certificate|direction|branch|simulate} <file> [--out PATH] [--seed INT] [--tau F] [--T F]
//
// Exit codes: 0 ok, 2 input, 3 certification, 4 structure, 5 convergence, 6 simulation.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>

#include "hopfwave/direction.hpp"
#include "hopfwave/errors.hpp"
#include "hopfwave/serialize.hpp"
#include "problem_file.hpp"

namespace {

using nlohmann::json;
using namespace hopfwave;

enum Exit : int { ok = 0, input = 2, certification = 3, structure = 4, convergence = 5, simulation = 6 };

struct Args {
  std::string command;
  std::string file;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tau;
  std::optional<double> T;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

void emit(const Args& args, const json& doc, const std::string& csv = {}) {
  const std::string text = doc.dump(2) + "\n";
  if (args.out.empty()) {
    std::cout << text;
    return;
  }
  write_text(args.out, text);
  if (!csv.empty()) write_text(std::filesystem::path(args.out).replace_extension(".csv").string(), csv);
}

HopfCertificate run_certificate(const cli::ProblemFile& p) {
  return certify(p.spec, p.tau_guess, p.eigen_M, p.eigen);
}

bool usable(const HopfCertificate& c) { return c.flags.a1 && c.flags.sigma && c.flags.rho; }

int cmd_certificate(const Args& args, const cli::ProblemFile& p) {
  const HopfCertificate cert = run_certificate(p);
  json doc = json::parse(certificate_to_json(cert));
  doc["command"] = "certificate";
  emit(args, doc);
  return cert.flags.passed() ? ok : certification;
}

int cmd_direction(const Args& args, const cli::ProblemFile& p) {
  const HopfCertificate cert = run_certificate(p);
  json doc = json::parse(certificate_to_json(cert));
  doc["command"] = "direction";
  if (!usable(cert)) {
    emit(args, doc);
    return certification;
  }
  try {
    const DirectionReport rep = direction_report(cert, check_structure(p.spec, cert.M));
    doc["direction"] = json::parse(direction_to_json(rep));
  } catch (const NotSeparable& e) {
    doc["error"] = e.what();
    emit(args, doc);
    return structure;
  } catch (const QuadraticTermPresent& e) {
    doc["error"] = e.what();
    emit(args, doc);
    return structure;
  }
  emit(args, doc);
  return cert.flags.passed() ? ok : certification;
}

int cmd_branch(const Args& args, const cli::ProblemFile& p) {
  const HopfCertificate cert = run_certificate(p);
  json doc;
  doc["command"] = "branch";
  doc["certificate_passed"] = cert.flags.passed();
  doc["tau0"] = cert.tau0;
  doc["rho"] = cert.rho;
  doc["seed"] = cert.seed;
  doc["N"] = p.solver.N;
  doc["M"] = p.solver.M;
  if (!usable(cert)) {
    doc["error"] = "certificate lacks an eigenpair, sigma or rho";
    emit(args, doc);
    return certification;
  }

  std::optional<double> formula;
  try {
    formula = compute_direction(cert, check_structure(p.spec, cert.M));
  } catch (const NotSeparable& e) {
    doc["direction_note"] = e.what();
  } catch (const QuadraticTermPresent& e) {
    doc["direction_note"] = e.what();
  }

  const OrbitSolver solver(p.spec, cert, p.spec.lambda, p.solver);
  BranchResult branch;
  try {
    branch = solver.continue_branch(p.eps_grid);
  } catch (const NoConvergence& e) {
    doc["error"] = e.what();
    doc["last_good_eps"] = e.last_good_eps();
    emit(args, doc);
    return convergence;
  } catch (const JacobianSingular& e) {
    doc["error"] = e.what();
    doc["rcond"] = e.rcond();
    emit(args, doc);
    return convergence;
  }

  json orbits = json::array();
  double worst = 0.0;
  for (const auto& o : branch.orbits) {
    const double pde = solver.pde_residual_check(o);
    worst = std::max(worst, pde);
    orbits.push_back({{"eps", o.eps},
                      {"omega", o.omega},
                      {"tau", o.tau},
                      {"residual_norm", o.residual_norm},
                      {"iterations", o.iterations},
                      {"pde_residual", pde}});
  }
  doc["orbits"] = orbits;
  doc["fit_tau_curvature"] = branch.fit_tau_curvature;
  doc["fit_omega_curvature"] = branch.fit_omega_curvature;
  doc["fit_tau_slope"] = branch.fit_tau_slope;
  doc["fit_omega_slope"] = branch.fit_omega_slope;
  doc["max_pde_residual"] = worst;
  if (formula) {
    doc["direction_tau_curvature"] = *formula;
    doc["relative_gap"] = std::abs(branch.fit_tau_curvature - *formula) / std::abs(*formula);
  } else {
    doc["direction_tau_curvature"] = nullptr;
    doc["relative_gap"] = nullptr;
  }
  emit(args, doc, branch_csv(branch));
  return cert.flags.passed() ? ok : certification;
}

int cmd_simulate(const Args& args, const cli::ProblemFile& p) {
  const auto& s = p.simulate;
  std::optional<double> tau = args.tau ? args.tau : s.tau;
  const double T = args.T.value_or(s.T);
  json doc;
  doc["command"] = "simulate";
  if (!tau) {
    const HopfCertificate cert = run_certificate(p);
    tau = cert.tau0;
    doc["tau_source"] = "tau0";
  }
  doc["tau"] = *tau;
  doc["T"] = T;
  try {
    const Simulator sim(p.spec, *tau, s.options);
    std::vector<double> v(sim.grid().size());
    for (std::size_t m = 0; m < v.size(); ++m) v[m] = s.amplitude * std::sin(0.5 * std::numbers::pi * sim.grid().x(m));
    const SimResult r = sim.run_to_orbit(sim.initial(v, v), T);
    doc["dt"] = sim.dt();
    doc["period"] = r.period;
    doc["amplitude"] = r.amplitude;
    doc["crossings"] = r.crossings;
    emit(args, doc, probe_csv(r));
    return ok;
  } catch (const NoOscillationDetected& e) {
    doc["error"] = e.what();
    doc["final_amplitude"] = e.final_amplitude();
  } catch (const NegativeDelayUnsupported& e) {
    doc["error"] = e.what();
  } catch (const CFLViolation& e) {
    doc["error"] = e.what();
  }
  emit(args, doc);
  return simulation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hopf bifurcation toolkit for delayed semilinear wave equations"};
  Args args;
  app.require_subcommand(1);
  const std::pair<const char*, const char*> commands[] = {
      {"certificate", "locate the critical delay and check the Hopf conditions"},
      {"direction", "curvature of the delay along the branch and its sign"},
      {"branch", "continue periodic orbits over the amplitude grid"},
      {"simulate", "integrate the delayed wave equation in time and measure the period"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", args.file, "problem file (JSON)")->required();
    sub->add_option("--out", args.out, "write JSON here; CSV goes next to it with a .csv extension");
    sub->add_option("--seed", args.seed, "seed of the restart schedule");
    sub->add_option("--tau", args.tau, "delay for simulate");
    sub->add_option("--T", args.T, "end time for simulate");
    sub->callback([&args, name] { args.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : input;
  }

  cli::ProblemFile problem;
  try {
    problem = cli::load_problem(args.file);
    if (args.seed) problem.eigen.seed = *args.seed;
  } catch (const Error& e) {
    std::cerr << "hopfwave: " << e.what() << '\n';
    return input;
  }

  try {
    if (args.command == "certificate") return cmd_certificate(args, problem);
    if (args.command == "direction") return cmd_direction(args, problem);
    if (args.command == "branch") return cmd_branch(args, problem);
    return cmd_simulate(args, problem);
  } catch (const InvalidArgument& e) {
    std::cerr << "hopfwave: " << e.what() << '\n';
    return input;
  } catch (const InvalidProblem& e) {
    std::cerr << "hopfwave: " << e.what() << '\n';
    return input;
  } catch (const NoConvergence& e) {
    std::cerr << "hopfwave: " << e.what() << '\n';
    return certification;
  } catch (const ResidualAboveTolerance& e) {
    std::cerr << "hopfwave: " << e.what() << '\n';
    return certification;
  } catch (const Error& e) {
    std::cerr << "hopfwave: " << e.what() << '\n';
    return input;
  }
}
