#include "problem_file.hpp"

#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <sstream>

#include "hopfwave/errors.hpp"

namespace hopfwave::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InvalidProblem(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidProblem("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidProblem(std::string("bad value for '") + key + "'");
  }
}

Expr expression(const json& j, const char* key) {
  if (!j.at(key).is_string()) throw InvalidProblem(std::string("'") + key + "' must be an expression string");
  return parse(j.at(key).get<std::string>());
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidProblem(std::string("problem file is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "problem", {"a", "b", "beta", "lambda", "tau_guess", "seed", "eigen", "solver", "simulate"});

  ProblemFile p;
  if (!root.contains("a")) throw InvalidProblem("missing 'a'");
  p.spec.a = expression(root, "a");
  if (root.contains("b")) p.spec.b = expression(root, "b");
  if (root.contains("beta")) {
    const json& b = root.at("beta");
    if (!b.is_array() || b.size() != 4) throw InvalidProblem("'beta' must list four expressions");
    std::array<Expr, 4> beta;
    for (std::size_t j = 0; j < 4; ++j) {
      if (!b[j].is_string()) throw InvalidProblem("'beta' entries must be expression strings");
      beta[j] = parse(b[j].get<std::string>());
    }
    p.spec.beta = beta;
  }
  if (!p.spec.b && !p.spec.beta) throw InvalidProblem("give 'b' or 'beta'");
  read(root, "lambda", p.spec.lambda);
  read(root, "tau_guess", p.tau_guess);
  read(root, "seed", p.eigen.seed);

  if (root.contains("eigen")) {
    const json& e = root.at("eigen");
    reject_unknown(e, "eigen", {"M", "K_max", "tol_eig", "tol_resonance", "tol_rho", "max_iter", "restarts"});
    read(e, "M", p.eigen_M);
    read(e, "K_max", p.eigen.K_max);
    read(e, "tol_eig", p.eigen.tol_eig);
    read(e, "tol_resonance", p.eigen.tol_resonance);
    read(e, "tol_rho", p.eigen.tol_rho);
    read(e, "max_iter", p.eigen.max_iter);
    read(e, "restarts", p.eigen.restarts);
  }
  if (root.contains("solver")) {
    const json& s = root.at("solver");
    reject_unknown(s, "solver", {"N", "M", "K_max", "eps_grid", "tolerances", "max_iter"});
    read(s, "N", p.solver.N);
    read(s, "M", p.solver.M);
    read(s, "K_max", p.eigen.K_max);
    read(s, "eps_grid", p.eps_grid);
    read(s, "max_iter", p.solver.max_iter);
    if (s.contains("tolerances")) {
      const json& t = s.at("tolerances");
      reject_unknown(t, "solver.tolerances", {"orbit", "constraint", "rcond", "eig", "resonance", "rho"});
      read(t, "orbit", p.solver.tol_orbit);
      read(t, "constraint", p.solver.tol_constraint);
      read(t, "rcond", p.solver.min_rcond);
      read(t, "eig", p.eigen.tol_eig);
      read(t, "resonance", p.eigen.tol_resonance);
      read(t, "rho", p.eigen.tol_rho);
    }
  }
  if (root.contains("simulate")) {
    const json& s = root.at("simulate");
    reject_unknown(s, "simulate", {"tau", "T", "amplitude", "M", "cfl", "x_probe", "discard", "settle_tol"});
    if (s.contains("tau")) {
      double tau = 0.0;
      read(s, "tau", tau);
      p.simulate.tau = tau;
    }
    read(s, "T", p.simulate.T);
    read(s, "amplitude", p.simulate.amplitude);
    read(s, "M", p.simulate.options.M);
    read(s, "cfl", p.simulate.options.cfl);
    read(s, "x_probe", p.simulate.options.x_probe);
    read(s, "discard", p.simulate.options.discard);
    read(s, "settle_tol", p.simulate.options.settle_tol);
  }

  if (p.solver.N < 1) throw InvalidArgument("solver.N must be at least 1");
  if (p.solver.M < 16) throw InvalidArgument("solver.M must be at least 16");
  if (p.eigen_M < 16) throw InvalidArgument("eigen.M must be at least 16");
  if (p.eigen.K_max < 2) throw InvalidArgument("K_max must be at least 2");
  p.spec.validate();
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open problem file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem(text.str());
}

}  // namespace hopfwave::cli
