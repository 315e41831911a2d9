#include "hopfwave/serialize.hpp"

#include <cstdio>
#include <json.hpp>

#include "hopfwave/errors.hpp"

namespace hopfwave {

using nlohmann::json;

namespace {

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

json pairs(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(pair(z));
  return a;
}

cplx to_cplx(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

std::vector<cplx> to_cplx_vector(const json& j) {
  std::vector<cplx> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(to_cplx(e));
  return v;
}

std::string number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string certificate_to_json(const HopfCertificate& c, int indent) {
  json j;
  j["passed"] = c.flags.passed();
  j["M"] = c.M;
  j["tau0"] = c.tau0;
  j["tau0_fine"] = c.tau0_fine;
  j["mu"] = pair(c.eigenpair.mu);
  j["sigma_raw"] = pair(c.sigma_raw);
  j["sigma"] = pair(c.sigma);
  j["rho"] = c.rho;
  j["fredholm"] = c.fredholm;
  j["K_max"] = c.K_max;
  j["seed"] = c.seed;
  j["flags"] = {{"a1", c.flags.a1},       {"a2", c.flags.a2},         {"sigma", c.flags.sigma},
                {"rho", c.flags.rho},     {"fredholm", c.flags.fredholm}, {"richardson", c.flags.richardson}};
  json scan = json::array();
  for (const auto& e : c.a2_scan) scan.push_back({{"k", e.k}, {"abs_D", e.abs_D}});
  j["a2_scan"] = scan;
  j["notes"] = c.notes;
  j["eigenfunction"] = {{"tau", c.eigenpair.tau}, {"u0", pairs(c.eigenpair.u0)}, {"u0_prime", pairs(c.eigenpair.u0_prime)}};
  j["adjoint"] = {{"u_star", pairs(c.adjoint.u_star)},
                  {"u_star_prime", pairs(c.adjoint.u_star_prime)},
                  {"U_star", pairs(c.adjoint.U_star)},
                  {"robin_residual", c.adjoint.robin_residual}};
  return j.dump(indent);
}

HopfCertificate certificate_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    HopfCertificate c;
    c.M = j.at("M").get<std::size_t>();
    c.tau0 = j.at("tau0").get<double>();
    c.tau0_fine = j.at("tau0_fine").get<double>();
    c.sigma_raw = to_cplx(j.at("sigma_raw"));
    c.sigma = to_cplx(j.at("sigma"));
    c.rho = j.at("rho").get<double>();
    c.fredholm = j.at("fredholm").get<double>();
    c.K_max = j.at("K_max").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    const auto& f = j.at("flags");
    c.flags.a1 = f.at("a1").get<bool>();
    c.flags.a2 = f.at("a2").get<bool>();
    c.flags.sigma = f.at("sigma").get<bool>();
    c.flags.rho = f.at("rho").get<bool>();
    c.flags.fredholm = f.at("fredholm").get<bool>();
    c.flags.richardson = f.at("richardson").get<bool>();
    for (const auto& e : j.at("a2_scan")) c.a2_scan.push_back({e.at("k").get<int>(), e.at("abs_D").get<double>()});
    c.notes = j.at("notes").get<std::vector<std::string>>();
    const auto& ef = j.at("eigenfunction");
    c.eigenpair.mu = to_cplx(j.at("mu"));
    c.eigenpair.tau = ef.at("tau").get<double>();
    c.eigenpair.u0 = to_cplx_vector(ef.at("u0"));
    c.eigenpair.u0_prime = to_cplx_vector(ef.at("u0_prime"));
    const auto& ad = j.at("adjoint");
    c.adjoint.u_star = to_cplx_vector(ad.at("u_star"));
    c.adjoint.u_star_prime = to_cplx_vector(ad.at("u_star_prime"));
    c.adjoint.U_star = to_cplx_vector(ad.at("U_star"));
    c.adjoint.robin_residual = ad.at("robin_residual").get<double>();
    return c;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed certificate: ") + e.what());
  }
}

std::string direction_to_json(const DirectionReport& r, int indent) {
  json j{{"tau_curvature", r.tau_curvature},
         {"indicator", r.indicator},
         {"supercritical", r.supercritical},
         {"caveat", r.caveat}};
  return j.dump(indent);
}

std::string orbit_to_json(const PeriodicOrbit& o, int indent) {
  json j{{"omega", o.omega}, {"tau", o.tau},           {"eps", o.eps},
         {"lambda", o.lambda}, {"residual_norm", o.residual_norm}, {"iterations", o.iterations},
         {"N", o.v.harmonics()}, {"M", o.v.nodes() - 1}};
  json comps = json::array();
  for (int c = 0; c < 2; ++c) {
    json ks = json::array();
    for (int k = 0; k <= o.v.harmonics(); ++k) {
      const auto row = o.v.row(c, k);
      ks.push_back(pairs(std::vector<cplx>(row.begin(), row.end())));
    }
    comps.push_back(ks);
  }
  j["v"] = comps;
  return j.dump(indent);
}

std::string branch_csv(const BranchResult& b) {
  std::string out = "eps,omega,tau,residual_norm\n";
  for (const auto& o : b.orbits)
    out += number(o.eps) + ',' + number(o.omega) + ',' + number(o.tau) + ',' + number(o.residual_norm) + '\n';
  return out;
}

std::string probe_csv(const SimResult& s) {
  std::string out = "t,u\n";
  for (std::size_t i = 0; i < s.t.size(); ++i) out += number(s.t[i]) + ',' + number(s.probe[i]) + '\n';
  return out;
}

}  // namespace hopfwave
