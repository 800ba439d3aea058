#include "ihc/config_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "ihc/errors.hpp"

namespace ihc {

namespace {

using nlohmann::json;

DomainSpec parse_domain(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const auto lengths = j.at("lengths").get<std::vector<double>>();
  if (kind == "interval") {
    if (lengths.size() != 1)
      throw ConfigError("interval domain needs exactly one length");
    return IntervalDomain{lengths[0]};
  }
  if (kind == "rectangle") {
    if (lengths.size() != 2)
      throw ConfigError("rectangle domain needs exactly two lengths");
    return RectangleDomain{lengths[0], lengths[1]};
  }
  throw ConfigError("unknown domain kind: " + kind);
}

SolveOptions parse_solver(const json& j) {
  SolveOptions opts;
  if (!j.contains("solver")) return opts;
  const json& s = j.at("solver");
  if (s.contains("max_iterations"))
    opts.max_iterations = s.at("max_iterations").get<int>();
  if (s.contains("stall_window"))
    opts.stall_window = s.at("stall_window").get<int>();
  if (s.contains("stall_tol")) opts.stall_tol = s.at("stall_tol").get<double>();
  if (s.contains("restarts")) opts.restarts = s.at("restarts").get<int>();
  if (s.contains("tol_feas_rel"))
    opts.tol_feas_rel = s.at("tol_feas_rel").get<double>();
  return opts;
}

}  // namespace

LoadedProblem parse_problem(const nlohmann::json& j) {
  try {
    const DomainSpec domain = parse_domain(j.at("domain"));
    const int modes = j.at("modes").get<int>();
    Eigenbasis basis = Eigenbasis::build(domain, modes);

    const auto coeffs = j.at("y0").at("coeffs").get<std::vector<double>>();
    if (static_cast<int>(coeffs.size()) > modes)
      throw ConfigError("y0 has more coefficients than modes");
    SpectralState y0 = SpectralState::Zero(modes);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      y0(static_cast<int>(i)) = coeffs[i];

    const double r = j.at("r").get<double>();

    ImpulseSchedule schedule;
    for (const json& imp : j.at("impulses")) {
      schedule.instants.push_back(imp.at("tau").get<double>());
      Region region = full_region(domain);
      if (imp.contains("region")) {
        region.lo = imp.at("region").at("lo").get<std::vector<double>>();
        region.hi = imp.at("region").at("hi").get<std::vector<double>>();
      }
      schedule.regions.push_back(region_gram(basis, region));
    }

    return LoadedProblem{
        ProblemConfig(std::move(basis), std::move(schedule), std::move(y0), r),
        parse_solver(j)};
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

LoadedProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON in ") + path + ": " +
                      e.what());
  }
  return parse_problem(j);
}

ProblemConfig remark35_config(int modes) {
  const DomainSpec domain = IntervalDomain{std::numbers::pi};
  Eigenbasis basis = Eigenbasis::build(domain, modes);
  SpectralState y0 = SpectralState::Zero(modes);
  y0(0) = 1.0;
  ImpulseSchedule schedule;
  schedule.instants = {std::log(2.0), std::log(4.0)};
  schedule.regions.assign(2, region_gram(basis, full_region(domain)));
  return ProblemConfig(std::move(basis), std::move(schedule), std::move(y0),
                       1.0 / 6.0);
}

}  // namespace ihc
