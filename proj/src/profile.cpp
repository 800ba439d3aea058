#include "ihc/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ihc/errors.hpp"

namespace ihc {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string norm_regime_tag(const ProblemConfig& config, double T) {
  const double tol = 1e-12 * std::max(1.0, T);
  int active = 0;
  for (int k = 1; k <= config.schedule().size(); ++k) {
    if (std::abs(config.tau(k) - T) <= tol) return "impulse(" + std::to_string(k) + ")";
    if (config.tau(k) < T) active = k;
  }
  return "interior(" + std::to_string(active) + ")";
}

}  // namespace

CurveProfile norm_curve(const ProblemConfig& config, const PlateauTable& table,
                        NormCache& cache, int n_samples) {
  const double tau1 = config.tau(1);
  const double gamma = table.gamma;
  std::set<double> ts;
  const double lo = config.condition() == Condition::C2 ? tau1 : tau1 + 1e-6;
  for (int i = 0; i < n_samples; ++i) {
    const double t =
        lo + (gamma - lo) * (i + 1) / static_cast<double>(n_samples);
    ts.insert(t);
  }
  ts.insert(lo);
  for (int k = 2; k <= table.k0; ++k) {
    const double tau = config.tau(k);
    ts.insert(tau - 1e-3);
    ts.insert(tau);
    ts.insert(tau + 1e-3);
  }
  ts.insert(gamma);

  CurveProfile profile;
  for (double t : ts) {
    if (t < lo || t > gamma) continue;
    profile.samples.push_back(
        {t, cache.at(t).value, norm_regime_tag(config, t)});
  }
  return profile;
}

CurveProfile time_curve(const ProblemConfig& config, const PlateauTable& table,
                        NormCache& cache, int n_samples) {
  double m_max;
  if (!table.entries.empty()) {
    m_max = 1.5 * table.entries.front().m_sup;
  } else if (table.saturation) {
    m_max = 1.5 * *table.saturation;
  } else {
    const double mid = 0.5 * (config.tau(1) + table.gamma);
    m_max = 3.0 * cache.at(mid).value;
  }

  CurveProfile profile;
  for (int i = 0; i <= n_samples; ++i) {
    const double m = m_max * i / static_cast<double>(n_samples);
    const TimeSolution sol = minimal_time(config, m, table, cache);
    profile.samples.push_back(
        {m, sol.optimal_time, regime_name(sol.regime, sol.regime_index)});
  }
  return profile;
}

void write_curve_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const CurveProfile& profile) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << x_name << "," << y_name << ",regime\n";
  for (const CurveSample& s : profile.samples)
    out << fmt(s.x) << "," << fmt(s.value) << "," << s.regime << "\n";
}

void write_plateaus_csv(const std::string& path, const PlateauTable& table) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "k,tau_k,m_inf,m_sup\n";
  if (table.saturation) {
    // Under C2 the k = 1 band [M_hat, inf) pins t* at tau_1.
    out << "1," << fmt(table.tau1) << "," << fmt(*table.saturation)
        << ",inf\n";
  }
  for (const PlateauEntry& e : table.entries)
    out << e.k << "," << fmt(e.tau) << "," << fmt(e.m_inf) << ","
        << fmt(e.m_sup) << "\n";
}

namespace {

struct CsvCurve {
  std::vector<double> x;
  std::vector<double> y;
};

CsvCurve read_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  std::getline(in, line);  // header
  CsvCurve curve;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string field;
    std::getline(row, field, ',');
    curve.x.push_back(std::stod(field));
    std::getline(row, field, ',');
    curve.y.push_back(std::stod(field));
  }
  return curve;
}

void check_monotone(const CsvCurve& curve, const std::string& what) {
  for (std::size_t i = 1; i < curve.x.size(); ++i) {
    if (!(curve.x[i] > curve.x[i - 1]))
      throw ConsistencyError(what + ": abscissae not strictly increasing");
    if (curve.y[i] > curve.y[i - 1] + 1e-9)
      throw ConsistencyError(what + ": values not non-increasing");
  }
}

}  // namespace

void validate_profile_outputs(const std::string& out_dir) {
  namespace fs = std::filesystem;
  check_monotone(read_curve((fs::path(out_dir) / "norm_curve.csv").string()),
                 "norm_curve");
  check_monotone(read_curve((fs::path(out_dir) / "time_curve.csv").string()),
                 "time_curve");
}

void run_profile(const ProblemConfig& config, const std::string& out_dir,
                 int n_samples, const SolveOptions& opts) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const PlateauTable table = plateau_table(config, opts);
  NormCache cache(config, opts);
  write_curve_csv((fs::path(out_dir) / "norm_curve.csv").string(), "T",
                  "N_star", norm_curve(config, table, cache, n_samples));
  write_curve_csv((fs::path(out_dir) / "time_curve.csv").string(), "M",
                  "t_star", time_curve(config, table, cache, n_samples));
  write_plateaus_csv((fs::path(out_dir) / "plateaus.csv").string(), table);
  validate_profile_outputs(out_dir);
}

}  // namespace ihc
