#include "ihc/time_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ihc/errors.hpp"

namespace ihc {

namespace {
constexpr double kPlateauBand = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

PlateauTable plateau_table(const ProblemConfig& config,
                           const SolveOptions& opts) {
  PlateauTable table;
  table.gamma = config.gamma();
  table.tau1 = config.tau(1);
  table.k0 = config.k0();
  if (config.condition() == Condition::C2)
    table.saturation = solve_norm(config, config.tau(1), opts).value;

  for (int k = 2; k <= table.k0; ++k) {
    PlateauEntry entry;
    entry.k = k;
    entry.tau = config.tau(k);
    entry.m_inf = solve_norm(config, entry.tau, opts).value;
    entry.m_sup = solve_norm_restricted(config, k, opts);
    table.entries.push_back(entry);
  }

  // Chain ordering 0 <= m_inf(k0) <= m_sup(k0) <= ... <= m_sup(2) [<= M_hat]:
  // bands shrink as k grows, so walk k = 2..k0 downward in M.
  const double slack = 1e-9;
  double prev = table.saturation ? *table.saturation : kInf;
  for (const PlateauEntry& entry : table.entries) {
    if (entry.m_sup > prev * (1.0 + slack) + slack ||
        entry.m_inf > entry.m_sup * (1.0 + slack) + slack)
      throw ConsistencyError("plateau chain ordering violated at k = " +
                             std::to_string(entry.k));
    prev = entry.m_inf;
  }
  return table;
}

const NormSolution& NormCache::at(double T) {
  auto found = cache_.find(T);
  if (found != cache_.end()) return found->second;

  SolveOptions opts = opts_;
  // Warm start from the nearest solved horizon.
  auto up = cache_.lower_bound(T);
  const NormSolution* neighbor = nullptr;
  if (up != cache_.end()) neighbor = &up->second;
  if (up != cache_.begin()) {
    auto down = std::prev(up);
    if (!neighbor || T - down->first < up->first - T)
      neighbor = &down->second;
  }
  if (neighbor && neighbor->value > 0.0)
    opts.warm_start = neighbor->dual_direction;

  return cache_.emplace(T, solve_norm(*config_, T, opts)).first->second;
}

double invert_norm(const ProblemConfig& config, double M, double tau_lo,
                   double tau_hi, NormCache* cache) {
  if (!(tau_lo < tau_hi))
    throw std::invalid_argument("invert_norm: empty bracket");
  for (int k = 1; k <= config.schedule().size(); ++k) {
    const double tau = config.tau(k);
    if (tau > tau_lo && tau < tau_hi)
      throw std::invalid_argument(
          "invert_norm: bracket interior contains an impulse instant");
  }

  NormCache local(config);
  NormCache& c = cache ? *cache : local;

  const double eps = 1e-9 * std::max(1.0, tau_hi - tau_lo);
  const double margin = 1e-6 * std::max(1.0, M);
  if (c.at(tau_lo + eps).value + margin < M ||
      c.at(tau_hi - eps).value - margin > M)
    throw std::invalid_argument("invert_norm: M outside the bracket's range");

  double lo = tau_lo + eps;
  double hi = tau_hi - eps;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (c.at(mid).value > M ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string regime_name(Regime regime, int index) {
  switch (regime) {
    case Regime::FreeDecay:
      return "free-decay";
    case Regime::Plateau:
      return "plateau(" + std::to_string(index) + ")";
    case Regime::Interior:
      return "interior(" + std::to_string(index) + ")";
    case Regime::Saturated:
      return "saturated";
  }
  return "?";
}

TimeSolution minimal_time(const ProblemConfig& config, double M,
                          const PlateauTable& table, NormCache& cache) {
  if (M < 0.0) throw std::domain_error("minimal_time: M must be >= 0");

  TimeSolution sol;
  if (M == 0.0) {
    sol.optimal_time = table.gamma;
    sol.regime = Regime::FreeDecay;
    sol.minimal_norm_at_optimum = 0.0;
    sol.controls = ControlSequence::zeros(config.schedule().size(),
                                          config.basis().mode_count());
    return sol;
  }

  if (table.saturation && M >= *table.saturation - kPlateauBand) {
    const NormSolution& at_tau1 = cache.at(config.tau(1));
    sol.optimal_time = config.tau(1);
    sol.regime = Regime::Saturated;
    sol.regime_index = 1;
    sol.minimal_norm_at_optimum = at_tau1.value;
    sol.controls = at_tau1.controls;
    return sol;
  }

  for (const PlateauEntry& entry : table.entries) {
    if (M >= entry.m_inf - kPlateauBand && M <= entry.m_sup + kPlateauBand) {
      const NormSolution& at_tau = cache.at(entry.tau);
      sol.optimal_time = entry.tau;
      sol.regime = Regime::Plateau;
      sol.regime_index = entry.k;
      sol.minimal_norm_at_optimum = at_tau.value;
      sol.controls = at_tau.controls;
      return sol;
    }
  }

  auto m_inf_of = [&](int k) -> double {
    if (k == 1) return table.saturation ? *table.saturation : kInf;
    return table.entries[k - 2].m_inf;
  };
  auto m_sup_of = [&](int k) -> double { return table.entries[k - 2].m_sup; };

  for (int k = table.k0; k >= 1; --k) {
    const double low = (k == table.k0) ? 0.0 : m_sup_of(k + 1);
    const double high = m_inf_of(k);
    if (M > low && M < high) {
      const double hi_time = (k == table.k0) ? table.gamma : config.tau(k + 1);
      const double T = invert_norm(config, M, config.tau(k), hi_time, &cache);
      const NormSolution& at_T = cache.at(T);
      sol.optimal_time = T;
      sol.regime = Regime::Interior;
      sol.regime_index = k;
      sol.minimal_norm_at_optimum = at_T.value;
      sol.controls = at_T.controls;
      return sol;
    }
  }
  throw ConsistencyError("minimal_time: M not covered by any regime");
}

TimeSolution minimal_time(const ProblemConfig& config, double M,
                          const SolveOptions& opts) {
  const PlateauTable table = plateau_table(config, opts);
  NormCache cache(config, opts);
  return minimal_time(config, M, table, cache);
}

}  // namespace ihc
