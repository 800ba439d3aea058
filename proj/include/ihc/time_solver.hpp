#ifndef IHC_TIME_SOLVER_HPP
#define IHC_TIME_SOLVER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ihc/norm_solver.hpp"

namespace ihc {

struct PlateauEntry {
  int k = 0;
  double tau = 0.0;
  double m_inf = 0.0;  // N*(tau_k)
  double m_sup = 0.0;  // left limit of N*(.) at tau_k
};

/// Plateau intervals [m_inf(k), m_sup(k)] of t*(.), one per impulse instant
/// tau_k with 2 <= k <= k0. Under (C2) the saturation threshold
/// M_hat = N*(tau_1) is recorded as well (t*(M) = tau_1 for M >= M_hat).
struct PlateauTable {
  std::vector<PlateauEntry> entries;
  double gamma = 0.0;
  double tau1 = 0.0;
  int k0 = 0;
  std::optional<double> saturation;
};

PlateauTable plateau_table(const ProblemConfig& config,
                           const SolveOptions& opts = {});

enum class Regime { FreeDecay, Plateau, Interior, Saturated };

std::string regime_name(Regime regime, int index);

struct TimeSolution {
  double optimal_time = 0.0;
  Regime regime = Regime::FreeDecay;
  /// Plateau(k): the impulse index; Interior(k): the active block count.
  int regime_index = 0;
  double minimal_norm_at_optimum = 0.0;
  ControlSequence controls;
};

/// Memoized N*(.) evaluations shared across one sweep or bisection.
class NormCache {
public:
  explicit NormCache(const ProblemConfig& config, SolveOptions opts = {})
      : config_(&config), opts_(std::move(opts)) {}

  const NormSolution& at(double T);

private:
  const ProblemConfig* config_;
  SolveOptions opts_;
  std::map<double, NormSolution> cache_;
};

/// Unique T in (tau_lo, tau_hi) with N*(T) = M, by bisection on the strictly
/// decreasing restriction of N*. The open bracket must contain no impulse
/// instant.
double invert_norm(const ProblemConfig& config, double M, double tau_lo,
                   double tau_hi, NormCache* cache = nullptr);

/// t*(M) through the norm/time equivalence: plateau lookup at impulse
/// instants, monotone inversion of N*(.) elsewhere.
TimeSolution minimal_time(const ProblemConfig& config, double M,
                          const SolveOptions& opts = {});
TimeSolution minimal_time(const ProblemConfig& config, double M,
                          const PlateauTable& table, NormCache& cache);

}  // namespace ihc

#endif
