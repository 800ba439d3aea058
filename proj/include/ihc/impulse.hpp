#ifndef IHC_IMPULSE_HPP
#define IHC_IMPULSE_HPP

#include <vector>

#include "ihc/spectral.hpp"

namespace ihc {

/// Strictly increasing impulse instants with one control region each.
struct ImpulseSchedule {
  std::vector<double> instants;
  std::vector<RegionOperator> regions;

  int size() const { return static_cast<int>(instants.size()); }
};

enum class Condition { C1, C2 };

/// Control blocks u_1, ..., u_K; blocks beyond active_count are zero.
struct ControlSequence {
  std::vector<SpectralState> controls;
  int active_count = 0;

  static ControlSequence zeros(int count, int modes);
};

/// First instant at which the uncontrolled solution enters the target ball.
double free_decay_time(const Eigenbasis& basis, const SpectralState& y0,
                       double r);

/// Full impulse-control problem description. Construction computes the
/// free-decay time gamma(y0), validates gamma(y0) > tau_1, and classifies
/// the (C1)/(C2) dichotomy.
class ProblemConfig {
public:
  ProblemConfig(Eigenbasis basis, ImpulseSchedule schedule, SpectralState y0,
                double r);

  const Eigenbasis& basis() const { return basis_; }
  const ImpulseSchedule& schedule() const { return schedule_; }
  const SpectralState& y0() const { return y0_; }
  double r() const { return r_; }
  double gamma() const { return gamma_; }
  /// Maximum k with tau_k <= gamma(y0).
  int k0() const { return k0_; }
  Condition condition() const { return condition_; }
  double tau(int k) const { return schedule_.instants[k - 1]; }
  const RegionOperator& region(int k) const { return schedule_.regions[k - 1]; }

private:
  Eigenbasis basis_;
  ImpulseSchedule schedule_;
  SpectralState y0_;
  double r_;
  double gamma_;
  int k0_;
  Condition condition_;
};

/// State at time t under the given controls. The impulse at an instant
/// equal to t is included iff include_impulse_at_t, distinguishing
/// y(tau_k) from y(tau_k^-).
SpectralState evolve(const ProblemConfig& config,
                     const ControlSequence& controls, double t,
                     bool include_impulse_at_t = true);

/// C1 iff the target is unreachable using only the first impulse, i.e.
/// the complement-region norm of the drift at tau_1 exceeds r.
Condition classify_condition(const Eigenbasis& basis,
                             const ImpulseSchedule& schedule,
                             const SpectralState& y0, double r);

}  // namespace ihc

#endif
