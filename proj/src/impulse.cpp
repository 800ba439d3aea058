#include "ihc/impulse.hpp"

#include <cmath>
#include <stdexcept>

#include "ihc/errors.hpp"

namespace ihc {

ControlSequence ControlSequence::zeros(int count, int modes) {
  ControlSequence seq;
  seq.controls.assign(count, SpectralState::Zero(modes));
  seq.active_count = 0;
  return seq;
}

double free_decay_time(const Eigenbasis& basis, const SpectralState& y0,
                       double r) {
  if (!(r > 0.0)) throw ConfigError("target radius must be positive");
  const double norm0 = y0.norm();
  if (norm0 <= r)
    throw DegenerateProblemError(
        "degenerate: initial state already in target");

  const Eigen::ArrayXd lambda = basis.eigenvalues().array();
  const Eigen::ArrayXd a2 = y0.array().square();
  // Strictly decreasing in t; root of sum exp(-2 lambda_n t) a_n^2 = r^2.
  auto excess = [&](double t) {
    return ((-2.0 * t * lambda).exp() * a2).sum() - r * r;
  };

  // Admissibility bound: exp(-lambda_1 t) ||y0|| <= r at
  // t = (1/lambda_1) ln((2r + ||y0||)/r), and slack beyond it.
  double hi = std::log((2.0 * r + norm0) / r) / basis.lambda1();
  double lo = 0.0;
  while (excess(hi) > 0.0) {  // paranoia; the bound above already suffices
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Condition classify_condition(const Eigenbasis& basis,
                             const ImpulseSchedule& schedule,
                             const SpectralState& y0, double r) {
  const SpectralState w = semigroup_apply(basis, schedule.instants[0], y0);
  // inf over u1 of ||e^{Delta tau_1} y0 + chi_{omega_1} u1|| is the norm of
  // the part of w living outside omega_1: sqrt(w^T (I - G_1) w).
  const double full2 = w.squaredNorm();
  const double inside = restricted_norm(schedule.regions[0], w);
  const double complement =
      std::sqrt(std::max(full2 - inside * inside, 0.0));
  return complement > r ? Condition::C1 : Condition::C2;
}

ProblemConfig::ProblemConfig(Eigenbasis basis, ImpulseSchedule schedule,
                             SpectralState y0, double r)
    : basis_(std::move(basis)),
      schedule_(std::move(schedule)),
      y0_(std::move(y0)),
      r_(r) {
  if (!(r_ > 0.0)) throw ConfigError("target radius must be positive");
  if (y0_.size() != basis_.mode_count())
    throw ConfigError("y0 length does not match mode count");
  if (schedule_.instants.empty())
    throw ConfigError("schedule needs at least one impulse instant");
  if (schedule_.regions.size() != schedule_.instants.size())
    throw ConfigError("schedule regions count must equal instants count");
  double prev = 0.0;
  for (double tau : schedule_.instants) {
    if (!(tau > prev))
      throw ConfigError("impulse instants must be strictly increasing and positive");
    prev = tau;
  }
  for (const auto& region : schedule_.regions) {
    if (region.gram.rows() != basis_.mode_count())
      throw ConfigError("region operator size does not match mode count");
  }

  gamma_ = free_decay_time(basis_, y0_, r_);
  if (!(gamma_ > schedule_.instants[0]))
    throw DegenerateProblemError("trivial problem: gamma <= tau_1");

  k0_ = 0;
  for (double tau : schedule_.instants) {
    if (tau <= gamma_) ++k0_;
  }
  condition_ = classify_condition(basis_, schedule_, y0_, r_);
}

SpectralState evolve(const ProblemConfig& config,
                     const ControlSequence& controls, double t,
                     bool include_impulse_at_t) {
  if (t < 0.0) throw std::domain_error("evolve: time must be nonnegative");
  SpectralState y = semigroup_apply(config.basis(), t, config.y0());
  const int blocks = std::min<int>(controls.active_count,
                                   config.schedule().size());
  for (int j = 1; j <= blocks; ++j) {
    const double tau = config.tau(j);
    if (tau > t || (tau == t && !include_impulse_at_t)) continue;
    const SpectralState& u = controls.controls[j - 1];
    if (u.size() != config.basis().mode_count())
      throw std::invalid_argument("evolve: control block dimension mismatch");
    y += semigroup_apply(config.basis(), t - tau, config.region(j).apply(u));
  }
  return y;
}

}  // namespace ihc
