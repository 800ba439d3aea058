#include "ihc/pmp.hpp"

#include <cmath>
#include <stdexcept>

#include "ihc/errors.hpp"

namespace ihc {

AdjointTrace adjoint_states(const ProblemConfig& config,
                            const SpectralState& terminal_state, int k,
                            double terminal_time) {
  if (k > config.schedule().size())
    throw std::invalid_argument("adjoint_states: k beyond schedule");
  AdjointTrace trace;
  trace.terminal_condition = -terminal_state;
  trace.values_at_impulses.reserve(k);
  for (int j = 1; j <= k; ++j) {
    trace.values_at_impulses.push_back(semigroup_apply(
        config.basis(), terminal_time - config.tau(j),
        trace.terminal_condition));
  }
  return trace;
}

AdjointTrace adjoint_states(const ProblemConfig& config,
                            const SpectralState& terminal_state, int k) {
  return adjoint_states(config, terminal_state, k, config.tau(k));
}

PmpReport max_principle_residual(const ProblemConfig& config,
                                 const ControlSequence& controls, double M1,
                                 double T, double tol_align, double tol_mag) {
  if (!(M1 > 0.0))
    throw std::invalid_argument("max_principle_residual: M1 must be > 0");

  const SpectralState terminal = evolve(config, controls, T, true);
  const int k = controls.active_count;
  const AdjointTrace trace = adjoint_states(config, terminal, k, T);

  PmpReport report;
  report.tol_align = tol_align;
  report.tol_mag = tol_mag;
  report.pass = true;
  for (int j = 1; j <= k; ++j) {
    const SpectralState& phi = trace.values_at_impulses[j - 1];
    const RegionOperator& G = config.region(j);
    const double rho = restricted_norm(G, phi);
    if (rho <= 1e-14 * std::max(1.0, phi.norm()))
      throw DegenerateAdjointError(
          "adjoint state vanishes on control region " + std::to_string(j));

    const SpectralState restricted = G.apply(phi);
    const SpectralState& u = controls.controls[j - 1];
    PmpBlock block;
    const double denom = u.norm() * restricted.norm();
    block.cosine = denom > 0.0 ? u.dot(restricted) / denom : 0.0;
    block.magnitude_deviation = std::abs(restricted_norm(G, u) - M1);
    report.blocks.push_back(block);
    if (block.cosine < 1.0 - tol_align ||
        block.magnitude_deviation > tol_mag * std::max(1.0, M1))
      report.pass = false;
  }
  return report;
}

BangBangReport bang_bang_check(const ControlSequence& controls, double m,
                               double tol) {
  if (m < 0.0) throw std::invalid_argument("bang_bang_check: m must be >= 0");
  BangBangReport report;
  report.pass = true;
  for (int j = 0; j < controls.active_count; ++j) {
    const double norm = controls.controls[j].norm();
    report.block_norms.push_back(norm);
    if (std::abs(norm - m) > tol * std::max(1.0, m)) report.pass = false;
  }
  return report;
}

}  // namespace ihc
