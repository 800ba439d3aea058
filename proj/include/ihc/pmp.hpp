#ifndef IHC_PMP_HPP
#define IHC_PMP_HPP

#include <vector>

#include "ihc/impulse.hpp"

namespace ihc {

/// Backward heat (adjoint) state sampled at the impulse instants:
/// phi(tau_j) = exp(Delta (T - tau_j)) * (-terminal_state).
struct AdjointTrace {
  SpectralState terminal_condition;
  std::vector<SpectralState> values_at_impulses;  // phi(tau_1) .. phi(tau_k)
};

AdjointTrace adjoint_states(const ProblemConfig& config,
                            const SpectralState& terminal_state, int k,
                            double terminal_time);

/// Convenience overload with terminal_time = tau_k.
AdjointTrace adjoint_states(const ProblemConfig& config,
                            const SpectralState& terminal_state, int k);

struct PmpBlock {
  double cosine = 0.0;               // alignment of u_j with G_j phi(tau_j)
  double magnitude_deviation = 0.0;  // | ||chi_omega u_j|| - M1 |
};

struct PmpReport {
  std::vector<PmpBlock> blocks;
  bool pass = false;
  double tol_align = 0.0;
  double tol_mag = 0.0;
};

/// Maximum-condition check: per active block the pairing <u_j, G_j phi(tau_j)>
/// must attain M1 * ||chi_{omega_j} phi(tau_j)||, i.e. u_j aligned with the
/// restricted adjoint and saturating the bound.
PmpReport max_principle_residual(const ProblemConfig& config,
                                 const ControlSequence& controls, double M1,
                                 double T, double tol_align = 1e-8,
                                 double tol_mag = 1e-8);

struct BangBangReport {
  std::vector<double> block_norms;
  bool pass = false;
};

/// Pass iff every active block's coefficient norm is within tol*max(1,m) of m.
BangBangReport bang_bang_check(const ControlSequence& controls, double m,
                               double tol = 1e-9);

}  // namespace ihc

#endif
