#ifndef IHC_NORM_SOLVER_HPP
#define IHC_NORM_SOLVER_HPP

#include <optional>
#include <vector>

#include "ihc/impulse.hpp"

namespace ihc {

/// Data of the minimal-norm problem at horizon T: active block count k,
/// per-block decay factors E_j = diag(exp(-lambda_n (T - tau_j))), and the
/// drift b = e^{Delta T} y0.
struct NormProblem {
  const ProblemConfig* config = nullptr;
  double T = 0.0;
  int active_count = 0;
  std::vector<Eigen::VectorXd> decay;  // E_j, j = 1..active_count
  SpectralState drift;

  /// exclude_last drops block k, yielding the problem whose value is the
  /// left limit of N*(.) at T = tau_k.
  static NormProblem build(const ProblemConfig& config, double T,
                           bool exclude_last = false);
};

struct SolveOptions {
  int max_iterations = 5000;
  int stall_window = 200;
  double stall_tol = 1e-11;
  int restarts = 8;
  double tol_feas_rel = 1e-8;  // tol_feas = tol_feas_rel * max(1, r)
  std::optional<SpectralState> warm_start;
};

struct NormSolution {
  double value = 0.0;              // N*(T)
  SpectralState dual_direction;    // unit maximizer of the dual functional
  ControlSequence controls;
  SpectralState terminal;
  double weak_duality_gap = 0.0;
  double feasibility_residual = 0.0;
  double T = 0.0;
  int active_count = 0;
};

/// Dual functional from the ball/attainable-set separation:
///   J(zeta) = (<-b, zeta> - r ||zeta||) / sum_j ||chi_{omega_j} E_j zeta||.
/// Homogeneous of degree zero; N*(T) = max(0, sup J). Returns -infinity
/// when the denominator vanishes.
double dual_value(const SpectralState& zeta, const NormProblem& problem);

/// Bang-bang primal recovery: u_j = m G_j E_j zeta / ||chi_{omega_j} E_j zeta||.
ControlSequence recover_primal(const SpectralState& zeta, double m,
                               const NormProblem& problem);

NormSolution solve_norm(const ProblemConfig& config, double T,
                        const SolveOptions& opts = {});

/// Value of (NP)_{tau_k} with only blocks 1..k-1 permitted; equals the left
/// limit of N*(.) at tau_k. Requires k >= 2.
double solve_norm_restricted(const ProblemConfig& config, int k,
                             const SolveOptions& opts = {});

struct FeasibilityReport {
  double terminal_norm = 0.0;
  double residual = 0.0;  // ||y(T)|| - r (signed)
  double max_block_norm = 0.0;
};

FeasibilityReport feasibility_check(const ProblemConfig& config,
                                    const ControlSequence& controls, double T);

}  // namespace ihc

#endif
