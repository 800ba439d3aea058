#include "ihc/norm_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ihc/errors.hpp"

namespace ihc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct DualEval {
  double value = kNegInf;
  Eigen::VectorXd grad;
};

// J and its gradient on the unit sphere. J is homogeneous of degree zero,
// so the gradient is automatically tangent to the sphere.
DualEval eval_dual(const SpectralState& zeta, const NormProblem& pb,
                   bool with_grad) {
  const ProblemConfig& cfg = *pb.config;
  const double nz = zeta.norm();
  const double num = -pb.drift.dot(zeta) - cfg.r() * nz;

  double den = 0.0;
  Eigen::VectorXd grad_den;
  if (with_grad) grad_den = Eigen::VectorXd::Zero(zeta.size());
  for (int j = 1; j <= pb.active_count; ++j) {
    const Eigen::VectorXd v = pb.decay[j - 1].cwiseProduct(zeta);
    const RegionOperator& G = cfg.region(j);
    const Eigen::VectorXd gv = G.apply(v);
    const double rho = std::sqrt(std::max(v.dot(gv), 0.0));
    den += rho;
    if (with_grad && rho > 0.0)
      grad_den += pb.decay[j - 1].cwiseProduct(gv) / rho;
  }

  DualEval out;
  if (den <= 0.0) return out;  // -inf sentinel
  out.value = num / den;
  if (with_grad) {
    const Eigen::VectorXd grad_num = -pb.drift - (cfg.r() / nz) * zeta;
    out.grad = (grad_num - out.value * grad_den) / den;
  }
  return out;
}

struct AscentResult {
  SpectralState zeta;
  double value = kNegInf;
  bool converged = false;
};

// Projected gradient ascent on the unit sphere with a backtracking step.
// The spec's fixed 1/sqrt(iter) rule stalls far above the 1e-11 threshold;
// the adaptive step reaches it in a few hundred iterations.
AscentResult ascend(SpectralState zeta, const NormProblem& pb,
                    const SolveOptions& opts) {
  AscentResult res;
  zeta.normalize();
  DualEval cur = eval_dual(zeta, pb, true);
  if (cur.value == kNegInf) return res;

  std::vector<double> history;
  history.reserve(opts.max_iterations);
  double step = 1.0;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    history.push_back(cur.value);
    if (iter >= opts.stall_window &&
        cur.value - history[iter - opts.stall_window] < opts.stall_tol) {
      res.converged = true;
      break;
    }
    bool improved = false;
    for (int trial = 0; trial < 60; ++trial) {
      SpectralState cand = (zeta + step * cur.grad).normalized();
      const DualEval ce = eval_dual(cand, pb, true);
      if (ce.value > cur.value) {
        zeta = std::move(cand);
        cur = ce;
        step *= 1.8;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {  // no ascent direction left at machine precision
      res.converged = true;
      break;
    }
  }
  res.zeta = std::move(zeta);
  res.value = cur.value;
  return res;
}

std::vector<SpectralState> start_points(const NormProblem& pb,
                                        const SolveOptions& opts) {
  const int n = static_cast<int>(pb.drift.size());
  std::vector<SpectralState> starts;
  if (opts.warm_start && opts.warm_start->size() == n &&
      opts.warm_start->norm() > 0.0)
    starts.push_back(opts.warm_start->normalized());
  if (pb.drift.norm() > 0.0) starts.push_back(-pb.drift.normalized());
  int axis = 0;
  double sign = 1.0;
  while (static_cast<int>(starts.size()) < opts.restarts) {
    SpectralState e = SpectralState::Zero(n);
    e(axis) = sign;
    starts.push_back(std::move(e));
    if (sign > 0.0) {
      sign = -1.0;
    } else {
      sign = 1.0;
      axis = (axis + 1) % n;
    }
  }
  return starts;
}

struct DualOptimum {
  double value = 0.0;  // max(0, sup J)
  SpectralState zeta;
  bool positive = false;
};

DualOptimum maximize_dual(const NormProblem& pb, const SolveOptions& opts) {
  DualOptimum best;
  double best_raw = kNegInf;
  bool any_converged = false;
  for (const SpectralState& s : start_points(pb, opts)) {
    const AscentResult res = ascend(s, pb, opts);
    any_converged = any_converged || res.converged;
    if (res.value > best_raw) {
      best_raw = res.value;
      best.zeta = res.zeta;
    }
  }
  if (best_raw == kNegInf)
    throw DegenerateAdjointError(
        "dual functional degenerate for every start direction");
  if (!any_converged)
    throw ConvergenceError("dual ascent hit the iteration cap on all starts",
                           std::max(best_raw, 0.0),
                           std::numeric_limits<double>::infinity());
  best.positive = best_raw > 0.0;
  best.value = std::max(best_raw, 0.0);
  return best;
}

}  // namespace

NormProblem NormProblem::build(const ProblemConfig& config, double T,
                               bool exclude_last) {
  const double tau1 = config.tau(1);
  const bool c2 = config.condition() == Condition::C2;
  const double slack = 1e-12 * std::max(1.0, config.gamma());
  // No upper bound on T: past gamma(y0) the zero control is optimal.
  if (c2 ? T < tau1 - slack : T <= tau1)
    throw std::invalid_argument(
        c2 ? "solve_norm: T below tau_1"
           : "solve_norm: T must exceed tau_1 under (C1)");

  NormProblem pb;
  pb.config = &config;
  pb.T = T;
  const double eq_tol = 1e-12 * std::max(1.0, T);
  int k = 0;
  for (int j = 1; j <= config.schedule().size(); ++j) {
    if (config.tau(j) <= T + eq_tol) k = j;
  }
  if (exclude_last) {
    if (k < 2)
      throw std::invalid_argument("restricted problem needs k >= 2");
    --k;
  }
  pb.active_count = k;
  pb.decay.reserve(k);
  for (int j = 1; j <= k; ++j)
    pb.decay.push_back(decay_factors(config.basis(), T - config.tau(j)));
  pb.drift = semigroup_apply(config.basis(), T, config.y0());
  return pb;
}

double dual_value(const SpectralState& zeta, const NormProblem& problem) {
  if (zeta.size() != problem.drift.size())
    throw std::invalid_argument("dual_value: dimension mismatch");
  if (zeta.norm() == 0.0)
    throw std::invalid_argument("dual_value: zeta must be nonzero");
  return eval_dual(zeta, problem, false).value;
}

ControlSequence recover_primal(const SpectralState& zeta, double m,
                               const NormProblem& problem) {
  if (m < 0.0) throw std::invalid_argument("recover_primal: m must be >= 0");
  const ProblemConfig& cfg = *problem.config;
  const int modes = cfg.basis().mode_count();
  ControlSequence seq = ControlSequence::zeros(cfg.schedule().size(), modes);
  seq.active_count = problem.active_count;
  if (m == 0.0) return seq;
  for (int j = 1; j <= problem.active_count; ++j) {
    const Eigen::VectorXd v = problem.decay[j - 1].cwiseProduct(zeta);
    const RegionOperator& G = cfg.region(j);
    const Eigen::VectorXd gv = G.apply(v);
    const double rho = std::sqrt(std::max(v.dot(gv), 0.0));
    if (rho <= 1e-14 * std::max(1.0, zeta.norm()))
      throw DegenerateAdjointError(
          "adjoint direction vanishes on control region " +
          std::to_string(j));
    seq.controls[j - 1] = (m / rho) * gv;
  }
  return seq;
}

namespace {

NormSolution assemble_solution(const NormProblem& pb, const DualOptimum& opt) {
  const ProblemConfig& cfg = *pb.config;
  const int modes = cfg.basis().mode_count();

  NormSolution sol;
  sol.T = pb.T;
  sol.active_count = pb.active_count;

  if (!opt.positive) {
    sol.value = 0.0;
    sol.controls = ControlSequence::zeros(cfg.schedule().size(), modes);
    sol.controls.active_count = pb.active_count;
    sol.dual_direction = pb.drift.norm() > 0.0
                             ? SpectralState(-pb.drift.normalized())
                             : opt.zeta;
    sol.terminal = pb.drift;
    sol.feasibility_residual =
        std::max(0.0, pb.drift.norm() - cfg.r());
    return sol;
  }

  sol.value = opt.value;
  sol.dual_direction = opt.zeta.normalized();
  sol.controls = recover_primal(sol.dual_direction, sol.value, pb);

  // Per-unit-m terminal push of the recovered direction.
  SpectralState push = SpectralState::Zero(modes);
  for (int j = 1; j <= pb.active_count; ++j) {
    push += pb.decay[j - 1].cwiseProduct(
        cfg.region(j).apply(sol.controls.controls[j - 1]));
  }
  push /= sol.value;
  sol.terminal = pb.drift + sol.value * push;
  sol.feasibility_residual = std::max(0.0, sol.terminal.norm() - cfg.r());

  // Smallest scaling of the recovered direction that is feasible; a primal
  // upper bound certifying the duality gap.
  const double a = push.squaredNorm();
  const double b = pb.drift.dot(push);
  const double c = pb.drift.squaredNorm() - cfg.r() * cfg.r();
  const double disc = b * b - a * c;
  if (a > 0.0 && disc >= 0.0) {
    const double m_feas = (-b - std::sqrt(disc)) / a;
    sol.weak_duality_gap = std::max(0.0, m_feas - sol.value);
  } else {
    sol.weak_duality_gap = std::numeric_limits<double>::infinity();
  }
  return sol;
}

}  // namespace

NormSolution solve_norm(const ProblemConfig& config, double T,
                        const SolveOptions& opts) {
  const NormProblem pb = NormProblem::build(config, T);
  // At (or numerically past) the free-decay time the zero control wins; the
  // slack absorbs the bisection tolerance of gamma(y0) itself.
  if (pb.drift.norm() <= config.r() * (1.0 + 1e-11)) {
    DualOptimum zero;
    zero.zeta = SpectralState::Zero(config.basis().mode_count());
    return assemble_solution(pb, zero);
  }
  return assemble_solution(pb, maximize_dual(pb, opts));
}

double solve_norm_restricted(const ProblemConfig& config, int k,
                             const SolveOptions& opts) {
  if (k < 2)
    throw std::invalid_argument("solve_norm_restricted: k must be >= 2");
  if (k > config.schedule().size())
    throw std::invalid_argument("solve_norm_restricted: k beyond schedule");
  const NormProblem pb =
      NormProblem::build(config, config.tau(k), /*exclude_last=*/true);
  if (pb.drift.norm() <= config.r()) return 0.0;
  return maximize_dual(pb, opts).value;
}

FeasibilityReport feasibility_check(const ProblemConfig& config,
                                    const ControlSequence& controls,
                                    double T) {
  FeasibilityReport report;
  report.terminal_norm = evolve(config, controls, T, true).norm();
  report.residual = report.terminal_norm - config.r();
  for (int j = 0; j < controls.active_count; ++j)
    report.max_block_norm =
        std::max(report.max_block_norm, controls.controls[j].norm());
  return report;
}

}  // namespace ihc
