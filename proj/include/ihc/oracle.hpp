#ifndef IHC_ORACLE_HPP
#define IHC_ORACLE_HPP

#include <random>

#include "ihc/impulse.hpp"

namespace ihc {

/// Grid resolutions for the brute-force solvers. Magnitude and time steps
/// are relative to ||y0|| and gamma(y0) respectively.
struct OracleGrid {
  double direction_step = 3.14159265358979323846 / 180.0;
  double magnitude_step_rel = 1e-3;
  double time_step_rel = 1e-3;
};

struct BruteResult {
  double value = 0.0;
  double lo = 0.0;  // certified bracket [lo, hi] containing the true optimum
  double hi = 0.0;
};

/// Grid-search estimate of N*(T) on small instances (<= 3 modes,
/// <= 3 active impulses). Enumerates per-block directions on the sphere
/// grid with magnitudes in {0, m} and returns the smallest feasible m.
BruteResult brute_norm(const ProblemConfig& config, double T,
                       const OracleGrid& grid = {});

/// Estimate of t*(M): ascending time scan; at each instant feasibility is
/// decided by exactly minimizing the terminal norm over the per-block
/// magnitude caps (block-coordinate descent with closed ball-constrained
/// least-squares block solves).
BruteResult brute_time(const ProblemConfig& config, double M,
                       const OracleGrid& grid = {});

/// Reproducible pseudo-random small instances for CI. Full-domain control
/// regions keep the truncated model exact, so the tight-tolerance suites
/// certify the solver rather than the Galerkin projection error.
struct InstanceSpec {
  int modes = 2;
  int impulses = 2;
  unsigned seed = 42;
  int index = 0;
};

ProblemConfig random_instance(const InstanceSpec& spec);

}  // namespace ihc

#endif
