#ifndef IHC_PROFILE_HPP
#define IHC_PROFILE_HPP

#include <string>
#include <vector>

#include "ihc/time_solver.hpp"

namespace ihc {

struct CurveSample {
  double x = 0.0;
  double value = 0.0;
  std::string regime;
};

struct CurveProfile {
  std::vector<CurveSample> samples;
};

/// N*(T) over (tau_1, gamma] (or [tau_1, gamma] under C2), with extra
/// samples clustered around each impulse instant to expose the jumps.
CurveProfile norm_curve(const ProblemConfig& config, const PlateauTable& table,
                        NormCache& cache, int n_samples = 400);

/// t*(M) over [0, M_max]; M_max defaults to 1.5 * m_sup(2) when a plateau
/// exists, else 1.5 * the largest finite norm scale of the instance.
CurveProfile time_curve(const ProblemConfig& config, const PlateauTable& table,
                        NormCache& cache, int n_samples = 400);

void write_curve_csv(const std::string& path, const std::string& x_name,
                     const std::string& y_name, const CurveProfile& profile);
void write_plateaus_csv(const std::string& path, const PlateauTable& table);

/// Re-read the written CSVs and check the curve monotonicity invariants.
void validate_profile_outputs(const std::string& out_dir);

/// Write norm_curve.csv, time_curve.csv and plateaus.csv into out_dir,
/// then validate them.
void run_profile(const ProblemConfig& config, const std::string& out_dir,
                 int n_samples = 400, const SolveOptions& opts = {});

}  // namespace ihc

#endif
