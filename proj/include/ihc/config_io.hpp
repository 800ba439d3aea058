#ifndef IHC_CONFIG_IO_HPP
#define IHC_CONFIG_IO_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "ihc/impulse.hpp"
#include "ihc/norm_solver.hpp"

namespace ihc {

struct LoadedProblem {
  ProblemConfig config;
  SolveOptions solver;
};

/// Parse a problem from the flat JSON schema:
/// {"domain": {"kind": "interval"|"rectangle", "lengths": [...]},
///  "modes": N, "y0": {"coeffs": [...]}, "r": R,
///  "impulses": [{"tau": T, "region": {"lo": [...], "hi": [...]}}, ...],
///  "solver": {...optional overrides...}}
/// A missing impulse region means the full domain.
LoadedProblem parse_problem(const nlohmann::json& j);
LoadedProblem load_problem(const std::string& path);

/// The built-in worked example: interval (0, pi), y0 = e1, r = 1/6,
/// impulses at ln 2 and ln 4 acting on the whole domain.
ProblemConfig remark35_config(int modes = 16);

}  // namespace ihc

#endif
