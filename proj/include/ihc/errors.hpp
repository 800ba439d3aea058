#ifndef IHC_ERRORS_HPP
#define IHC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ihc {

/// Invalid problem description (bad domain, schedule, region, ...).
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Initial state already inside the target ball, or gamma(y0) <= tau_1.
class DegenerateProblemError : public ConfigError {
public:
  explicit DegenerateProblemError(const std::string& what) : ConfigError(what) {}
};

/// Dual ascent failed to converge; carries the best bounds found so far.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_bound(lower), upper_bound(upper) {}
  double lower_bound;
  double upper_bound;
};

/// The restriction of the adjoint state to a control region vanished.
/// In the truncated model this signals insufficient mode count.
class DegenerateAdjointError : public std::runtime_error {
public:
  explicit DegenerateAdjointError(const std::string& what)
      : std::runtime_error(what) {}
};

/// An internal invariant (e.g. plateau chain ordering) failed.
class ConsistencyError : public std::logic_error {
public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ihc

#endif
