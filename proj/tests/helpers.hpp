#ifndef IHC_TEST_HELPERS_HPP
#define IHC_TEST_HELPERS_HPP

#include <cmath>
#include <functional>
#include <random>

namespace ihc::test {

// Adaptive Simpson quadrature, used as an independent oracle for the
// closed-form Gram integrals.
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-12,
                               int depth = 30) {
  const double c = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fc = f(c);
  std::function<double(double, double, double, double, double, double, int)>
      rec = [&](double lo, double hi, double flo, double fhi, double fmid,
                double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
    const double fl = f(lmid), fr = f(rmid);
    const double h = hi - lo;
    const double whole = h / 6.0 * (flo + 4.0 * fmid + fhi);
    const double left = h / 12.0 * (flo + 4.0 * fl + fmid);
    const double right = h / 12.0 * (fmid + 4.0 * fr + fhi);
    if (d <= 0 || std::abs(left + right - whole) < 15.0 * eps)
      return left + right + (left + right - whole) / 15.0;
    return rec(lo, mid, flo, fmid, fl, eps / 2.0, d - 1) +
           rec(mid, hi, fmid, fhi, fr, eps / 2.0, d - 1);
  };
  return rec(a, b, fa, fb, fc, tol, depth);
}

inline std::mt19937 seeded_rng(unsigned seed = 42) {
  return std::mt19937(seed);
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace ihc::test

#endif
