#include "ihc/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ihc/errors.hpp"

namespace ihc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<SpectralState> unit_directions(int modes, double step) {
  std::vector<SpectralState> dirs;
  if (modes == 1) {
    dirs.push_back(SpectralState::Constant(1, 1.0));
    dirs.push_back(SpectralState::Constant(1, -1.0));
    return dirs;
  }
  if (modes == 2) {
    const int count = static_cast<int>(std::ceil(kTwoPi / step));
    dirs.reserve(count);
    for (int i = 0; i < count; ++i) {
      const double theta = i * kTwoPi / count;
      SpectralState d(2);
      d << std::cos(theta), std::sin(theta);
      dirs.push_back(std::move(d));
    }
    return dirs;
  }
  // modes == 3: latitude/longitude grid.
  const int n_lat = static_cast<int>(std::ceil(std::numbers::pi / step));
  for (int i = 0; i <= n_lat; ++i) {
    const double phi = i * std::numbers::pi / n_lat;
    const double s = std::sin(phi);
    const int n_lon =
        std::max(1, static_cast<int>(std::ceil(kTwoPi * s / step)));
    for (int j = 0; j < n_lon; ++j) {
      const double theta = j * kTwoPi / n_lon;
      SpectralState d(3);
      d << s * std::cos(theta), s * std::sin(theta), std::cos(phi);
      dirs.push_back(std::move(d));
    }
  }
  return dirs;
}

struct ActiveBlocks {
  SpectralState drift;
  // pushes[j][i]: terminal contribution of a unit control along direction i
  // at block j, i.e. E_j G_j d_i.
  std::vector<std::vector<SpectralState>> pushes;
};

ActiveBlocks build_blocks(const ProblemConfig& config, double t,
                          const std::vector<SpectralState>& dirs) {
  ActiveBlocks blocks;
  blocks.drift = semigroup_apply(config.basis(), t, config.y0());
  for (int j = 1; j <= config.schedule().size(); ++j) {
    if (config.tau(j) > t) break;
    const Eigen::VectorXd decay =
        decay_factors(config.basis(), t - config.tau(j));
    std::vector<SpectralState> block;
    block.reserve(dirs.size());
    for (const SpectralState& d : dirs)
      block.push_back(decay.cwiseProduct(config.region(j).apply(d)));
    blocks.pushes.push_back(std::move(block));
  }
  return blocks;
}

void check_instance_size(const ProblemConfig& config, int active) {
  if (config.basis().mode_count() > 3)
    throw std::invalid_argument("oracle: instance too large (> 3 modes)");
  if (active > 3)
    throw std::invalid_argument("oracle: instance too large (> 3 impulses)");
}

// Smallest grid multiple of `step` inside the feasible-magnitude interval of
// one direction combo: {m >= 0 : ||b + m S|| <= r}.
double combo_candidate(const SpectralState& b, const SpectralState& S,
                       double r, double step) {
  const double a = S.squaredNorm();
  const double c = b.squaredNorm() - r * r;
  if (a == 0.0) return c <= 0.0 ? 0.0 : kInf;
  const double h = b.dot(S);
  const double disc = h * h - a * c;
  if (disc < 0.0) return kInf;
  const double root = std::sqrt(disc);
  const double m_lo = (-h - root) / a;
  const double m_hi = (-h + root) / a;
  if (m_hi < 0.0) return kInf;
  if (m_lo <= 0.0) return 0.0;
  const double cand = std::ceil(m_lo / step - 1e-12) * step;
  return cand <= m_hi ? cand : kInf;
}

// argmin of ||c + A u|| over ||u|| <= cap: eigendecompose A^T A and solve the
// monotone secular equation ||u(mu)|| = cap in the multiplier mu when the
// unconstrained minimizer exceeds the cap.
SpectralState ball_least_squares(const Eigen::MatrixXd& A,
                                 const SpectralState& c, double cap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.transpose() * A);
  const Eigen::VectorXd d = es.eigenvalues();
  const Eigen::MatrixXd& V = es.eigenvectors();
  const Eigen::VectorXd g = V.transpose() * (-A.transpose() * c);

  auto norm2_at = [&](double mu) {
    double s = 0.0;
    for (int i = 0; i < d.size(); ++i) {
      const double den = d(i) + mu;
      // Components along (numerically) null eigenvectors carry no data:
      // A^T c is orthogonal to the kernel of A^T A.
      if (den > 1e-14) s += (g(i) / den) * (g(i) / den);
    }
    return s;
  };
  auto build = [&](double mu) {
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(d.size());
    for (int i = 0; i < d.size(); ++i) {
      const double den = d(i) + mu;
      if (den > 1e-14) coef(i) = g(i) / den;
    }
    return SpectralState(V * coef);
  };

  if (norm2_at(0.0) <= cap * cap) return build(0.0);
  double lo = 0.0, hi = 1.0;
  while (norm2_at(hi) > cap * cap) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (norm2_at(mid) > cap * cap ? lo : hi) = mid;
  }
  return build(0.5 * (lo + hi));
}

// Exact min of ||drift + sum_j A_j u_j|| subject to ||u_j|| <= cap, by
// block-coordinate descent; the objective is jointly convex and each block
// solve is exact, so the value converges to the global minimum.
double reachable_min_norm(const SpectralState& drift,
                          const std::vector<Eigen::MatrixXd>& maps,
                          double cap, double good_enough) {
  const int k = static_cast<int>(maps.size());
  std::vector<SpectralState> u(k, SpectralState::Zero(drift.size()));
  SpectralState residual = drift;
  double prev = residual.norm();
  for (int sweep = 0; sweep < 2000; ++sweep) {
    for (int j = 0; j < k; ++j) {
      const SpectralState without = residual - maps[j] * u[j];
      u[j] = ball_least_squares(maps[j], without, cap);
      residual = without + maps[j] * u[j];
    }
    const double cur = residual.norm();
    // A feasibility query only needs to know whether the minimum clears
    // good_enough; stop as soon as that is settled.
    if (cur <= good_enough) return cur;
    if (prev - cur <= 1e-13 * (1.0 + cur)) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

BruteResult brute_norm(const ProblemConfig& config, double T,
                       const OracleGrid& grid) {
  const auto dirs =
      unit_directions(config.basis().mode_count(), grid.direction_step);
  const ActiveBlocks blocks = build_blocks(config, T, dirs);
  const int k = static_cast<int>(blocks.pushes.size());
  check_instance_size(config, k);

  const double step = grid.magnitude_step_rel * config.y0().norm();
  const double r = config.r();
  const int n_dirs = static_cast<int>(dirs.size());

  // Free decay already suffices (T at or past gamma, up to round-off).
  if (blocks.drift.norm() <= r * (1.0 + 1e-11)) return BruteResult{};

  // Option index n_dirs means the block is off (zero control).
  double best = kInf;
  SpectralState sum(config.basis().mode_count());
  auto recurse = [&](auto&& self, int depth, const SpectralState& acc) -> void {
    if (depth == k) {
      best = std::min(best, combo_candidate(blocks.drift, acc, r, step));
      return;
    }
    for (int i = 0; i <= n_dirs; ++i) {
      if (i == n_dirs) {
        self(self, depth + 1, acc);
      } else {
        self(self, depth + 1, acc + blocks.pushes[depth][i]);
      }
    }
  };
  sum.setZero();
  recurse(recurse, 0, sum);

  if (best == kInf)
    throw ConsistencyError("brute_norm: no feasible magnitude found");

  BruteResult res;
  res.value = best;
  // Direction-grid slack: a grid direction is within half a step of the
  // optimal one, losing at most a factor cos(step/2) of push.
  const double dir_margin =
      best * (1.0 - std::cos(grid.direction_step / 2.0)) * 4.0 + 1e-12;
  res.lo = std::max(0.0, best - step - dir_margin);
  res.hi = best;
  return res;
}

BruteResult brute_time(const ProblemConfig& config, double M,
                       const OracleGrid& grid) {
  if (M < 0.0) throw std::domain_error("brute_time: M must be >= 0");
  check_instance_size(config, config.k0());

  const double gamma = config.gamma();
  const double step = grid.time_step_rel * gamma;
  const double r = config.r();
  const int modes = config.basis().mode_count();

  const int max_steps = static_cast<int>(std::ceil(gamma / step)) + 2;
  for (int it = 1; it <= max_steps; ++it) {
    const double t = std::min(it * step, gamma);

    std::vector<Eigen::MatrixXd> maps;
    for (int j = 1; j <= config.schedule().size(); ++j) {
      if (config.tau(j) > t) break;
      const Eigen::VectorXd decay = decay_factors(config.basis(), t - config.tau(j));
      Eigen::MatrixXd gram = config.region(j).identity
                                 ? Eigen::MatrixXd::Identity(modes, modes)
                                 : config.region(j).gram;
      maps.push_back(decay.asDiagonal() * gram);
    }

    const SpectralState drift = semigroup_apply(config.basis(), t, config.y0());
    const double threshold = r + 1e-12 * std::max(1.0, r);
    const double best = (maps.empty() || M == 0.0)
                            ? drift.norm()
                            : reachable_min_norm(drift, maps, M, threshold);

    if (best <= threshold) {
      BruteResult res;
      res.value = t;
      res.lo = std::max(0.0, t - step - 1e-9);
      res.hi = t;
      return res;
    }
    if (t >= gamma) break;
  }
  throw ConsistencyError("brute_time: no feasible instant up to gamma");
}

ProblemConfig random_instance(const InstanceSpec& spec) {
  if (spec.modes < 1 || spec.modes > 3)
    throw std::invalid_argument("random_instance: modes must be in [1,3]");
  if (spec.impulses < 1 || spec.impulses > 3)
    throw std::invalid_argument("random_instance: impulses must be in [1,3]");

  std::mt19937_64 rng(spec.seed * 1000003ULL +
                      static_cast<unsigned long long>(spec.index));
  auto uniform = [&](double lo, double hi) {
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
    return lo + u * (hi - lo);
  };

  const DomainSpec domain = IntervalDomain{std::numbers::pi};
  Eigenbasis basis = Eigenbasis::build(domain, spec.modes);

  SpectralState y0(spec.modes);
  for (int n = 0; n < spec.modes; ++n) {
    const double mag = uniform(0.6, 1.6);
    y0(n) = uniform(0.0, 1.0) < 0.5 ? -mag : mag;
  }

  std::vector<double> instants;
  double t = uniform(0.25, 0.45);
  for (int j = 0; j < spec.impulses; ++j) {
    instants.push_back(t);
    t += uniform(0.25, 0.45);
  }
  const double gamma_target = instants.back() + uniform(0.3, 0.5);
  const double r =
      semigroup_apply(basis, gamma_target, y0).norm();

  ImpulseSchedule schedule;
  schedule.instants = instants;
  schedule.regions.assign(instants.size(),
                          region_gram(basis, full_region(domain)));
  return ProblemConfig(std::move(basis), std::move(schedule), std::move(y0),
                       r);
}

}  // namespace ihc
