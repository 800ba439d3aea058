#include <doctest.h>

#include <cmath>

#include "ihc/config_io.hpp"
#include "ihc/norm_solver.hpp"
#include "ihc/oracle.hpp"
#include "ihc/time_solver.hpp"

#include "helpers.hpp"

using namespace ihc;

TEST_CASE("brute norm brackets the worked-example value") {
  const ProblemConfig config = remark35_config(2);
  const BruteResult res = brute_norm(config, std::log(4.0));
  CHECK(res.lo <= 1.0 / 18.0);
  CHECK(res.hi >= 1.0 / 18.0);
  CHECK(res.hi - res.lo <= 1e-2);

  // At the free-decay horizon no control is needed.
  const BruteResult at_gamma = brute_norm(config, config.gamma());
  CHECK(at_gamma.value == 0.0);
}

TEST_CASE("brute norm brackets the solver on seeded instances") {
  for (int index = 0; index < 6; ++index) {
    const ProblemConfig config = random_instance({2, 2, 42, index});
    const double T = 0.5 * (config.tau(2) + config.gamma());
    const double value = solve_norm(config, T).value;
    const BruteResult res = brute_norm(config, T);
    CHECK(res.lo <= value + 1e-12);
    CHECK(value <= res.hi + 1e-12);
    CHECK(res.hi - res.lo <= 1e-2);
  }
}

TEST_CASE("brute norm refinement never worsens the estimate") {
  const ProblemConfig config = random_instance({2, 2, 42, 4});
  const double T = 0.5 * (config.tau(2) + config.gamma());
  OracleGrid coarse;
  OracleGrid fine = coarse;
  fine.direction_step /= 2.0;
  fine.magnitude_step_rel /= 2.0;
  const BruteResult c = brute_norm(config, T, coarse);
  const BruteResult f = brute_norm(config, T, fine);
  CHECK(f.hi <= c.hi + 1e-12);
  CHECK(f.hi - f.lo <= c.hi - c.lo + 1e-12);
}

TEST_CASE("brute time brackets the worked-example plateau value") {
  const ProblemConfig config = remark35_config(2);
  const BruteResult res = brute_time(config, 0.1);
  CHECK(res.lo <= std::log(4.0));
  CHECK(res.hi >= std::log(4.0) - 1e-12);
  CHECK(res.hi - res.lo <= 1e-2);

  // M = 0 is plain free decay.
  const BruteResult free_decay = brute_time(config, 0.0);
  CHECK(free_decay.value >= config.gamma() - 1e-9);
  CHECK(free_decay.lo <= config.gamma());
}

TEST_CASE("brute time brackets the solver on seeded instances") {
  for (int index = 0; index < 4; ++index) {
    const ProblemConfig config = random_instance({2, 2, 42, index});
    const PlateauTable table = plateau_table(config);
    NormCache cache(config);
    const double m_top = table.entries.empty() ? 0.5 * *table.saturation
                                               : table.entries[0].m_inf;
    for (double frac : {0.4, 0.8}) {
      const double M = frac * m_top;
      const double t = minimal_time(config, M, table, cache).optimal_time;
      const BruteResult res = brute_time(config, M);
      CHECK(res.lo <= t + 1e-9);
      CHECK(t <= res.hi + 1e-9);
      CHECK(res.hi - res.lo <= 1e-2);
    }
  }
}

TEST_CASE("oracles refuse large instances") {
  const ProblemConfig big = remark35_config(4);
  CHECK_THROWS_AS(brute_norm(big, std::log(4.0)), std::invalid_argument);
  CHECK_THROWS_AS(brute_time(big, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(brute_time(remark35_config(2), -1.0), std::domain_error);
}

TEST_CASE("seeded instances are reproducible and well-posed") {
  const ProblemConfig a = random_instance({2, 2, 42, 7});
  const ProblemConfig b = random_instance({2, 2, 42, 7});
  CHECK((a.y0() - b.y0()).norm() == 0.0);
  CHECK(a.r() == b.r());
  CHECK(a.tau(1) == b.tau(1));
  CHECK(a.tau(2) == b.tau(2));

  const ProblemConfig c = random_instance({2, 2, 42, 8});
  CHECK((a.y0() - c.y0()).norm() > 0.0);

  for (int index = 0; index < 20; ++index) {
    const ProblemConfig inst = random_instance({2, 2, 42, index});
    CHECK(inst.gamma() > inst.tau(inst.schedule().size()));
    CHECK(inst.condition() == Condition::C2);
    CHECK(inst.k0() == inst.schedule().size());
  }

  CHECK_THROWS_AS(random_instance({5, 2, 42, 0}), std::invalid_argument);
  CHECK_THROWS_AS(random_instance({2, 0, 42, 0}), std::invalid_argument);
}

TEST_CASE("single-mode closed form matches the oracle") {
  // One mode, full-domain regions: N*(T) = max(0, (a e^{-T} - r)/sum e^{-(T-tau_j)}).
  const ProblemConfig config = random_instance({1, 2, 42, 3});
  const double a = std::abs(config.y0()(0));
  const double lambda = config.basis().lambda1();
  for (double frac : {0.3, 0.7}) {
    const double T = config.tau(2) + frac * (config.gamma() - config.tau(2));
    double den = 0.0;
    for (int j = 1; j <= 2; ++j) den += std::exp(-lambda * (T - config.tau(j)));
    const double expected =
        std::max(0.0, (a * std::exp(-lambda * T) - config.r()) / den);
    const BruteResult res = brute_norm(config, T);
    CHECK(res.lo <= expected + 1e-12);
    CHECK(expected <= res.hi + 1e-12);
    CHECK(solve_norm(config, T).value ==
          doctest::Approx(expected).epsilon(1e-8));
  }
}
