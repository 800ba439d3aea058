#include <doctest.h>

#include <cmath>
#include <limits>

#include "ihc/config_io.hpp"
#include "ihc/errors.hpp"
#include "ihc/oracle.hpp"
#include "ihc/time_solver.hpp"

#include "helpers.hpp"

using namespace ihc;
namespace th = ihc::test;

TEST_CASE("worked-example plateau table") {
  const ProblemConfig config = remark35_config(8);
  const PlateauTable table = plateau_table(config);

  CHECK(table.gamma == doctest::Approx(std::log(6.0)).epsilon(1e-12));
  CHECK(table.tau1 == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(table.k0 == 2);
  REQUIRE(table.entries.size() == 1);
  CHECK(table.entries[0].k == 2);
  CHECK(table.entries[0].tau == doctest::Approx(std::log(4.0)).epsilon(1e-15));
  CHECK(table.entries[0].m_inf == doctest::Approx(1.0 / 18.0).epsilon(1e-9));
  CHECK(table.entries[0].m_sup == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  REQUIRE(table.saturation.has_value());
  CHECK(*table.saturation == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("worked-example minimal times by regime") {
  const ProblemConfig config = remark35_config(8);

  // M = 0: no help, the free decay time.
  const TimeSolution free_decay = minimal_time(config, 0.0);
  CHECK(free_decay.regime == Regime::FreeDecay);
  CHECK(free_decay.optimal_time ==
        doctest::Approx(std::log(6.0)).epsilon(1e-10));

  // Plateau [1/18, 1/6]: t* pinned at tau_2 = ln 4 across the whole band.
  for (double M : {1.0 / 18.0, 0.1, 1.0 / 6.0}) {
    const TimeSolution sol = minimal_time(config, M);
    CHECK(sol.regime == Regime::Plateau);
    CHECK(sol.optimal_time == doctest::Approx(std::log(4.0)).epsilon(1e-10));
  }

  // Interior of (tau_2, gamma): closed form t* = ln(6 (1 - 6M)).
  for (double M : {0.01, 0.02, 0.04}) {
    const TimeSolution sol = minimal_time(config, M);
    CHECK(sol.regime == Regime::Interior);
    CHECK(sol.optimal_time ==
          doctest::Approx(std::log(6.0 * (1.0 - 6.0 * M))).epsilon(1e-7));
    CHECK(sol.minimal_norm_at_optimum == doctest::Approx(M).epsilon(1e-6));
  }

  // Interior of (tau_1, tau_2): closed form t* = ln(6 (1 - 2M)).
  for (double M : {0.18, 0.2, 0.3}) {
    const TimeSolution sol = minimal_time(config, M);
    CHECK(sol.regime == Regime::Interior);
    CHECK(sol.optimal_time ==
          doctest::Approx(std::log(6.0 * (1.0 - 2.0 * M))).epsilon(1e-7));
  }

  // At and beyond the saturation threshold M_hat = 1/3: t* = tau_1.
  for (double M : {1.0 / 3.0, 0.5, 10.0}) {
    const TimeSolution sol = minimal_time(config, M);
    CHECK(sol.regime == Regime::Saturated);
    CHECK(sol.optimal_time == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  }

  CHECK_THROWS_AS(minimal_time(config, -0.1), std::domain_error);
}

TEST_CASE("norm inversion round trip") {
  const ProblemConfig config = random_instance({2, 2, 42, 2});
  const PlateauTable table = plateau_table(config);
  NormCache cache(config);

  // Pick M strictly inside the interior segment above the top plateau.
  REQUIRE(table.entries.size() == 1);
  const double m_top = table.entries[0].m_inf;
  for (double frac : {0.25, 0.6, 0.9}) {
    const double M = frac * m_top;
    const TimeSolution sol = minimal_time(config, M, table, cache);
    CHECK(sol.regime == Regime::Interior);
    // Round trip: N*(t*(M)) = M.
    CHECK(cache.at(sol.optimal_time).value ==
          doctest::Approx(M).epsilon(1e-6));
  }
}

TEST_CASE("minimal time is non-increasing in the budget") {
  const ProblemConfig config = random_instance({2, 2, 42, 3});
  const PlateauTable table = plateau_table(config);
  NormCache cache(config);
  const double m_max = table.saturation ? 1.3 * *table.saturation
                                        : 2.0 * table.entries[0].m_sup;
  double prev = config.gamma() + 1.0;
  for (int i = 0; i <= 30; ++i) {
    const double M = m_max * i / 30.0;
    const double t = minimal_time(config, M, table, cache).optimal_time;
    CHECK(t <= prev + 1e-9);
    prev = t;
  }
}

TEST_CASE("plateau chain ordering on seeded instances") {
  for (int index = 0; index < 4; ++index) {
    const ProblemConfig config = random_instance({2, 3, 42, index});
    const PlateauTable table = plateau_table(config);
    double prev_sup = std::numeric_limits<double>::infinity();
    if (table.saturation) prev_sup = *table.saturation;
    // Entries run k = 2..k0; traverse from the largest k upward in M.
    for (const PlateauEntry& e : table.entries) {
      CHECK(e.m_inf >= -1e-12);
      CHECK(e.m_sup >= e.m_inf - 1e-9);
    }
    for (auto it = table.entries.begin(); it != table.entries.end(); ++it) {
      CHECK(it->m_sup <= prev_sup + 1e-8);
      prev_sup = it->m_sup;
    }
  }
}

TEST_CASE("minimal time agrees with the brute-force bracket") {
  const ProblemConfig config = random_instance({2, 2, 42, 0});
  const PlateauTable table = plateau_table(config);
  NormCache cache(config);
  const double m_top = table.entries.empty() ? *table.saturation
                                             : table.entries[0].m_inf;
  for (double frac : {0.3, 0.7}) {
    const double M = frac * m_top;
    const double t = minimal_time(config, M, table, cache).optimal_time;
    const BruteResult brute = brute_time(config, M);
    CHECK(t >= brute.lo - 1e-9);
    CHECK(t <= brute.hi + 1e-9);
  }
}

TEST_CASE("invert_norm rejects brackets containing impulse instants") {
  const ProblemConfig config = remark35_config(6);
  CHECK_THROWS_AS(
      invert_norm(config, 0.1, config.tau(1), config.gamma()),
      std::invalid_argument);
  // Value outside the attainable range of the bracket.
  CHECK_THROWS_AS(
      invert_norm(config, 10.0, config.tau(2), config.gamma()),
      std::invalid_argument);
}

TEST_CASE("regime names") {
  CHECK(regime_name(Regime::FreeDecay, 0) == "free-decay");
  CHECK(regime_name(Regime::Plateau, 2) == "plateau(2)");
  CHECK(regime_name(Regime::Interior, 1) == "interior(1)");
  CHECK(regime_name(Regime::Saturated, 0) == "saturated");
}
