#include <catch_amalgamated.hpp>

#include "emoa/nsga2.hpp"
#include "emoa/problem.hpp"
#include "emoa/problems.hpp"

using namespace emoa;

TEST_CASE("random initialization samples within bounds and evaluates") {
  const Problem zdt1 = make_zdt1();
  Rng rng(1);
  const Population pop = new_random_population(zdt1, 100, rng);

  REQUIRE(pop.size() == 100);
  for (const Individual& ind : pop) {
    REQUIRE(ind.genome.size() == 30);
    for (double v : ind.genome) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
    REQUIRE(ind.objectives.size() == 2);
    REQUIRE_FALSE(ind.infeasibility.has_value());
    REQUIRE_FALSE(ind.rank.has_value());
  }
}

TEST_CASE("identical seeds produce bit-identical populations") {
  const Problem zdt1 = make_zdt1();
  Rng a(1);
  Rng b(1);
  REQUIRE(new_random_population(zdt1, 100, a) ==
          new_random_population(zdt1, 100, b));

  Rng c(2);
  REQUIRE_FALSE(new_random_population(zdt1, 100, c) ==
                new_random_population(zdt1, 100, b));
}

TEST_CASE("degenerate sizes are configuration errors") {
  const Problem zdt1 = make_zdt1();
  Rng rng(1);
  REQUIRE_THROWS_AS(new_random_population(zdt1, 0, rng),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(new_random_population(zdt1, 1, rng),
                    std::invalid_argument);
}

TEST_CASE("malformed bounds are rejected") {
  Problem bad = make_zdt1(4);
  bad.bounds[2] = Interval{0.7, 0.7};
  Rng rng(1);
  REQUIRE_THROWS_AS(new_random_population(bad, 10, rng),
                    std::invalid_argument);

  Problem mismatched = make_zdt1(4);
  mismatched.bounds.pop_back();
  REQUIRE_THROWS_AS(new_random_population(mismatched, 10, rng),
                    std::invalid_argument);
}

TEST_CASE("constrained problems attach infeasibility to every individual") {
  const Problem constr = make_constr();
  Rng rng(7);
  const Population pop = new_random_population(constr, 20, rng);
  for (const Individual& ind : pop) {
    REQUIRE(ind.infeasibility.has_value());
    REQUIRE(*ind.infeasibility >= 0.0);
  }
}

TEST_CASE("cached objectives equal a fresh re-evaluation after a full run") {
  const Problem zdt1 = make_zdt1(8);
  AlgorithmConfig config;
  config.population_size = 20;
  config.generations = 12;
  config.seed = 5;
  const RunRecord record = run(zdt1, config);
  for (const Individual& ind : record.final_population) {
    REQUIRE(ind.objectives == zdt1.objectives(ind.genome));
  }
}
