#include <catch_amalgamated.hpp>
#include <map>

#include "emoa/nsga2.hpp"
#include "emoa/problems.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace emoa;
using test_helpers::population_from;

TEST_CASE("algorithm config validation") {
  AlgorithmConfig config;
  REQUIRE_NOTHROW(config.validate());

  auto expect_invalid = [](AlgorithmConfig c) {
    REQUIRE_THROWS_AS(c.validate(), std::invalid_argument);
  };
  AlgorithmConfig odd = config;
  odd.population_size = 99;
  expect_invalid(odd);
  AlgorithmConfig tiny = config;
  tiny.population_size = 0;
  expect_invalid(tiny);
  AlgorithmConfig small_t = config;
  small_t.tournament_size = 1;
  expect_invalid(small_t);
  AlgorithmConfig huge_t = config;
  huge_t.tournament_size = 101;
  expect_invalid(huge_t);
  AlgorithmConfig no_gen = config;
  no_gen.generations = 0;
  expect_invalid(no_gen);
  AlgorithmConfig bad_alpha = config;
  bad_alpha.strategy.alpha = 1.0;
  expect_invalid(bad_alpha);
  AlgorithmConfig bad_rate = config;
  bad_rate.variation.crossover_rate = 1.5;
  expect_invalid(bad_rate);
}

TEST_CASE("tournament selection matches an independent replay") {
  // Replays the same stream with a hand-rolled selector: draw T indices
  // uniformly, keep the first-drawn best under (rank, crowding).
  std::mt19937_64 setup(3);
  for (int trial = 0; trial < 300; ++trial) {
    Population pop =
        population_from(test_helpers::random_objectives(setup, 12, 2));
    const RankedPopulation ranked = non_dominated_sort(pop);
    const std::size_t tsize = 2 + trial % 3;

    const std::uint64_t seed = 1000 + trial;
    Rng lib_rng(seed);
    const std::size_t got = tournament_select(pop, ranked, tsize, lib_rng);

    Rng replay(seed);
    std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
    std::size_t want = pick(replay);
    for (std::size_t k = 1; k < tsize; ++k) {
      const std::size_t challenger = pick(replay);
      const bool better =
          ranked.rank[challenger] < ranked.rank[want] ||
          (ranked.rank[challenger] == ranked.rank[want] &&
           ranked.crowding[challenger] > ranked.crowding[want]);
      if (better) want = challenger;
    }
    REQUIRE(got == want);
  }
}

TEST_CASE("tournament ties favor the earliest drawn") {
  // Two individuals with identical rank and crowding: the winner must always
  // be whichever index is drawn first.
  Population pop = population_from({{0.0, 1.0}, {1.0, 0.0}});
  const RankedPopulation ranked = non_dominated_sort(pop);
  REQUIRE(ranked.crowding[0] == infinite_crowding);
  REQUIRE(ranked.crowding[1] == infinite_crowding);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng lib_rng(seed);
    const std::size_t got = tournament_select(pop, ranked, 2, lib_rng);
    Rng replay(seed);
    std::uniform_int_distribution<std::size_t> pick(0, 1);
    REQUIRE(got == pick(replay));
  }
}

TEST_CASE("zero crossover rate copies tournament winners") {
  const Problem problem = test_helpers::identity_problem();
  Rng rng(9);
  Population pop = new_random_population(problem, 12, rng);
  const RankedPopulation ranked = non_dominated_sort(pop);

  AlgorithmConfig config;
  config.population_size = 12;
  config.variation.crossover_rate = 0.0;
  config.variation.mutation_rate = 0.0;
  const OffspringResult off = make_offspring(problem, pop, ranked, config, rng);
  REQUIRE(off.offspring.size() == 12);
  REQUIRE(off.dbx_applications == 0);
  for (const Individual& child : off.offspring) {
    REQUIRE(std::count_if(pop.begin(), pop.end(), [&](const Individual& p) {
              return p.genome == child.genome;
            }) > 0);
  }
}

TEST_CASE("StandardBLX records zero DBX applications") {
  const Problem problem = test_helpers::identity_problem();
  Rng rng(11);
  Population pop = new_random_population(problem, 20, rng);
  const RankedPopulation ranked = non_dominated_sort(pop);
  AlgorithmConfig config;
  config.population_size = 20;
  config.strategy.kind = MatingKind::standard_blx;
  for (int t = 0; t < 10; ++t) {
    REQUIRE(make_offspring(problem, pop, ranked, config, rng)
                .dbx_applications == 0);
  }
}

TEST_CASE("DBX applications are bounded and positive when dominators exist") {
  const Problem problem = test_helpers::identity_problem();
  // One strong individual dominating everyone else.
  std::vector<ObjectiveVector> objs{{0.01, 0.01}};
  std::mt19937_64 setup(13);
  std::uniform_real_distribution<double> high(0.5, 1.0);
  for (int i = 0; i < 19; ++i) objs.push_back({high(setup), high(setup)});
  Population pop;
  for (const auto& f : objs) {
    Individual ind;
    ind.genome = f;
    ind.objectives = f;
    pop.push_back(std::move(ind));
  }
  const RankedPopulation ranked = non_dominated_sort(pop);
  REQUIRE(ranked.fronts.front().size() == 1);

  AlgorithmConfig config;
  config.population_size = 20;
  config.strategy.kind = MatingKind::biased_dbx;
  config.variation.crossover_rate = 1.0;
  Rng rng(17);
  const OffspringResult off = make_offspring(problem, pop, ranked, config, rng);
  REQUIRE(off.dbx_applications > 0);
  REQUIRE(off.dbx_applications <= static_cast<int>(pop.size()));
}

TEST_CASE("a fully non-dominated population yields zero DBX for a whole "
          "generation") {
  const Problem problem = test_helpers::identity_problem();
  std::mt19937_64 setup(19);
  auto front = test_helpers::random_front_2d(setup, 16);
  Population pop;
  for (const auto& f : front) {
    Individual ind;
    ind.genome = f;
    ind.objectives = f;
    pop.push_back(std::move(ind));
  }
  const RankedPopulation ranked = non_dominated_sort(pop);
  REQUIRE(ranked.fronts.size() == 1);
  AlgorithmConfig config;
  config.population_size = 16;
  config.strategy.kind = MatingKind::symmetric_dbx;
  config.variation.crossover_rate = 1.0;
  Rng rng(23);
  for (int t = 0; t < 5; ++t) {
    REQUIRE(make_offspring(problem, pop, ranked, config, rng)
                .dbx_applications == 0);
  }
}

TEST_CASE("replacement keeps parents when offspring are all dominated") {
  auto layer = [](double level, std::size_t count) {
    std::vector<ObjectiveVector> out;
    for (std::size_t i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(count - 1);
      out.push_back({t, level - t});
    }
    return out;
  };
  const Population parents = population_from(layer(1.0, 10));
  const Population offspring = population_from(layer(2.0, 10));

  const ReplaceResult result = replace(parents, offspring, false);
  REQUIRE(result.population.size() == 10);
  for (const Individual& ind : result.population) {
    REQUIRE(ind.objectives[0] + ind.objectives[1] ==
            Catch::Approx(1.0).epsilon(1e-12));
  }

  // And symmetrically, dominating offspring replace the parents.
  const ReplaceResult flipped = replace(offspring, parents, false);
  for (const Individual& ind : flipped.population) {
    REQUIRE(ind.objectives[0] + ind.objectives[1] ==
            Catch::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("the splitting front is truncated by descending crowding") {
  // Merged fronts of sizes 60 and 80 with N = 100: all of the first front is
  // admitted, 40 of the second by crowding.
  auto layer = [](double level, std::size_t count) {
    std::vector<ObjectiveVector> out;
    for (std::size_t i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(count - 1);
      // Uneven spacing so crowding distances differ.
      const double s = t * t;
      out.push_back({s, level - s});
    }
    return out;
  };
  const auto front1 = layer(1.0, 60);
  const auto front2 = layer(2.0, 80);
  const auto front3 = layer(3.0, 40);
  const auto front4 = layer(4.0, 20);

  std::vector<ObjectiveVector> parent_objs = front1;
  parent_objs.insert(parent_objs.end(), front3.begin(), front3.end());
  std::vector<ObjectiveVector> offspring_objs = front2;
  offspring_objs.insert(offspring_objs.end(), front4.begin(), front4.end());

  const ReplaceResult result = replace(population_from(parent_objs),
                                       population_from(offspring_objs), false);
  REQUIRE(result.population.size() == 100);

  std::map<int, int> kept_per_level;
  for (const Individual& ind : result.population) {
    const double level = ind.objectives[0] + ind.objectives[1];
    kept_per_level[static_cast<int>(std::lround(level))]++;
  }
  REQUIRE(kept_per_level[1] == 60);
  REQUIRE(kept_per_level[2] == 40);
  REQUIRE(kept_per_level.count(3) == 0);
  REQUIRE(kept_per_level.count(4) == 0);

  // The 40 survivors of the split front are exactly its top-40 by crowding.
  const Population f2 = population_from(front2);
  std::vector<double> crowd = crowding_distances(f2);
  std::vector<std::size_t> order(front2.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return crowd[a] > crowd[b];
  });
  std::vector<ObjectiveVector> expected;
  for (std::size_t k = 0; k < 40; ++k) expected.push_back(front2[order[k]]);
  std::sort(expected.begin(), expected.end());

  std::vector<ObjectiveVector> got;
  for (const Individual& ind : result.population) {
    const double level = ind.objectives[0] + ind.objectives[1];
    if (std::lround(level) == 2) got.push_back(ind.objectives);
  }
  std::sort(got.begin(), got.end());
  REQUIRE(got == expected);
}

TEST_CASE("replacement requires equally sized populations") {
  const Population a = population_from({{0, 1}, {1, 0}});
  const Population b = population_from({{0, 1}});
  REQUIRE_THROWS_AS(replace(a, b, false), std::logic_error);
}

TEST_CASE("a run is deterministic and sized correctly") {
  const Problem zdt1 = make_zdt1(6);
  AlgorithmConfig config;
  config.population_size = 16;
  config.generations = 10;
  config.seed = 99;

  std::vector<std::size_t> sizes;
  const GenerationCallback observe =
      [&](int, const Population& pop, const RankedPopulation&) {
        sizes.push_back(pop.size());
      };
  const RunRecord first = run(zdt1, config, 5, observe);
  const RunRecord second = run(zdt1, config, 5);

  REQUIRE(first.final_population == second.final_population);
  REQUIRE(first.final_front == second.final_front);
  REQUIRE(first.generations.size() == 11);
  REQUIRE(first.generations.front().generation == 0);
  REQUIRE(first.generations.front().dbx_applications == 0);
  REQUIRE(first.snapshots.size() == 2);
  REQUIRE(first.snapshots[0].generation == 5);
  REQUIRE(first.snapshots[1].generation == 10);
  for (std::size_t s : sizes) REQUIRE(s == 16);
  for (const GenerationStats& row : first.generations) {
    REQUIRE(row.feasible_count == 16);
    REQUIRE(row.non_dominated_count >= 1);
    REQUIRE(row.non_dominated_count <= 16);
  }
}

TEST_CASE("a one-generation run equals init plus one cycle") {
  const Problem zdt1 = make_zdt1(6);
  AlgorithmConfig config;
  config.population_size = 10;
  config.generations = 1;
  config.seed = 4;
  const RunRecord record = run(zdt1, config);
  REQUIRE(record.generations.size() == 2);

  // Replay by hand with the same stream.
  Rng rng(4);
  Population pop = new_random_population(zdt1, 10, rng);
  RankedPopulation ranked = non_dominated_sort(pop);
  const OffspringResult off = make_offspring(zdt1, pop, ranked, config, rng);
  const ReplaceResult next = replace(pop, off.offspring, false);
  REQUIRE(record.final_population == next.population);
}

TEST_CASE("evaluation count is exactly N + N*G") {
  Problem counted = make_zdt1(6);
  auto base = counted.objectives;
  long evaluations = 0;
  counted.objectives = [&, base](const Genome& g) {
    ++evaluations;
    return base(g);
  };
  AlgorithmConfig config;
  config.population_size = 14;
  config.generations = 9;
  config.seed = 6;
  run(counted, config);
  REQUIRE(evaluations == 14 + 14 * 9);
}

TEST_CASE("elitism: no surviving rank-1 individual is dominated by the "
          "previous generation") {
  const Problem zdt1 = make_zdt1(5);
  AlgorithmConfig config;
  config.population_size = 12;
  config.generations = 15;
  config.seed = 21;

  Population previous;
  const GenerationCallback observe = [&](int gen, const Population& pop,
                                         const RankedPopulation& ranked) {
    if (gen > 0) {
      for (std::size_t i : ranked.fronts.front()) {
        for (const Individual& old : previous) {
          REQUIRE_FALSE(
              oracle::dominates(old.objectives, pop[i].objectives));
        }
      }
    }
    previous = pop;
  };
  run(zdt1, config, 0, observe);
}

TEST_CASE("non-finite objective values abort the run with a diagnostic") {
  Problem broken = test_helpers::identity_problem();
  broken.objectives = [](const Genome& g) {
    return ObjectiveVector{g[0], std::numeric_limits<double>::quiet_NaN()};
  };
  AlgorithmConfig config;
  config.population_size = 8;
  config.generations = 2;
  REQUIRE_THROWS_AS(run(broken, config), std::runtime_error);
}
