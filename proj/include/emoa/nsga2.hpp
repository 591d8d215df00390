#pragma once

#include <cstdint>
#include <functional>
#include <utility>

#include "emoa/dominance.hpp"
#include "emoa/problem.hpp"
#include "emoa/variation.hpp"

namespace emoa {

struct AlgorithmConfig {
  std::size_t population_size = 100;
  std::size_t tournament_size = 2;
  int generations = 150;
  MatingStrategy strategy;
  VariationConfig variation;
  std::uint64_t seed = 1;

  void validate() const {
    if (population_size < 2 || population_size % 2 != 0) {
      throw std::invalid_argument("population size must be even and >= 2");
    }
    if (tournament_size < 2 || tournament_size > population_size) {
      throw std::invalid_argument("tournament size must be in [2, N]");
    }
    if (generations < 1) {
      throw std::invalid_argument("generation count must be >= 1");
    }
    if (strategy.alpha <= 0.0 || strategy.alpha >= 1.0) {
      throw std::invalid_argument("BLX alpha must lie in (0, 1)");
    }
    variation.validate();
  }
};

struct OffspringResult {
  Population offspring;
  int dbx_applications = 0;
};

/// Produces N offspring. Each event selects a first parent by tournament,
/// recombines with probability crossover_rate (the mate picked by the
/// strategy's rule) or copies the first parent otherwise, then mutates and
/// evaluates the child.
inline OffspringResult make_offspring(const Problem& problem,
                                      const Population& pop,
                                      const RankedPopulation& ranked,
                                      const AlgorithmConfig& config,
                                      Rng& rng) {
  OffspringResult out;
  out.offspring.reserve(pop.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < pop.size(); ++k) {
    const std::size_t first =
        tournament_select(pop, ranked, config.tournament_size, rng);
    Genome child;
    if (unit(rng) < config.variation.crossover_rate) {
      const MateChoice choice = choose_mate(
          first, pop, ranked, config.strategy, config.tournament_size, rng);
      if (choice.dbx_applied) ++out.dbx_applications;
      child = recombine(pop[first], pop[choice.mate], config.strategy,
                        choice.dbx_applied, problem.bounds, rng);
    } else {
      child = pop[first].genome;
    }
    child = uniform_mutate(std::move(child), config.variation.mutation_rate,
                           problem.bounds, rng);
    out.offspring.push_back(evaluate_individual(problem, std::move(child)));
  }
  return out;
}

struct ReplaceResult {
  Population population;
  RankedPopulation ranking;
};

/// Deterministic elitist replacement: parents and offspring are merged and
/// sorted; whole fronts are admitted in rank order while they fit, the
/// splitting front is truncated by descending crowding distance (computed
/// within that front), ties broken by stable merged order. The survivors are
/// re-ranked so the next generation sees ranks relative to them alone.
inline ReplaceResult replace(const Population& parents,
                             const Population& offspring, bool constrained) {
  if (parents.size() != offspring.size()) {
    throw std::logic_error(
        "replacement expects equally sized parent and offspring populations");
  }
  const std::size_t n = parents.size();
  Population merged;
  merged.reserve(2 * n);
  merged.insert(merged.end(), parents.begin(), parents.end());
  merged.insert(merged.end(), offspring.begin(), offspring.end());
  const RankedPopulation merged_ranked = non_dominated_sort(merged, constrained);

  Population next;
  next.reserve(n);
  for (const std::vector<std::size_t>& front : merged_ranked.fronts) {
    if (next.size() + front.size() <= n) {
      for (std::size_t i : front) next.push_back(merged[i]);
      if (next.size() == n) break;
    } else {
      std::vector<std::size_t> by_crowding(front);
      std::stable_sort(by_crowding.begin(), by_crowding.end(),
                       [&](std::size_t i, std::size_t j) {
                         return merged_ranked.crowding[i] >
                                merged_ranked.crowding[j];
                       });
      const std::size_t need = n - next.size();
      for (std::size_t k = 0; k < need; ++k) {
        next.push_back(merged[by_crowding[k]]);
      }
      break;
    }
  }

  ReplaceResult result;
  result.population = std::move(next);
  result.ranking = non_dominated_sort(result.population, constrained);
  return result;
}

struct GenerationStats {
  int generation;            // 0 = initial population
  int non_dominated_count;   // rank-1 front size after this generation
  int dbx_applications;      // during this generation's offspring production
  int feasible_count;        // individuals with zero infeasibility
};

struct FrontSnapshot {
  int generation;
  std::vector<ObjectiveVector> objectives;
  std::vector<Genome> genomes;
};

struct RunRecord {
  AlgorithmConfig config;
  /// Row g describes the population after g generations; row 0 is the
  /// initial population. A row's dbx_applications counts matings performed
  /// while producing that row from the previous one.
  std::vector<GenerationStats> generations;
  std::vector<FrontSnapshot> snapshots;
  std::vector<ObjectiveVector> final_front;
  Population final_population;
};

/// Called after the initial ranking (generation 0) and after every
/// replacement with the population and its ranking.
using GenerationCallback =
    std::function<void(int, const Population&, const RankedPopulation&)>;

/// Runs the full elitist loop for `config.generations` generations.
/// Snapshots of the rank-1 front are recorded at every multiple of
/// `snapshot_period` (0 disables them).
inline RunRecord run(const Problem& problem, const AlgorithmConfig& config,
                     int snapshot_period = 0,
                     const GenerationCallback& observe = {}) {
  config.validate();
  const bool constrained = problem.constrained();
  Rng rng(config.seed);

  RunRecord record;
  record.config = config;

  Population pop = new_random_population(problem, config.population_size, rng);
  RankedPopulation ranked = non_dominated_sort(pop, constrained);

  const auto feasible_count = [&]() {
    int count = 0;
    for (const Individual& ind : pop) {
      if (ind.feasible()) ++count;
    }
    return count;
  };
  const auto record_stats = [&](int generation, int dbx) {
    record.generations.push_back(
        {generation, static_cast<int>(ranked.fronts.front().size()), dbx,
         feasible_count()});
  };
  const auto take_snapshot = [&](int generation) {
    FrontSnapshot snap;
    snap.generation = generation;
    for (std::size_t i : ranked.fronts.front()) {
      snap.objectives.push_back(pop[i].objectives);
      snap.genomes.push_back(pop[i].genome);
    }
    record.snapshots.push_back(std::move(snap));
  };

  record_stats(0, 0);
  if (observe) observe(0, pop, ranked);

  for (int g = 1; g <= config.generations; ++g) {
    OffspringResult off = make_offspring(problem, pop, ranked, config, rng);
    ReplaceResult next = replace(pop, off.offspring, constrained);
    pop = std::move(next.population);
    ranked = std::move(next.ranking);
    record_stats(g, off.dbx_applications);
    if (snapshot_period > 0 && g % snapshot_period == 0) take_snapshot(g);
    if (observe) observe(g, pop, ranked);
  }

  for (std::size_t i : ranked.fronts.front()) {
    record.final_front.push_back(pop[i].objectives);
  }
  record.final_population = std::move(pop);
  return record;
}

}  // namespace emoa
