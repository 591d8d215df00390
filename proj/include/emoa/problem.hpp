#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "emoa/individual.hpp"

namespace emoa {

/// Turns raw constraint violations into a single non-negative infeasibility
/// value: sum of violations divided by their scale factors. Zero iff every
/// constraint is satisfied.
struct InfeasibilityAggregator {
  std::vector<double> scales;

  double operator()(std::span<const double> violations) const {
    if (violations.size() != scales.size()) {
      throw std::logic_error(
          "infeasibility: violation count does not match scale count");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < violations.size(); ++k) {
      if (violations[k] < 0.0) {
        throw std::logic_error("infeasibility: negative constraint violation");
      }
      if (scales[k] <= 0.0) {
        throw std::invalid_argument(
            "infeasibility: scale factors must be positive");
      }
      total += violations[k] / scales[k];
    }
    return total;
  }
};

/// Problem definition: box bounds, objective evaluator, and (optionally) a
/// constraint evaluator plus an analytic-front sampler for metrics.
struct Problem {
  std::string name;
  std::size_t dimension = 0;
  std::size_t objective_count = 2;
  Bounds bounds;
  std::function<ObjectiveVector(const Genome&)> objectives;
  /// Returns one violation magnitude (>= 0) per constraint; empty
  /// function means the problem is unconstrained.
  std::function<std::vector<double>(const Genome&)> constraints;
  InfeasibilityAggregator infeasibility;
  /// Samples the known Pareto front in objective space; empty if unknown.
  std::function<std::vector<ObjectiveVector>(std::size_t)> front_sampler;
  /// Reference point for 2-objective hypervolume tracking; chosen so that
  /// even early random populations dominate it.
  std::array<double, 2> hypervolume_reference{1.1, 11.0};
  int default_generations = 150;

  [[nodiscard]] bool constrained() const {
    return static_cast<bool>(constraints);
  }
};

inline void validate_bounds(const Problem& problem) {
  if (problem.dimension == 0 ||
      problem.bounds.size() != problem.dimension) {
    throw std::invalid_argument("problem '" + problem.name +
                                "': bounds do not match dimension");
  }
  for (const Interval& iv : problem.bounds) {
    if (!iv.valid()) {
      throw std::invalid_argument("problem '" + problem.name +
                                  "': malformed interval (lo >= hi)");
    }
  }
}

/// Evaluates a genome into a complete Individual. Objective values are cached
/// on the individual; a non-finite objective aborts the run.
inline Individual evaluate_individual(const Problem& problem, Genome genome) {
  Individual ind;
  ind.genome = std::move(genome);
  ind.objectives = problem.objectives(ind.genome);
  if (ind.objectives.size() != problem.objective_count) {
    throw std::logic_error("problem '" + problem.name +
                           "': evaluator returned wrong objective count");
  }
  for (double f : ind.objectives) {
    if (!std::isfinite(f)) {
      throw std::runtime_error("problem '" + problem.name +
                               "': objective evaluation produced a "
                               "non-finite value; aborting run");
    }
  }
  if (problem.constrained()) {
    ind.infeasibility = problem.infeasibility(problem.constraints(ind.genome));
  }
  return ind;
}

/// Samples `size` individuals coordinate-wise uniformly within bounds and
/// evaluates them.
inline Population new_random_population(const Problem& problem,
                                        std::size_t size, Rng& rng) {
  if (size < 2) {
    throw std::invalid_argument("population size must be at least 2");
  }
  validate_bounds(problem);
  Population pop;
  pop.reserve(size);
  for (std::size_t k = 0; k < size; ++k) {
    Genome g(problem.dimension);
    for (std::size_t i = 0; i < problem.dimension; ++i) {
      std::uniform_real_distribution<double> coord(problem.bounds[i].lo,
                                                   problem.bounds[i].hi);
      g[i] = coord(rng);
    }
    pop.push_back(evaluate_individual(problem, std::move(g)));
  }
  return pop;
}

}  // namespace emoa
