#pragma once

#include <random>
#include <vector>

#include "emoa/individual.hpp"
#include "emoa/problem.hpp"

namespace test_helpers {

// Builds a population holding the given objective vectors (genomes are
// irrelevant for ranking tests and left as single zeros).
inline emoa::Population population_from(
    const std::vector<emoa::ObjectiveVector>& objectives) {
  emoa::Population pop;
  for (const emoa::ObjectiveVector& f : objectives) {
    emoa::Individual ind;
    ind.genome = {0.0};
    ind.objectives = f;
    pop.push_back(std::move(ind));
  }
  return pop;
}

inline std::vector<emoa::ObjectiveVector> random_objectives(
    std::mt19937_64& rng, std::size_t count, std::size_t objectives,
    double lo = 0.0, double hi = 1.0) {
  std::uniform_real_distribution<double> value(lo, hi);
  std::vector<emoa::ObjectiveVector> out(count);
  for (auto& f : out) {
    f.resize(objectives);
    for (double& v : f) v = value(rng);
  }
  return out;
}

// Mutually non-dominated 2-objective front with distinct coordinates:
// ascending f1 paired with descending f2.
inline std::vector<emoa::ObjectiveVector> random_front_2d(std::mt19937_64& rng,
                                                          std::size_t count) {
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::vector<double> f1(count);
  std::vector<double> f2(count);
  for (std::size_t i = 0; i < count; ++i) {
    f1[i] = value(rng);
    f2[i] = value(rng);
  }
  std::sort(f1.begin(), f1.end());
  std::sort(f2.begin(), f2.end(), std::greater<>());
  std::vector<emoa::ObjectiveVector> front(count);
  for (std::size_t i = 0; i < count; ++i) front[i] = {f1[i], f2[i]};
  return front;
}

// Small unconstrained problem over [0,1]^2 whose objectives are the genome
// itself; handy when a test needs full control of objective values.
inline emoa::Problem identity_problem() {
  emoa::Problem p;
  p.name = "identity";
  p.dimension = 2;
  p.bounds = {emoa::Interval{0.0, 1.0}, emoa::Interval{0.0, 1.0}};
  p.objectives = [](const emoa::Genome& g) {
    return emoa::ObjectiveVector{g[0], g[1]};
  };
  return p;
}

}  // namespace test_helpers
