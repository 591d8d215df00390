#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>

#include "emoa/individual.hpp"

namespace emoa {

/// True iff `a` is no worse than `b` in every objective and strictly better
/// in at least one (minimization).
inline bool dominates_objectives(const ObjectiveVector& a,
                                 const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw std::logic_error("dominance: objective dimension mismatch");
  }
  bool strictly_better = false;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] > b[m]) return false;
    if (a[m] < b[m]) strictly_better = true;
  }
  return strictly_better;
}

/// Pareto dominance between individuals. With `constrained` set, the
/// infeasibility value takes strict priority: whoever sits closer to the
/// feasible region wins outright, regardless of the other objectives; only
/// equally infeasible individuals fall through to the objective test.
inline bool dominates(const Individual& a, const Individual& b,
                      bool constrained = false) {
  if (constrained) {
    if (!a.infeasibility || !b.infeasibility) {
      throw std::logic_error(
          "dominance: constrained comparison requires infeasibility values");
    }
    if (*a.infeasibility < *b.infeasibility) return true;
    if (*a.infeasibility > *b.infeasibility) return false;
  }
  return dominates_objectives(a.objectives, b.objectives);
}

/// Population partitioned into non-dominated fronts. `fronts[k]` holds the
/// indices of rank k+1; `dominated[i]` the indices individual i dominates.
struct RankedPopulation {
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<int> rank;          // 1-based
  std::vector<double> crowding;
  std::vector<std::vector<std::size_t>> dominated;
};

namespace detail {

/// Crowding distances for `n` points whose objective vectors are provided by
/// `objs(i)`. Extremes of each objective ordering get infinite distance;
/// interior points accumulate the gap between their sorted neighbors.
template <typename GetObjectives>
std::vector<double> crowding_impl(std::size_t n, GetObjectives&& objs) {
  if (n == 0) {
    throw std::logic_error("crowding: empty front");
  }
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), infinite_crowding);
    return distance;
  }
  const std::size_t objective_count = objs(0).size();
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < objective_count; ++m) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Ties on one objective are refined lexicographically over the whole
    // vector so the result is invariant under permutation of the front.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) {
                       const ObjectiveVector& a = objs(i);
                       const ObjectiveVector& b = objs(j);
                       if (a[m] != b[m]) return a[m] < b[m];
                       return std::lexicographical_compare(
                           a.begin(), a.end(), b.begin(), b.end());
                     });
    distance[order.front()] = infinite_crowding;
    distance[order.back()] = infinite_crowding;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      distance[order[k]] += objs(order[k + 1])[m] - objs(order[k - 1])[m];
    }
  }
  return distance;
}

inline std::weak_ordering ranked_order(int rank_a, double crowding_a,
                                       int rank_b, double crowding_b) {
  if (rank_a != rank_b) {
    return rank_a < rank_b ? std::weak_ordering::less
                           : std::weak_ordering::greater;
  }
  if (crowding_a != crowding_b) {
    return crowding_a > crowding_b ? std::weak_ordering::less
                                   : std::weak_ordering::greater;
  }
  return std::weak_ordering::equivalent;
}

}  // namespace detail

/// Crowding distances for one front, raw (unnormalized) objective gaps summed
/// over objectives. Fronts of size 1 or 2 are all-extreme.
inline std::vector<double> crowding_distances(
    std::span<const Individual> front) {
  return detail::crowding_impl(front.size(),
                               [&](std::size_t i) -> const ObjectiveVector& {
                                 return front[i].objectives;
                               });
}

/// Partitions the population into ranked fronts, fills per-individual
/// dominated-lists and crowding distances, and annotates each individual's
/// `rank` and `crowding` fields.
inline RankedPopulation non_dominated_sort(Population& pop,
                                           bool constrained = false) {
  if (pop.empty()) {
    throw std::invalid_argument("cannot rank an empty population");
  }
  const std::size_t n = pop.size();
  RankedPopulation ranked;
  ranked.rank.assign(n, 0);
  ranked.crowding.assign(n, 0.0);
  ranked.dominated.assign(n, {});

  std::vector<std::size_t> dominator_count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(pop[i], pop[j], constrained)) {
        ranked.dominated[i].push_back(j);
        ++dominator_count[j];
      } else if (dominates(pop[j], pop[i], constrained)) {
        ranked.dominated[j].push_back(i);
        ++dominator_count[i];
      }
    }
  }

  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominator_count[i] == 0) current.push_back(i);
  }
  int level = 1;
  while (!current.empty()) {
    for (std::size_t i : current) ranked.rank[i] = level;
    std::vector<std::size_t> next;
    for (std::size_t i : current) {
      for (std::size_t j : ranked.dominated[i]) {
        if (--dominator_count[j] == 0) next.push_back(j);
      }
    }
    std::sort(next.begin(), next.end());
    ranked.fronts.push_back(std::move(current));
    current = std::move(next);
    ++level;
  }

  for (const std::vector<std::size_t>& front : ranked.fronts) {
    std::vector<double> d = detail::crowding_impl(
        front.size(), [&](std::size_t k) -> const ObjectiveVector& {
          return pop[front[k]].objectives;
        });
    for (std::size_t k = 0; k < front.size(); ++k) {
      ranked.crowding[front[k]] = d[k];
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    pop[i].rank = ranked.rank[i];
    pop[i].crowding = ranked.crowding[i];
  }
  return ranked;
}

/// Crowded comparison: lower rank first, then larger crowding distance.
/// `less` means `a` precedes (beats) `b`; `equivalent` is a tie the caller
/// breaks deterministically.
inline std::weak_ordering crowded_compare(const Individual& a,
                                          const Individual& b) {
  if (!a.rank || !a.crowding || !b.rank || !b.crowding) {
    throw std::logic_error(
        "crowded comparison requires ranked individuals (rank + crowding)");
  }
  return detail::ranked_order(*a.rank, *a.crowding, *b.rank, *b.crowding);
}

/// Draws `tournament_size` individuals uniformly with replacement and returns
/// the index of the best under crowded comparison; ties go to the earliest
/// drawn.
inline std::size_t tournament_select(const Population& pop,
                                     const RankedPopulation& ranked,
                                     std::size_t tournament_size, Rng& rng) {
  if (pop.empty() || ranked.rank.size() != pop.size()) {
    throw std::logic_error("tournament: population and ranking mismatch");
  }
  if (tournament_size < 1 || tournament_size > pop.size()) {
    throw std::invalid_argument("tournament size must be in [1, N]");
  }
  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  std::size_t best = pick(rng);
  for (std::size_t k = 1; k < tournament_size; ++k) {
    const std::size_t challenger = pick(rng);
    if (detail::ranked_order(ranked.rank[challenger],
                             ranked.crowding[challenger], ranked.rank[best],
                             ranked.crowding[best]) ==
        std::weak_ordering::less) {
      best = challenger;
    }
  }
  return best;
}

/// Keeps the mutually non-dominated subset of a point set. Two objectives use
/// an O(n log n) sweep; the general case falls back to pairwise scanning.
/// Exact duplicates survive together.
inline std::vector<ObjectiveVector> non_dominated_filter(
    std::vector<ObjectiveVector> points) {
  if (points.empty()) return points;
  const std::size_t m = points.front().size();
  for (const ObjectiveVector& p : points) {
    if (p.size() != m) {
      throw std::logic_error("non_dominated_filter: dimension mismatch");
    }
  }
  if (m == 2) {
    std::sort(points.begin(), points.end());
    std::vector<ObjectiveVector> kept;
    kept.reserve(points.size());
    double best_f2 = std::numeric_limits<double>::infinity();
    for (ObjectiveVector& p : points) {
      if (p[1] < best_f2) {
        best_f2 = p[1];
        kept.push_back(std::move(p));
      } else if (!kept.empty() && p == kept.back()) {
        kept.push_back(std::move(p));
      }
    }
    return kept;
  }
  std::vector<ObjectiveVector> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j != i && dominates_objectives(points[j], points[i])) {
        dominated = true;
      }
    }
    if (!dominated) kept.push_back(points[i]);
  }
  return kept;
}

}  // namespace emoa
