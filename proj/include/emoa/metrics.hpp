#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "emoa/individual.hpp"

namespace emoa {

/// Exact area dominated by a 2-objective front and bounded by `reference`,
/// computed with a sorted sweep. Points that do not (weakly) dominate the
/// reference are discarded; an empty effective front has volume 0.
inline double hypervolume_2d(std::vector<ObjectiveVector> front,
                             std::array<double, 2> reference) {
  std::erase_if(front, [&](const ObjectiveVector& p) {
    if (p.size() != 2) {
      throw std::logic_error("hypervolume_2d: points must be 2-dimensional");
    }
    return p[0] > reference[0] || p[1] > reference[1];
  });
  if (front.empty()) return 0.0;
  std::sort(front.begin(), front.end());
  double volume = 0.0;
  double best_f2 = reference[1];
  for (const ObjectiveVector& p : front) {
    if (p[1] < best_f2) {
      volume += (reference[0] - p[0]) * (best_f2 - p[1]);
      best_f2 = p[1];
    }
  }
  return volume;
}

/// Mean Euclidean distance from each front point to its nearest reference
/// point.
inline double generational_distance(
    const std::vector<ObjectiveVector>& front,
    const std::vector<ObjectiveVector>& reference_front) {
  if (front.empty()) {
    throw std::invalid_argument("generational distance: empty front");
  }
  if (reference_front.empty()) {
    throw std::invalid_argument(
        "generational distance: empty reference front");
  }
  double total = 0.0;
  for (const ObjectiveVector& p : front) {
    double best = std::numeric_limits<double>::infinity();
    for (const ObjectiveVector& r : reference_front) {
      if (p.size() != r.size()) {
        throw std::logic_error("generational distance: dimension mismatch");
      }
      double sq = 0.0;
      for (std::size_t m = 0; m < p.size(); ++m) {
        const double d = p[m] - r[m];
        sq += d * d;
      }
      best = std::min(best, sq);
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(front.size());
}

}  // namespace emoa
