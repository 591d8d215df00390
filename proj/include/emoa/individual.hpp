#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace emoa {

/// Random engine used throughout the library. One sequential stream per run;
/// callers own the stream and pass it explicitly.
using Rng = std::mt19937_64;

/// Decision vector. All shipped problems use box-bounded real coordinates.
using Genome = std::vector<double>;

/// Objective vector, minimization convention for every entry.
using ObjectiveVector = std::vector<double>;

/// Closed interval for one decision variable.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  [[nodiscard]] bool valid() const { return lo < hi; }
  [[nodiscard]] bool contains(double v) const { return v >= lo && v <= hi; }
  [[nodiscard]] double clip(double v) const {
    return v < lo ? lo : (v > hi ? hi : v);
  }

  bool operator==(const Interval&) const = default;
};

/// Per-coordinate box bounds, one interval per decision variable.
using Bounds = std::vector<Interval>;

/// Crowding distance assigned to the extremes of every front.
inline constexpr double infinite_crowding =
    std::numeric_limits<double>::infinity();

/// One candidate solution. `rank` and `crowding` are set by non-dominated
/// sorting and absent otherwise; `infeasibility` is present exactly when the
/// problem is constrained (0 means feasible).
struct Individual {
  Genome genome;
  ObjectiveVector objectives;
  std::optional<double> infeasibility;
  std::optional<int> rank;       // 1-based front index
  std::optional<double> crowding;

  [[nodiscard]] bool feasible() const {
    return !infeasibility.has_value() || *infeasibility == 0.0;
  }

  bool operator==(const Individual&) const = default;
};

/// Ordered collection of individuals. Size is exactly N at generation
/// boundaries and up to 2N while parents and offspring are merged.
using Population = std::vector<Individual>;

}  // namespace emoa
