#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "emoa/dominance.hpp"
#include "emoa/individual.hpp"

namespace emoa {

enum class MatingKind { standard_blx, symmetric_dbx, biased_dbx };

inline const char* to_string(MatingKind kind) {
  switch (kind) {
    case MatingKind::standard_blx: return "blx";
    case MatingKind::symmetric_dbx: return "symmetric-dbx";
    case MatingKind::biased_dbx: return "biased-dbx";
  }
  return "unknown";
}

inline std::optional<MatingKind> parse_mating_kind(std::string_view name) {
  if (name == "blx") return MatingKind::standard_blx;
  if (name == "symmetric-dbx") return MatingKind::symmetric_dbx;
  if (name == "biased-dbx") return MatingKind::biased_dbx;
  return std::nullopt;
}

/// Mating strategy: which mate-selection rule to apply and the BLX spread.
struct MatingStrategy {
  MatingKind kind = MatingKind::standard_blx;
  double alpha = 0.5;  // blend spread, must lie in (0, 1)

  bool operator==(const MatingStrategy&) const = default;
};

struct VariationConfig {
  double crossover_rate = 0.9;  // probability of recombining per offspring
  double mutation_rate = 0.05;  // per-gene resampling probability

  void validate() const {
    if (crossover_rate < 0.0 || crossover_rate > 1.0) {
      throw std::invalid_argument("crossover rate outside [0, 1]");
    }
    if (mutation_rate < 0.0 || mutation_rate > 1.0) {
      throw std::invalid_argument("mutation rate outside [0, 1]");
    }
  }
};

struct PhiRange {
  double lo;
  double hi;
};

/// Blend-factor range for one offspring-production event. The standard and
/// symmetric strategies sample [-alpha, 1+alpha]; the biased strategy shifts
/// to [alpha, 1+alpha] when the dominance-restricted mate was used, so the
/// child lands nearer the dominant first parent.
inline PhiRange phi_range(const MatingStrategy& strategy, bool dbx_applied) {
  if (strategy.alpha <= 0.0 || strategy.alpha >= 1.0) {
    throw std::invalid_argument("BLX alpha must lie in (0, 1)");
  }
  if (strategy.kind == MatingKind::biased_dbx && dbx_applied) {
    return {strategy.alpha, 1.0 + strategy.alpha};
  }
  return {-strategy.alpha, 1.0 + strategy.alpha};
}

/// Per-coordinate blend child_i = phi_i * x_i + (1 - phi_i) * y_i with phi_i
/// drawn uniformly from [phi_lo, phi_hi], clipped to bounds. Identical parent
/// coordinates pass through exactly.
inline Genome blx_offspring(const Genome& x, const Genome& y, double phi_lo,
                            double phi_hi, const Bounds& bounds, Rng& rng) {
  if (x.size() != y.size() || x.size() != bounds.size()) {
    throw std::logic_error("blx: genome/bounds dimension mismatch");
  }
  if (phi_lo > phi_hi) {
    throw std::logic_error("blx: phi_lo must not exceed phi_hi");
  }
  std::uniform_real_distribution<double> draw_phi(phi_lo, phi_hi);
  Genome child(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double phi = (phi_lo == phi_hi) ? phi_lo : draw_phi(rng);
    const double blended =
        (x[i] == y[i]) ? x[i] : phi * x[i] + (1.0 - phi) * y[i];
    child[i] = bounds[i].clip(blended);
  }
  return child;
}

struct MateChoice {
  std::size_t mate;
  bool dbx_applied;
};

/// Mate selection. Under a DBX strategy, a non-dominated first parent that
/// dominates somebody mates with a uniform pick from its dominated-list;
/// every other case (including StandardBLX) falls back to tournament
/// selection over the whole population.
inline MateChoice choose_mate(std::size_t first, const Population& pop,
                              const RankedPopulation& ranked,
                              const MatingStrategy& strategy,
                              std::size_t tournament_size, Rng& rng) {
  if (first >= pop.size() || ranked.rank.size() != pop.size()) {
    throw std::logic_error("choose_mate: population and ranking mismatch");
  }
  if (strategy.kind != MatingKind::standard_blx && ranked.rank[first] == 1 &&
      !ranked.dominated[first].empty()) {
    const std::vector<std::size_t>& candidates = ranked.dominated[first];
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return {candidates[pick(rng)], true};
  }
  return {tournament_select(pop, ranked, tournament_size, rng), false};
}

/// Produces one child genome from the chosen parents. `first` is the x parent
/// of the blend, which matters for Biased DBX where the phi range is shifted
/// toward it.
inline Genome recombine(const Individual& first, const Individual& mate,
                        const MatingStrategy& strategy, bool dbx_applied,
                        const Bounds& bounds, Rng& rng) {
  const PhiRange range = phi_range(strategy, dbx_applied);
  return blx_offspring(first.genome, mate.genome, range.lo, range.hi, bounds,
                       rng);
}

/// Uniform mutation: each coordinate is independently resampled within its
/// bounds with probability `rate`.
inline Genome uniform_mutate(Genome g, double rate, const Bounds& bounds,
                             Rng& rng) {
  if (rate < 0.0 || rate > 1.0) {
    throw std::invalid_argument("mutation rate outside [0, 1]");
  }
  if (g.size() != bounds.size()) {
    throw std::logic_error("mutation: genome/bounds dimension mismatch");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (unit(rng) < rate) {
      std::uniform_real_distribution<double> coord(bounds[i].lo, bounds[i].hi);
      g[i] = coord(rng);
    }
  }
  return g;
}

}  // namespace emoa
