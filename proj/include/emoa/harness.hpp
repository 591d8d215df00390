#pragma once

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "emoa/metrics.hpp"
#include "emoa/nsga2.hpp"
#include "emoa/problems.hpp"

namespace emoa {

/// Multi-run experiment description. Run r of every strategy is seeded with
/// base_seed + r, so compared strategies start from identical initial
/// populations.
struct ExperimentSpec {
  std::string name;  // defaults to the problem name when empty
  Problem problem;
  std::vector<MatingStrategy> strategies;
  int runs = 31;
  std::uint64_t base_seed = 1;
  std::size_t population_size = 100;
  std::size_t tournament_size = 2;
  int generations = 150;
  VariationConfig variation;
  int snapshot_period = 10;
  bool dump_genomes = false;
  int parallel = 1;
  std::optional<std::array<double, 2>> hypervolume_reference;
  /// Resolution of the reference front used for generational distance.
  std::size_t reference_front_samples = 2001;

  [[nodiscard]] std::string effective_name() const {
    return name.empty() ? problem.name : name;
  }
  [[nodiscard]] std::vector<std::uint64_t> seeds() const {
    std::vector<std::uint64_t> out;
    for (int r = 0; r < runs; ++r) {
      out.push_back(base_seed + static_cast<std::uint64_t>(r));
    }
    return out;
  }
};

struct RunResult {
  RunRecord record;
  std::vector<double> hypervolume;            // one entry per generation row
  std::vector<double> generational_distance;  // NaN when no reference front
  int hypervolume_decreases = 0;
};

struct StrategyResult {
  MatingStrategy strategy;
  std::string name;
  std::vector<RunResult> runs;
  /// Non-dominated subset of the union of all runs' rank-1 fronts, one entry
  /// per snapshot generation.
  std::vector<std::pair<int, std::vector<ObjectiveVector>>> union_fronts;
};

struct SignTest {
  int wins = 0;
  int losses = 0;
  int ties = 0;
};

struct ExperimentResult {
  ExperimentSpec spec;
  std::array<double, 2> hv_reference{};
  std::vector<ObjectiveVector> reference_front;  // empty when unknown
  std::vector<StrategyResult> strategies;
};

inline double median(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("median of an empty sample");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// Hypervolume values of one strategy's runs at a given generation row.
inline std::vector<double> hypervolume_at(const StrategyResult& strategy,
                                          int generation) {
  std::vector<double> out;
  for (const RunResult& run : strategy.runs) {
    out.push_back(run.hypervolume.at(static_cast<std::size_t>(generation)));
  }
  return out;
}

/// Paired sign test across matched seeds: a win is a run where the
/// challenger's hypervolume exceeds the baseline's at `generation`.
inline SignTest sign_test(const StrategyResult& challenger,
                          const StrategyResult& baseline, int generation) {
  if (challenger.runs.size() != baseline.runs.size()) {
    throw std::logic_error("sign test requires matched run counts");
  }
  SignTest result;
  for (std::size_t r = 0; r < challenger.runs.size(); ++r) {
    const double a =
        challenger.runs[r].hypervolume.at(static_cast<std::size_t>(generation));
    const double b =
        baseline.runs[r].hypervolume.at(static_cast<std::size_t>(generation));
    if (a > b) {
      ++result.wins;
    } else if (a < b) {
      ++result.losses;
    } else {
      ++result.ties;
    }
  }
  return result;
}

namespace detail {

/// Thins an ordered front to at most `max_points`, keeping the endpoints.
inline std::vector<ObjectiveVector> thin_front(
    std::vector<ObjectiveVector> front, std::size_t max_points) {
  if (max_points < 2 || front.size() <= max_points) return front;
  std::vector<ObjectiveVector> out;
  out.reserve(max_points);
  const double step = static_cast<double>(front.size() - 1) /
                      static_cast<double>(max_points - 1);
  for (std::size_t k = 0; k < max_points; ++k) {
    out.push_back(front[static_cast<std::size_t>(
        std::llround(static_cast<double>(k) * step))]);
  }
  return out;
}

inline std::vector<ObjectiveVector> build_reference_front(
    const ExperimentSpec& spec) {
  if (!spec.problem.front_sampler) return {};
  // The disconnected ZDT3 front needs dense sampling before filtering.
  const std::size_t samples = spec.problem.name == "zdt3"
                                  ? std::size_t{100001}
                                  : spec.reference_front_samples;
  return thin_front(analytic_front(spec.problem, samples),
                    spec.reference_front_samples);
}

inline std::vector<ObjectiveVector> front_objectives(
    const Population& pop, const RankedPopulation& ranked) {
  std::vector<ObjectiveVector> out;
  out.reserve(ranked.fronts.front().size());
  for (std::size_t i : ranked.fronts.front()) {
    out.push_back(pop[i].objectives);
  }
  return out;
}

}  // namespace detail

/// Executes one run with per-generation hypervolume and generational-distance
/// tracking.
inline RunResult run_instrumented(
    const Problem& problem, const AlgorithmConfig& config, int snapshot_period,
    std::array<double, 2> hv_reference,
    const std::vector<ObjectiveVector>& reference_front) {
  RunResult result;
  const GenerationCallback observe = [&](int, const Population& pop,
                                         const RankedPopulation& ranked) {
    const std::vector<ObjectiveVector> front =
        detail::front_objectives(pop, ranked);
    result.hypervolume.push_back(
        problem.objective_count == 2 ? hypervolume_2d(front, hv_reference)
                                     : std::numeric_limits<double>::quiet_NaN());
    result.generational_distance.push_back(
        reference_front.empty()
            ? std::numeric_limits<double>::quiet_NaN()
            : generational_distance(front, reference_front));
  };
  result.record = run(problem, config, snapshot_period, observe);
  for (std::size_t g = 1; g < result.hypervolume.size(); ++g) {
    if (result.hypervolume[g] < result.hypervolume[g - 1]) {
      ++result.hypervolume_decreases;
    }
  }
  return result;
}

/// Runs every (strategy, seed) combination, collecting per-run records and
/// per-snapshot union fronts. Runs are independent and may execute on
/// `spec.parallel` threads; results are assembled in deterministic order.
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
  if (spec.runs < 1) {
    throw std::invalid_argument("experiment needs at least one run");
  }
  if (spec.strategies.empty()) {
    throw std::invalid_argument("experiment needs at least one strategy");
  }
  if (spec.snapshot_period < 0) {
    throw std::invalid_argument("snapshot period must be >= 0");
  }

  ExperimentResult result;
  result.spec = spec;
  result.hv_reference = spec.hypervolume_reference.value_or(
      spec.problem.hypervolume_reference);
  result.reference_front = detail::build_reference_front(spec);

  const std::vector<std::uint64_t> seeds = spec.seeds();
  for (const MatingStrategy& strategy : spec.strategies) {
    StrategyResult sr;
    sr.strategy = strategy;
    sr.name = to_string(strategy.kind);
    sr.runs.resize(seeds.size());

    std::vector<std::string> errors(seeds.size());
    const auto worker_body = [&](std::size_t r) {
      AlgorithmConfig config;
      config.population_size = spec.population_size;
      config.tournament_size = spec.tournament_size;
      config.generations = spec.generations;
      config.strategy = strategy;
      config.variation = spec.variation;
      config.seed = seeds[r];
      try {
        sr.runs[r] =
            run_instrumented(spec.problem, config, spec.snapshot_period,
                             result.hv_reference, result.reference_front);
      } catch (const std::exception& e) {
        errors[r] = e.what();
      }
    };

    const int workers = std::max(1, std::min<int>(spec.parallel,
                                                  static_cast<int>(seeds.size())));
    if (workers == 1) {
      for (std::size_t r = 0; r < seeds.size(); ++r) worker_body(r);
    } else {
      std::atomic<std::size_t> counter{0};
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (std::size_t r = counter.fetch_add(1); r < seeds.size();
               r = counter.fetch_add(1)) {
            worker_body(r);
          }
        });
      }
      for (std::thread& t : pool) t.join();
    }

    for (std::size_t r = 0; r < seeds.size(); ++r) {
      if (!errors[r].empty()) {
        throw std::runtime_error("experiment '" + spec.effective_name() +
                                 "': strategy " + sr.name + ", seed " +
                                 std::to_string(seeds[r]) +
                                 " failed: " + errors[r]);
      }
    }

    if (spec.snapshot_period > 0) {
      for (int g = spec.snapshot_period; g <= spec.generations;
           g += spec.snapshot_period) {
        std::vector<ObjectiveVector> pool;
        for (const RunResult& run : sr.runs) {
          for (const FrontSnapshot& snap : run.record.snapshots) {
            if (snap.generation == g) {
              pool.insert(pool.end(), snap.objectives.begin(),
                          snap.objectives.end());
            }
          }
        }
        sr.union_fronts.emplace_back(g, non_dominated_filter(std::move(pool)));
      }
    }
    result.strategies.push_back(std::move(sr));
  }
  return result;
}

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() +
                             "' for writing");
  }
  out << contents;
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

}  // namespace detail

/// Writes the experiment to disk:
///   <out>/<experiment>/<strategy>/run_<seed>.csv   per-generation series
///   <out>/<experiment>/<strategy>/genomes_<seed>.csv  (only with dump_genomes)
///   <out>/<experiment>/snapshots.csv               union fronts
///   <out>/<experiment>/summary                     key-value aggregates
/// Output is byte-identical for identical spec and seeds.
inline std::filesystem::path export_results(
    const ExperimentResult& result, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  const ExperimentSpec& spec = result.spec;
  const fs::path root = out_dir / spec.effective_name();
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" +
                             root.string() + "': " + ec.message());
  }

  const std::vector<std::uint64_t> seeds = spec.seeds();
  for (const StrategyResult& sr : result.strategies) {
    const fs::path dir = root / sr.name;
    fs::create_directories(dir, ec);
    if (ec) {
      throw std::runtime_error("cannot create output directory '" +
                               dir.string() + "': " + ec.message());
    }
    for (std::size_t r = 0; r < sr.runs.size(); ++r) {
      const RunResult& run = sr.runs[r];
      std::string csv =
          "generation,non_dominated_count,dbx_applications,feasible_count,"
          "hypervolume,generational_distance\n";
      for (std::size_t g = 0; g < run.record.generations.size(); ++g) {
        const GenerationStats& row = run.record.generations[g];
        csv += std::to_string(row.generation) + ',' +
               std::to_string(row.non_dominated_count) + ',' +
               std::to_string(row.dbx_applications) + ',' +
               std::to_string(row.feasible_count) + ',' +
               detail::format_double(run.hypervolume[g]) + ',' +
               detail::format_double(run.generational_distance[g]) + '\n';
      }
      detail::write_file(dir / ("run_" + std::to_string(seeds[r]) + ".csv"),
                         csv);

      if (spec.dump_genomes) {
        std::string gcsv = "generation";
        for (std::size_t i = 1; i <= spec.problem.dimension; ++i) {
          gcsv += ",x" + std::to_string(i);
        }
        gcsv += '\n';
        for (const FrontSnapshot& snap : run.record.snapshots) {
          for (const Genome& genome : snap.genomes) {
            gcsv += std::to_string(snap.generation);
            for (double v : genome) {
              gcsv += ',' + detail::format_double(v);
            }
            gcsv += '\n';
          }
        }
        detail::write_file(
            dir / ("genomes_" + std::to_string(seeds[r]) + ".csv"), gcsv);
      }
    }
  }

  std::string snapshots = "f1,f2,strategy,generation\n";
  for (const StrategyResult& sr : result.strategies) {
    for (const auto& [generation, front] : sr.union_fronts) {
      for (const ObjectiveVector& p : front) {
        snapshots += detail::format_double(p[0]) + ',' +
                     detail::format_double(p[1]) + ',' + sr.name + ',' +
                     std::to_string(generation) + '\n';
      }
    }
  }
  detail::write_file(root / "snapshots.csv", snapshots);

  std::ostringstream summary;
  summary << "experiment = " << spec.effective_name() << '\n'
          << "problem = " << spec.problem.name << '\n'
          << "dimension = " << spec.problem.dimension << '\n'
          << "constrained = " << (spec.problem.constrained() ? 1 : 0) << '\n'
          << "runs = " << spec.runs << '\n'
          << "base_seed = " << spec.base_seed << '\n'
          << "population_size = " << spec.population_size << '\n'
          << "tournament_size = " << spec.tournament_size << '\n'
          << "generations = " << spec.generations << '\n'
          << "crossover_rate = "
          << detail::format_double(spec.variation.crossover_rate) << '\n'
          << "mutation_rate = "
          << detail::format_double(spec.variation.mutation_rate) << '\n'
          << "snapshot_period = " << spec.snapshot_period << '\n'
          << "hv_reference = " << detail::format_double(result.hv_reference[0])
          << ',' << detail::format_double(result.hv_reference[1]) << '\n'
          << "reference_front_points = " << result.reference_front.size()
          << '\n';
  {
    std::string names;
    for (const StrategyResult& sr : result.strategies) {
      if (!names.empty()) names += ',';
      names += sr.name;
    }
    summary << "strategies = " << names << '\n';
  }
  for (const StrategyResult& sr : result.strategies) {
    summary << "alpha." << sr.name << " = "
            << detail::format_double(sr.strategy.alpha) << '\n';
    const int last = spec.generations;
    summary << "median_final_hypervolume." << sr.name << " = "
            << detail::format_double(median(hypervolume_at(sr, last))) << '\n';
    std::vector<double> final_gd;
    for (const RunResult& run : sr.runs) {
      final_gd.push_back(run.generational_distance.back());
    }
    summary << "median_final_gd." << sr.name << " = "
            << detail::format_double(median(std::move(final_gd))) << '\n';
    int decreases = 0;
    for (const RunResult& run : sr.runs) {
      decreases += run.hypervolume_decreases;
    }
    summary << "hypervolume_decreases." << sr.name << " = " << decreases
            << '\n';
  }
  for (const StrategyResult& sr : result.strategies) {
    for (const auto& [generation, front] : sr.union_fronts) {
      summary << "median_hypervolume." << sr.name << ".gen" << generation
              << " = "
              << detail::format_double(median(hypervolume_at(sr, generation)))
              << '\n';
      summary << "union_front_size." << sr.name << ".gen" << generation
              << " = " << front.size() << '\n';
    }
  }
  for (std::size_t a = 0; a < result.strategies.size(); ++a) {
    for (std::size_t b = a + 1; b < result.strategies.size(); ++b) {
      const StrategyResult& base = result.strategies[a];
      const StrategyResult& chall = result.strategies[b];
      for (const auto& [generation, front] : chall.union_fronts) {
        (void)front;
        const SignTest st = sign_test(chall, base, generation);
        const std::string key =
            "signtest." + chall.name + "_vs_" + base.name + ".gen" +
            std::to_string(generation);
        summary << key << ".wins = " << st.wins << '\n'
                << key << ".losses = " << st.losses << '\n'
                << key << ".ties = " << st.ties << '\n';
      }
    }
  }
  detail::write_file(root / "summary", summary.str());
  return root;
}

}  // namespace emoa
