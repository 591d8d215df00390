#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emoa/harness.hpp"

namespace emoa {

/// Thrown on bad flags, unknown names, or invalid numerics; maps to exit 2.
struct CliUsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when --help is requested; carries the help text, maps to exit 0.
struct CliHelp {
  std::string text;
};

struct CliConfig {
  enum class Command { run, experiment, list_problems };
  Command command = Command::run;

  std::string problem = "zdt1";
  std::vector<std::string> strategies;  // one for run, one or more otherwise
  std::size_t population_size = 100;
  std::size_t tournament_size = 2;
  std::optional<int> generations;  // default depends on the problem
  double alpha = 0.5;
  double crossover_rate = 0.9;
  double mutation_rate = 0.05;
  int runs = 31;
  std::uint64_t seed = 1;
  int snapshot_period = 10;
  std::string out;
  std::string experiment_name;
  int parallel = 1;
  bool dump_genomes = false;
  std::size_t dimension = 30;
  std::vector<double> constraint_scales = {1.0, 1.0};
  std::optional<std::array<double, 2>> hv_reference;
};

namespace detail {

inline std::vector<double> parse_double_list(const std::string& text,
                                             const std::string& flag) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CliUsageError("invalid number '" + item + "' in " + flag);
    }
  }
  return values;
}

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

/// Reads a `key = value` file into `--key=value` tokens. Keys mirror the long
/// flag names; values from the file act as defaults that explicit flags
/// override.
inline std::vector<std::string> config_file_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw CliUsageError("cannot read config file '" + path + "'");
  }
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CliUsageError("config file line is not 'key = value': " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw CliUsageError("config file line is not 'key = value': " + line);
    }
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

}  // namespace detail

/// Parses and fully validates command-line arguments (program name excluded).
/// Throws CliUsageError on any problem and CliHelp when help is requested.
inline CliConfig parse_and_validate(std::vector<std::string> args) {
  static const std::vector<std::string> subcommands = {"run", "experiment",
                                                       "list-problems"};

  // Apply --config before parsing: the file's tokens are inserted right after
  // the subcommand so explicit flags (parsed later) take precedence.
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (!config_path.empty()) {
    const std::vector<std::string> tokens =
        detail::config_file_tokens(config_path);
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (std::find(subcommands.begin(), subcommands.end(), args[i]) !=
          subcommands.end()) {
        args.insert(args.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                    tokens.begin(), tokens.end());
        break;
      }
    }
  }

  CliConfig cfg;
  std::string strategy = "blx";
  std::string strategies = "blx,symmetric-dbx,biased-dbx";
  std::string hv_ref_text;
  std::string scales_text;
  long long generations = -1;

  CLI::App app{"NSGA-II with dominance-based mating restriction"};
  app.name("emoa");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  const auto add_shared = [&](CLI::App* cmd) {
    cmd->option_defaults()->multi_option_policy(
        CLI::MultiOptionPolicy::TakeLast);
    cmd->add_option("--problem", cfg.problem,
                    "benchmark problem (see list-problems)");
    cmd->add_option("--pop-size", cfg.population_size,
                    "population size N (even, >= 2)");
    cmd->add_option("--tournament", cfg.tournament_size,
                    "tournament size T (>= 2)");
    cmd->add_option("--generations", generations,
                    "generation budget (default 150, 250 when constrained)");
    cmd->add_option("--alpha", cfg.alpha, "BLX spread in (0, 1)");
    cmd->add_option("--crossover-rate", cfg.crossover_rate,
                    "per-offspring crossover probability");
    cmd->add_option("--mutation-rate", cfg.mutation_rate,
                    "per-gene mutation probability");
    cmd->add_option("--seed", cfg.seed, "base random seed");
    cmd->add_option("--snapshot-period", cfg.snapshot_period,
                    "record rank-1 fronts every k generations (0 = off)");
    cmd->add_option("--out", cfg.out,
                    "output directory (default $EMOA_OUT or ./results)");
    cmd->add_option("--name", cfg.experiment_name,
                    "experiment name (default: problem name)");
    cmd->add_option("--dimension", cfg.dimension,
                    "decision-space dimension for the ZDT family");
    cmd->add_option("--constraint-scales", scales_text,
                    "comma-separated positive scale per constraint");
    cmd->add_option("--hv-ref", hv_ref_text,
                    "hypervolume reference point, e.g. 1.1,11.0");
    cmd->add_flag("--dump-genomes", cfg.dump_genomes,
                  "also write rank-1 genomes at snapshot generations");
    cmd->add_option("--config", config_path,
                    "key = value file; explicit flags win");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "execute a single run");
  add_shared(run_cmd);
  run_cmd->add_option("--strategy", strategy,
                      "mating strategy: blx | symmetric-dbx | biased-dbx");

  CLI::App* exp_cmd =
      app.add_subcommand("experiment", "matched-seed multi-run comparison");
  add_shared(exp_cmd);
  exp_cmd->add_option("--strategies", strategies,
                      "comma-separated strategies to compare");
  exp_cmd->add_option("--runs", cfg.runs, "independent runs per strategy");
  exp_cmd->add_option("--parallel", cfg.parallel,
                      "max concurrent runs (default 1)");

  CLI::App* list_cmd =
      app.add_subcommand("list-problems", "show available problems");

  std::vector<const char*> argv;
  argv.push_back("emoa");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw CliHelp{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw CliHelp{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw CliUsageError(e.what());
  }

  if (run_cmd->parsed()) {
    cfg.command = CliConfig::Command::run;
    cfg.strategies = {strategy};
    cfg.runs = 1;
  } else if (exp_cmd->parsed()) {
    cfg.command = CliConfig::Command::experiment;
    cfg.strategies = detail::split_csv(strategies);
  } else if (list_cmd->parsed()) {
    cfg.command = CliConfig::Command::list_problems;
    return cfg;
  }

  if (generations >= 0) cfg.generations = static_cast<int>(generations);
  if (!hv_ref_text.empty()) {
    const std::vector<double> ref =
        detail::parse_double_list(hv_ref_text, "--hv-ref");
    if (ref.size() != 2) {
      throw CliUsageError("--hv-ref expects exactly two numbers");
    }
    cfg.hv_reference = {ref[0], ref[1]};
  }
  if (!scales_text.empty()) {
    cfg.constraint_scales =
        detail::parse_double_list(scales_text, "--constraint-scales");
  }
  if (cfg.out.empty()) {
    const char* env = std::getenv("EMOA_OUT");
    cfg.out = env != nullptr && *env != '\0' ? env : "results";
  }

  const std::vector<std::string> known = problem_names();
  if (std::find(known.begin(), known.end(), cfg.problem) == known.end()) {
    throw CliUsageError("unknown problem '" + cfg.problem + "'");
  }
  if (cfg.strategies.empty()) {
    throw CliUsageError("at least one strategy is required");
  }
  for (const std::string& name : cfg.strategies) {
    if (!parse_mating_kind(name)) {
      throw CliUsageError("unknown strategy '" + name + "'");
    }
  }
  if (cfg.population_size < 2 || cfg.population_size % 2 != 0) {
    throw CliUsageError("--pop-size must be even and >= 2");
  }
  if (cfg.tournament_size < 2 || cfg.tournament_size > cfg.population_size) {
    throw CliUsageError("--tournament must be in [2, N]");
  }
  if (cfg.generations && *cfg.generations < 1) {
    throw CliUsageError("--generations must be >= 1");
  }
  if (cfg.alpha <= 0.0 || cfg.alpha >= 1.0) {
    throw CliUsageError("--alpha must lie in (0, 1)");
  }
  if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0) {
    throw CliUsageError("--crossover-rate must lie in [0, 1]");
  }
  if (cfg.mutation_rate < 0.0 || cfg.mutation_rate > 1.0) {
    throw CliUsageError("--mutation-rate must lie in [0, 1]");
  }
  if (cfg.runs < 1) {
    throw CliUsageError("--runs must be >= 1");
  }
  if (cfg.snapshot_period < 0) {
    throw CliUsageError("--snapshot-period must be >= 0");
  }
  if (cfg.parallel < 1) {
    throw CliUsageError("--parallel must be >= 1");
  }
  if (cfg.dimension < 2) {
    throw CliUsageError("--dimension must be >= 2");
  }
  for (double s : cfg.constraint_scales) {
    if (s <= 0.0) {
      throw CliUsageError("--constraint-scales must be positive");
    }
  }
  return cfg;
}

/// Builds the experiment described by a validated CLI config.
inline ExperimentSpec make_experiment_spec(const CliConfig& cfg) {
  ExperimentSpec spec;
  spec.problem =
      problem_by_name(cfg.problem, cfg.dimension, cfg.constraint_scales);
  spec.name = cfg.experiment_name;
  for (const std::string& name : cfg.strategies) {
    spec.strategies.push_back(MatingStrategy{*parse_mating_kind(name),
                                             cfg.alpha});
  }
  spec.runs = cfg.runs;
  spec.base_seed = cfg.seed;
  spec.population_size = cfg.population_size;
  spec.tournament_size = cfg.tournament_size;
  spec.generations =
      cfg.generations.value_or(spec.problem.default_generations);
  spec.variation.crossover_rate = cfg.crossover_rate;
  spec.variation.mutation_rate = cfg.mutation_rate;
  spec.snapshot_period = cfg.snapshot_period;
  spec.dump_genomes = cfg.dump_genomes;
  spec.parallel = cfg.parallel;
  spec.hypervolume_reference = cfg.hv_reference;
  return spec;
}

/// Executes a validated CLI config. Returns 0 on success; failures surface as
/// exceptions handled by cli_main.
inline int run_cli(const CliConfig& cfg, std::ostream& out = std::cout) {
  if (cfg.command == CliConfig::Command::list_problems) {
    for (const std::string& name : problem_names()) {
      const Problem p = problem_by_name(name);
      out << name << "  dimension=" << p.dimension
          << " objectives=" << p.objective_count
          << " constrained=" << (p.constrained() ? "yes" : "no")
          << " default-generations=" << p.default_generations << '\n';
    }
    return 0;
  }

  const ExperimentSpec spec = make_experiment_spec(cfg);
  const ExperimentResult result = run_experiment(spec);
  const std::filesystem::path root = export_results(result, cfg.out);

  const std::vector<std::uint64_t> seeds = spec.seeds();
  for (const StrategyResult& sr : result.strategies) {
    for (std::size_t r = 0; r < sr.runs.size(); ++r) {
      const RunResult& run = sr.runs[r];
      out << "strategy=" << sr.name << " seed=" << seeds[r]
          << " generations=" << spec.generations << " final_hypervolume="
          << detail::format_double(run.hypervolume.back())
          << " final_gd="
          << detail::format_double(run.generational_distance.back()) << '\n';
    }
  }
  out << "results written to " << root.string() << '\n';
  return 0;
}

/// Full command-line entry point. Exit codes: 0 success, 1 run/experiment
/// failure, 2 usage error.
inline int cli_main(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  CliConfig cfg;
  try {
    cfg = parse_and_validate(std::move(args));
  } catch (const CliHelp& help) {
    std::cout << help.text;
    return 0;
  } catch (const CliUsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  try {
    return run_cli(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace emoa
