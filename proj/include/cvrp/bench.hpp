#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvrp/cost_model.hpp"
#include "cvrp/island.hpp"

// Experiment drivers shared by the CLI and the acceptance suite.
namespace cvrp::bench {

/// Percentage relative deviation 100 * (found - optimum) / optimum.
/// Throws InputError when optimum <= 0. Negative values are allowed.
double prd(Weight found, Weight optimum);

/// Reads "name optimum" lines; '#' starts a comment.
std::map<std::string, Weight> load_optima(std::istream& in);
std::map<std::string, Weight> load_optima_file(const std::string& path);

/// Where an instance came from, enough to rebuild it.
struct InstanceSource {
  std::string path;  // empty for generated instances
  std::size_t random_vertices = 0;
  std::uint64_t random_seed = 0;
  std::int64_t coord_bound = 0;
};

struct ExperimentRecord {
  std::string command;
  std::string instance_name;
  InstanceSource source;
  std::size_t num_vertices = 0;
  std::size_t capacity = 0;
  std::string solver;  // "memetic" or "exact2"
  std::optional<IslandConfig> config;
  Weight result_weight = 0;
  std::optional<Weight> optimum;
  std::optional<double> prd;
  std::size_t iterations_used = 0;
  std::string stop_reason;
  double wall_time_seconds = 0;
  std::size_t hardware_threads = 0;
  std::vector<ClientSequence> trips;
};

ExperimentRecord record_from_run(const std::string& command, const Instance& inst,
                                 const InstanceSource& source, const RunReport& report,
                                 std::optional<Weight> optimum);

nlohmann::ordered_json to_json(const ExperimentRecord& rec);
nlohmann::ordered_json to_json(const IslandConfig& cfg);

/// CSV "island,iteration,best_weight" of a run's history.
void write_history_csv(std::ostream& out, const RunReport& report);

/// Median of the values; censored entries (nullopt) sort above everything.
/// Returns nullopt when the median itself is censored.
std::optional<double> censored_median(std::vector<std::optional<double>> values);
double median(std::vector<double> values);

// ---------------------------------------------------------------------------
// Crossover comparison: iterations needed to reach a reference weight.

struct CrossoverBenchConfig {
  std::vector<std::size_t> sizes{30, 51, 99};  // client counts
  std::size_t seeds = 20;
  std::uint64_t base_seed = 1;
  /// Reference weight = quality * best final weight among all operators.
  double reference_quality = 1.05;
  std::size_t capacity = 5;
  std::size_t iteration_budget = 200;
  std::int64_t coord_bound = 1000;
  MemeticParams params;  // crossover_kind, iterations, seed are overridden
};

struct CrossoverCell {
  std::size_t clients = 0;
  std::uint64_t seed = 0;
  CrossoverKind kind = CrossoverKind::kCx;
  Weight final_weight = 0;
  Weight reference_weight = 0;
  /// First iteration (1-based) whose best weight is <= reference; nullopt if never.
  std::optional<std::size_t> iterations_to_reference;
};

struct CrossoverBenchRow {
  std::size_t clients = 0;
  std::map<CrossoverKind, std::optional<double>> median_iterations;
};

struct CrossoverBenchResult {
  CrossoverBenchConfig config;
  std::vector<CrossoverCell> cells;
  std::vector<CrossoverBenchRow> rows;
};

CrossoverBenchResult bench_crossover(const CrossoverBenchConfig& cfg);
/// "n,OX,PMX,CX"; censored medians print as ">budget".
void write_crossover_csv(std::ostream& out, const CrossoverBenchResult& result);

// ---------------------------------------------------------------------------
// Mutation-probability sweep.

struct MutationBenchConfig {
  std::vector<double> values{0.15, 0.9};
  std::size_t seeds = 20;
  std::uint64_t base_seed = 1;
  std::size_t clients = 100;
  std::size_t capacity = 5;
  std::size_t iterations = 200;
  std::int64_t coord_bound = 1000;
  /// Seed of the single random instance shared by every run.
  std::uint64_t instance_seed = 1;
  MemeticParams params;  // pr_mut, iterations, seed are overridden
};

struct MutationBenchResult {
  MutationBenchConfig config;
  /// median_history[v][t]: median over seeds of the best weight after t+1 iterations.
  std::vector<std::vector<double>> median_history;
  std::vector<std::vector<Weight>> final_weights;  // [value][seed]

  double median_final(std::size_t value_index) const;
};

MutationBenchResult bench_mutation(const MutationBenchConfig& cfg);
/// "pr_mut,iteration,median_best_weight", one row per (value, iteration).
void write_mutation_csv(std::ostream& out, const MutationBenchResult& result);

// ---------------------------------------------------------------------------
// TSP-mode quality against known optima.

struct TspPrdConfig {
  IslandConfig island;  // time budget and target are set per instance
  double budget_seconds = 60;
  bool stop_at_optimum = true;
};

struct TspPrdRow {
  std::string instance;
  std::size_t num_vertices = 0;
  std::optional<Weight> optimum;
  Weight found = 0;
  std::optional<double> prd;
  double wall_time_seconds = 0;
  std::size_t iterations = 0;
  std::string stop_reason;
};

TspPrdRow tsp_prd_one(const Instance& inst, std::optional<Weight> optimum,
                      const TspPrdConfig& cfg);
/// Runs every *.tsp file in `dir` (sorted by name). Missing optima produce a
/// row without PRD and a warning on `warn`.
std::vector<TspPrdRow> tsp_prd(const std::string& dir,
                               const std::map<std::string, Weight>& optima,
                               const TspPrdConfig& cfg, std::ostream& warn);
void write_tsp_prd_csv(std::ostream& out, const std::vector<TspPrdRow>& rows);

// ---------------------------------------------------------------------------
// Measured speedup under the equal-total-work protocol.

struct SpeedupBenchConfig {
  int g_max = 4;
  std::size_t iterations = 100;  // per island in the parallel run
  std::size_t repeats = 3;
  std::size_t capacity = 0;      // 0 means TSP mode
  double migration_freq_model = cost::kDefaultMigrationFreq;
  MemeticParams params;
};

struct SpeedupBenchResult {
  std::vector<cost::SpeedupRow> rows;
  std::size_t hardware_threads = 0;
  bool enough_parallelism = false;  // hardware_threads >= g_max
};

SpeedupBenchResult bench_speedup(const Instance& inst, const SpeedupBenchConfig& cfg);

}  // namespace cvrp::bench
