#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvrp/memetic.hpp"

namespace cvrp {

struct IslandConfig {
  std::size_t num_islands = 4;
  MemeticParams params;
  /// OS threads that execute islands; 0 means one per island. Results do not
  /// depend on this value.
  std::size_t worker_threads = 0;
  /// Wall-clock limit, checked at migration barriers.
  std::optional<double> time_budget_seconds;
  /// Stop at the first barrier where the global best reaches this weight.
  std::optional<Weight> target_weight;
};

struct MigrationMessage {
  std::size_t source_island = 0;
  std::size_t iteration = 0;
  std::vector<Genome> genomes;
};

struct RunReport {
  Genome best_genome;
  Weight best_weight = 0;
  /// Best weight of each island after every completed iteration.
  std::vector<std::vector<Weight>> per_island_history;
  std::size_t iterations_run = 0;
  double wall_time_seconds = 0;
  /// Why the run ended: "iterations", "time_budget", "target", "stagnation".
  std::string stop_reason;
  std::size_t hardware_threads = 0;
  IslandConfig config;
  std::size_t capacity = 0;

  /// Equality ignoring wall time and hardware description.
  bool same_result(const RunReport& other) const;
};

/// Copies of the e best genomes. Throws InputError when e > |pop|.
std::vector<Genome> select_migration(const Population& pop, std::size_t e);

/// Appends migrants and truncates back to target_size.
Population integrate_migrants(Population pop, const std::vector<Genome>& migrants,
                              std::size_t target_size);

/// Runs g islands with barrier-synchronized all-to-all migration every
/// migration_freq iterations.
RunReport run_island_model(const Instance& inst, std::size_t capacity, const IslandConfig& cfg);

}  // namespace cvrp
