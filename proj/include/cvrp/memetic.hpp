#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cvrp/graph.hpp"
#include "cvrp/random.hpp"

namespace cvrp {

/// A route plan plus its cached weight (filled by evaluate()).
class Genome {
 public:
  explicit Genome(RoutePlan plan) : plan_(std::move(plan)) {}
  Genome(RoutePlan plan, Weight weight) : plan_(std::move(plan)), weight_(weight) {}

  static Genome evaluated(const Instance& inst, RoutePlan plan) {
    const Weight w = route_weight(inst, plan);
    return Genome(std::move(plan), w);
  }

  const RoutePlan& plan() const { return plan_; }
  std::span<const Vertex> perm() const { return plan_.perm(); }
  std::size_t capacity() const { return plan_.capacity(); }

  bool is_evaluated() const { return weight_.has_value(); }
  const std::optional<Weight>& cached_weight() const { return weight_; }
  /// Throws std::logic_error when not evaluated.
  Weight weight() const;
  void evaluate(const Instance& inst);

  bool operator==(const Genome&) const = default;

 private:
  RoutePlan plan_;
  std::optional<Weight> weight_;
};

enum class CrossoverKind { kCx, kOx, kPmx };

std::string to_string(CrossoverKind kind);
/// Accepts "cx", "ox", "pmx" in any case.
CrossoverKind parse_crossover(const std::string& name);

struct MemeticParams {
  std::size_t population_size = 64;
  /// Unset means 2 / population_size (about P-1 crossover attempts per step).
  std::optional<double> pr_cross;
  double pr_mut = 0.15;
  std::size_t iterations = 1000;
  std::size_t migration_freq = 50;
  std::size_t migration_count = 2;
  /// Unset means the instance's mean edge weight. Zero gives pure descent.
  std::optional<double> sa_initial_temp;
  double sa_cooling = 0.95;
  std::size_t sa_steps = 100;
  CrossoverKind crossover_kind = CrossoverKind::kCx;
  std::uint64_t seed = 1;
  /// Stop after this many iterations without improvement; 0 disables.
  std::size_t stagnation_limit = 0;

  double effective_pr_cross() const {
    return pr_cross.value_or(2.0 / static_cast<double>(population_size));
  }
  double effective_sa_temp(const Instance& inst) const {
    return sa_initial_temp.value_or(inst.mean_edge_weight());
  }
  /// Throws InputError on out-of-range values.
  void validate() const;
};

/// Members kept sorted by (weight, permutation).
class Population {
 public:
  Population() = default;
  /// Evaluates and sorts.
  Population(const Instance& inst, std::vector<Genome> members);

  const std::vector<Genome>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const Genome& best() const { return members_.front(); }
  Weight best_weight() const { return members_.front().weight(); }

  bool operator==(const Population&) const = default;

 private:
  friend Population select_truncate(Population pop, std::size_t target_size);
  friend Population select_truncate(std::vector<Genome> pool, std::size_t target_size);
  std::vector<Genome> members_;
};

/// Ordering used by every selection: weight, then permutation.
bool genome_less(const Genome& a, const Genome& b);

Population random_population(const Instance& inst, std::size_t capacity, std::size_t size,
                             Rng& rng);

// Permutation-level operators. Positions are 0-based; cut points inclusive.
std::pair<std::vector<Vertex>, std::vector<Vertex>> cycle_crossover(
    std::span<const Vertex> p1, std::span<const Vertex> p2);
std::vector<Vertex> order_crossover(std::span<const Vertex> p1, std::span<const Vertex> p2,
                                    std::size_t a, std::size_t b);
std::vector<Vertex> partially_mapped_crossover(std::span<const Vertex> p1,
                                               std::span<const Vertex> p2, std::size_t a,
                                               std::size_t b);

std::pair<Genome, Genome> crossover_cx(const Genome& p1, const Genome& p2);
Genome crossover_ox(const Genome& p1, const Genome& p2, Rng& rng);
Genome crossover_pmx(const Genome& p1, const Genome& p2, Rng& rng);
/// Applies the configured operator; CX yields two children, OX and PMX one.
std::vector<Genome> crossover(CrossoverKind kind, const Genome& p1, const Genome& p2, Rng& rng);

Genome mutate_swap(const Genome& g, double pr_mut, Rng& rng);

/// Simulated annealing over segment reversals and swaps. Returns the best
/// genome visited, evaluated. If `accepted` is given, the weight change of
/// every accepted move is appended to it.
Genome local_search_sa(const Genome& g, const Instance& inst, const MemeticParams& params,
                       Rng& rng, std::vector<Weight>* accepted = nullptr);

Population select_truncate(Population pop, std::size_t target_size);
/// Sorts and truncates an arbitrary pool of evaluated genomes.
Population select_truncate(std::vector<Genome> pool, std::size_t target_size);

/// Identifies the RNG streams used by one step of one island.
struct StepStreams {
  std::uint64_t seed = 0;
  std::uint64_t island = 0;
  std::uint64_t iteration = 0;

  Rng mutation(std::size_t member) const;
  Rng crossover() const;
  Rng local_search(std::size_t index) const;
};

/// One generation: evaluate, mutate (rank 0 exempt), cross every unordered
/// pair with probability pr_cross, anneal members and offspring, truncate.
Population step(const Population& pop, const Instance& inst, const MemeticParams& params,
                const StepStreams& streams);

}  // namespace cvrp
