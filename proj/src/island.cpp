#include "cvrp/island.hpp"

#include <algorithm>
#include <barrier>
#include <chrono>
#include <exception>
#include <limits>
#include <thread>

namespace cvrp {

bool RunReport::same_result(const RunReport& other) const {
  return best_genome == other.best_genome && best_weight == other.best_weight &&
         per_island_history == other.per_island_history &&
         iterations_run == other.iterations_run && stop_reason == other.stop_reason &&
         capacity == other.capacity;
}

std::vector<Genome> select_migration(const Population& pop, std::size_t e) {
  if (e > pop.size())
    throw InputError("cannot migrate " + std::to_string(e) + " genomes from a population of " +
                     std::to_string(pop.size()));
  return {pop.members().begin(), pop.members().begin() + static_cast<std::ptrdiff_t>(e)};
}

Population integrate_migrants(Population pop, const std::vector<Genome>& migrants,
                              std::size_t target_size) {
  std::vector<Genome> pool = pop.members();
  pool.insert(pool.end(), migrants.begin(), migrants.end());
  return select_truncate(std::move(pool), target_size);
}

namespace {

constexpr std::uint64_t kInitStream = std::numeric_limits<std::uint64_t>::max();

// Shared between workers; written only by the barrier completion step.
struct EpochState {
  std::size_t begin = 0;
  std::size_t end = 0;
  bool stop = false;
};

}  // namespace

RunReport run_island_model(const Instance& inst, std::size_t capacity, const IslandConfig& cfg) {
  if (inst.num_clients() < 2)
    throw InputError("island model needs at least 2 clients, got " +
                     std::to_string(inst.num_clients()));
  if (capacity < 1 || capacity > inst.num_clients())
    throw InputError("capacity must lie in [1, " + std::to_string(inst.num_clients()) + "]");
  if (cfg.num_islands < 1) throw InputError("num_islands must be at least 1");
  const MemeticParams& params = cfg.params;
  params.validate();

  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };

  const std::size_t g = cfg.num_islands;
  std::vector<Population> pops;
  pops.reserve(g);
  for (std::size_t k = 0; k < g; ++k) {
    Rng rng(derive_seed(params.seed, {k, kInitStream}));
    pops.push_back(random_population(inst, capacity, params.population_size, rng));
  }
  std::vector<std::vector<Weight>> history(g);

  RunReport report{pops.front().best(), 0, {}, 0, 0, {}, std::thread::hardware_concurrency(),
                   cfg, capacity};

  auto global_best = [&] {
    const Genome* best = &pops.front().best();
    for (const auto& p : pops)
      if (genome_less(p.best(), *best)) best = &p.best();
    return *best;
  };

  Weight best_so_far = global_best().weight();
  std::size_t last_improvement = 0;

  EpochState epoch;
  epoch.end = std::min(params.migration_freq, params.iterations);
  std::exception_ptr failure;
  const std::size_t workers =
      cfg.worker_threads == 0 ? g : std::min(cfg.worker_threads, g);
  std::vector<std::exception_ptr> worker_errors(workers);

  auto on_barrier = [&]() noexcept {
    try {
      if (std::any_of(worker_errors.begin(), worker_errors.end(),
                      [](const auto& e) { return e != nullptr; })) {
        epoch.stop = true;
        report.stop_reason = "error";
        return;
      }
      const std::size_t done = epoch.end;
      if (g > 1 && done % params.migration_freq == 0) {
        std::vector<MigrationMessage> outbox;
        outbox.reserve(g);
        for (std::size_t k = 0; k < g; ++k)
          outbox.push_back({k, done, select_migration(pops[k], params.migration_count)});
        for (std::size_t k = 0; k < g; ++k) {
          std::vector<Genome> inbox;
          for (const auto& msg : outbox)
            if (msg.source_island != k)
              inbox.insert(inbox.end(), msg.genomes.begin(), msg.genomes.end());
          pops[k] = integrate_migrants(std::move(pops[k]), inbox, params.population_size);
        }
      }

      for (std::size_t t = epoch.begin; t < done; ++t) {
        Weight at_t = std::numeric_limits<Weight>::max();
        for (const auto& h : history) at_t = std::min(at_t, h[t]);
        if (at_t < best_so_far) {
          best_so_far = at_t;
          last_improvement = t + 1;
        }
      }
      best_so_far = std::min(best_so_far, global_best().weight());

      if (done >= params.iterations) {
        report.stop_reason = "iterations";
      } else if (cfg.target_weight && best_so_far <= *cfg.target_weight) {
        report.stop_reason = "target";
      } else if (cfg.time_budget_seconds && elapsed() >= *cfg.time_budget_seconds) {
        report.stop_reason = "time_budget";
      } else if (params.stagnation_limit > 0 &&
                 done - last_improvement >= params.stagnation_limit) {
        report.stop_reason = "stagnation";
      }
      if (!report.stop_reason.empty()) {
        epoch.stop = true;
        return;
      }
      epoch.begin = done;
      epoch.end = std::min(done + params.migration_freq, params.iterations);
    } catch (...) {
      failure = std::current_exception();
      epoch.stop = true;
      report.stop_reason = "error";
    }
  };

  std::barrier sync(static_cast<std::ptrdiff_t>(workers), on_barrier);

  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        while (true) {
          try {
            for (std::size_t k = w; k < g; k += workers)
              for (std::size_t t = epoch.begin; t < epoch.end; ++t) {
                pops[k] = step(pops[k], inst, params, StepStreams{params.seed, k, t});
                history[k].push_back(pops[k].best_weight());
              }
          } catch (...) {
            worker_errors[w] = std::current_exception();
          }
          sync.arrive_and_wait();
          if (epoch.stop) return;
        }
      });
    }
  }
  for (auto& err : worker_errors)
    if (err) std::rethrow_exception(err);
  if (failure) std::rethrow_exception(failure);

  report.best_genome = global_best();
  report.best_weight = report.best_genome.weight();
  report.per_island_history = std::move(history);
  report.iterations_run = report.per_island_history.front().size();
  report.wall_time_seconds = elapsed();
  return report;
}

}  // namespace cvrp
