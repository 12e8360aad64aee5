#include "cvrp/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "cvrp/tsplib.hpp"

namespace cvrp::bench {

double prd(Weight found, Weight optimum) {
  if (optimum <= 0) throw InputError("PRD needs a positive optimum, got " + std::to_string(optimum));
  return 100.0 * static_cast<double>(found - optimum) / static_cast<double>(optimum);
}

std::map<std::string, Weight> load_optima(std::istream& in) {
  std::map<std::string, Weight> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string name;
    if (!(ss >> name)) continue;
    Weight value = 0;
    if (!(ss >> value) || value <= 0)
      throw InputError("optima file line " + std::to_string(line_no) +
                       ": expected '<name> <positive optimum>'");
    out[name] = value;
  }
  return out;
}

std::map<std::string, Weight> load_optima_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open optima file " + path);
  return load_optima(in);
}

ExperimentRecord record_from_run(const std::string& command, const Instance& inst,
                                 const InstanceSource& source, const RunReport& report,
                                 std::optional<Weight> optimum) {
  ExperimentRecord rec;
  rec.command = command;
  rec.instance_name = inst.name();
  rec.source = source;
  rec.num_vertices = inst.size();
  rec.capacity = report.capacity;
  rec.solver = "memetic";
  rec.config = report.config;
  rec.result_weight = report.best_weight;
  rec.optimum = optimum;
  if (optimum) rec.prd = prd(report.best_weight, *optimum);
  rec.iterations_used = report.iterations_run;
  rec.stop_reason = report.stop_reason;
  rec.wall_time_seconds = report.wall_time_seconds;
  rec.hardware_threads = report.hardware_threads;
  rec.trips = blocks_of(report.best_genome.plan());
  return rec;
}

nlohmann::ordered_json to_json(const IslandConfig& cfg) {
  const auto& p = cfg.params;
  nlohmann::ordered_json j;
  j["islands"] = cfg.num_islands;
  j["population_size"] = p.population_size;
  j["pr_cross"] = p.effective_pr_cross();
  j["pr_cross_default_rule"] = p.pr_cross ? "explicit" : "2/population_size";
  j["pairing_rule"] = "every unordered pair of members, probability pr_cross";
  j["pr_mut"] = p.pr_mut;
  j["iterations"] = p.iterations;
  j["migration_freq"] = p.migration_freq;
  j["migration_count"] = p.migration_count;
  if (p.sa_initial_temp)
    j["sa_initial_temp"] = *p.sa_initial_temp;
  else
    j["sa_initial_temp"] = "mean_edge_weight";
  j["sa_cooling"] = p.sa_cooling;
  j["sa_steps"] = p.sa_steps;
  j["crossover"] = to_string(p.crossover_kind);
  j["seed"] = p.seed;
  j["stagnation_limit"] = p.stagnation_limit;
  j["time_budget_seconds"] =
      cfg.time_budget_seconds ? nlohmann::ordered_json(*cfg.time_budget_seconds) : nullptr;
  j["target_weight"] = cfg.target_weight ? nlohmann::ordered_json(*cfg.target_weight) : nullptr;
  return j;
}

nlohmann::ordered_json to_json(const ExperimentRecord& rec) {
  nlohmann::ordered_json j;
  j["command"] = rec.command;
  j["instance"] = rec.instance_name;
  nlohmann::ordered_json src;
  if (rec.source.path.empty()) {
    src["random_vertices"] = rec.source.random_vertices;
    src["random_seed"] = rec.source.random_seed;
    src["coord_bound"] = rec.source.coord_bound;
  } else {
    src["path"] = rec.source.path;
  }
  j["instance_source"] = src;
  j["num_vertices"] = rec.num_vertices;
  j["capacity"] = rec.capacity;
  j["solver"] = rec.solver;
  j["params"] = rec.config ? to_json(*rec.config) : nlohmann::ordered_json(nullptr);
  j["result_weight"] = rec.result_weight;
  j["optimum"] = rec.optimum ? nlohmann::ordered_json(*rec.optimum) : nullptr;
  j["prd"] = rec.prd ? nlohmann::ordered_json(*rec.prd) : nullptr;
  j["iterations_used"] = rec.iterations_used;
  j["stop_reason"] = rec.stop_reason;
  j["wall_time"] = rec.wall_time_seconds;
  j["hardware_threads"] = rec.hardware_threads;
  j["trips"] = rec.trips;
  return j;
}

void write_history_csv(std::ostream& out, const RunReport& report) {
  out << "island,iteration,best_weight\n";
  for (std::size_t k = 0; k < report.per_island_history.size(); ++k)
    for (std::size_t t = 0; t < report.per_island_history[k].size(); ++t)
      out << k << ',' << t + 1 << ',' << report.per_island_history[k][t] << '\n';
}

std::optional<double> censored_median(std::vector<std::optional<double>> values) {
  if (values.empty()) throw InputError("median of an empty set");
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
  });
  const std::size_t n = values.size();
  const auto& lo = values[(n - 1) / 2];
  const auto& hi = values[n / 2];
  if (!lo || !hi) return std::nullopt;
  return (*lo + *hi) / 2.0;
}

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return (values[(n - 1) / 2] + values[n / 2]) / 2.0;
}

namespace {

constexpr CrossoverKind kAllKinds[] = {CrossoverKind::kOx, CrossoverKind::kPmx,
                                       CrossoverKind::kCx};

RunReport single_island(const Instance& inst, std::size_t capacity, MemeticParams params) {
  IslandConfig cfg;
  cfg.num_islands = 1;
  cfg.worker_threads = 1;
  cfg.params = std::move(params);
  return run_island_model(inst, capacity, cfg);
}

}  // namespace

CrossoverBenchResult bench_crossover(const CrossoverBenchConfig& cfg) {
  if (cfg.sizes.empty()) throw InputError("bench-crossover needs at least one size");
  if (cfg.seeds < 1) throw InputError("bench-crossover needs at least one seed");
  if (cfg.reference_quality < 1.0) throw InputError("reference quality must be >= 1");
  CrossoverBenchResult result;
  result.config = cfg;
  for (std::size_t clients : cfg.sizes) {
    if (clients < 2) throw InputError("bench-crossover sizes must be >= 2 clients");
    CrossoverBenchRow row;
    row.clients = clients;
    std::map<CrossoverKind, std::vector<std::optional<double>>> per_kind;
    for (std::size_t s = 0; s < cfg.seeds; ++s) {
      const std::uint64_t seed = derive_seed(cfg.base_seed, {clients, s});
      const Instance inst = tsplib::generate_random_instance(clients + 1, seed, cfg.coord_bound);
      const std::size_t capacity = std::min(cfg.capacity, clients);
      std::vector<CrossoverCell> cells;
      std::vector<std::vector<Weight>> histories;
      for (CrossoverKind kind : kAllKinds) {
        MemeticParams params = cfg.params;
        params.crossover_kind = kind;
        params.iterations = cfg.iteration_budget;
        params.seed = seed;
        const RunReport rep = single_island(inst, capacity, params);
        cells.push_back({clients, seed, kind, rep.best_weight, 0, std::nullopt});
        histories.push_back(rep.per_island_history.front());
      }
      Weight best = std::numeric_limits<Weight>::max();
      for (const auto& c : cells) best = std::min(best, c.final_weight);
      const double reference = cfg.reference_quality * static_cast<double>(best);
      for (std::size_t k = 0; k < cells.size(); ++k) {
        cells[k].reference_weight = static_cast<Weight>(std::floor(reference));
        const auto& h = histories[k];
        for (std::size_t t = 0; t < h.size(); ++t)
          if (static_cast<double>(h[t]) <= reference) {
            cells[k].iterations_to_reference = t + 1;
            break;
          }
        per_kind[cells[k].kind].push_back(
            cells[k].iterations_to_reference
                ? std::optional<double>(static_cast<double>(*cells[k].iterations_to_reference))
                : std::nullopt);
        result.cells.push_back(cells[k]);
      }
    }
    for (auto& [kind, values] : per_kind) row.median_iterations[kind] = censored_median(values);
    result.rows.push_back(std::move(row));
  }
  return result;
}

void write_crossover_csv(std::ostream& out, const CrossoverBenchResult& result) {
  out << "n,OX,PMX,CX\n";
  for (const auto& row : result.rows) {
    out << row.clients;
    for (CrossoverKind kind : kAllKinds) {
      out << ',';
      const auto it = row.median_iterations.find(kind);
      if (it != row.median_iterations.end() && it->second)
        out << *it->second;
      else
        out << '>' << result.config.iteration_budget;
    }
    out << '\n';
  }
}

double MutationBenchResult::median_final(std::size_t value_index) const {
  std::vector<double> v(final_weights.at(value_index).begin(),
                        final_weights.at(value_index).end());
  return median(std::move(v));
}

MutationBenchResult bench_mutation(const MutationBenchConfig& cfg) {
  if (cfg.values.empty()) throw InputError("bench-mutation needs at least one pr_mut value");
  for (double v : cfg.values)
    if (v < 0.0 || v > 1.0) throw InputError("pr_mut values must lie in [0, 1]");
  if (cfg.seeds < 1) throw InputError("bench-mutation needs at least one seed");
  const Instance inst =
      tsplib::generate_random_instance(cfg.clients + 1, cfg.instance_seed, cfg.coord_bound);
  const std::size_t capacity = std::min(cfg.capacity, cfg.clients);
  MutationBenchResult result;
  result.config = cfg;
  for (double value : cfg.values) {
    std::vector<std::vector<Weight>> histories;
    std::vector<Weight> finals;
    for (std::size_t s = 0; s < cfg.seeds; ++s) {
      MemeticParams params = cfg.params;
      params.pr_mut = value;
      params.iterations = cfg.iterations;
      params.seed = derive_seed(cfg.base_seed, {s});
      const RunReport rep = single_island(inst, capacity, params);
      histories.push_back(rep.per_island_history.front());
      finals.push_back(rep.best_weight);
    }
    std::vector<double> med(cfg.iterations);
    for (std::size_t t = 0; t < cfg.iterations; ++t) {
      std::vector<double> at_t;
      for (const auto& h : histories) at_t.push_back(static_cast<double>(h[t]));
      med[t] = median(std::move(at_t));
    }
    result.median_history.push_back(std::move(med));
    result.final_weights.push_back(std::move(finals));
  }
  return result;
}

void write_mutation_csv(std::ostream& out, const MutationBenchResult& result) {
  out << "pr_mut,iteration,median_best_weight\n";
  for (std::size_t v = 0; v < result.config.values.size(); ++v)
    for (std::size_t t = 0; t < result.median_history[v].size(); ++t)
      out << result.config.values[v] << ',' << t + 1 << ',' << result.median_history[v][t]
          << '\n';
}

TspPrdRow tsp_prd_one(const Instance& inst, std::optional<Weight> optimum,
                      const TspPrdConfig& cfg) {
  IslandConfig island = cfg.island;
  island.time_budget_seconds = cfg.budget_seconds;
  if (cfg.stop_at_optimum && optimum) island.target_weight = *optimum;
  const RunReport rep = run_island_model(inst, inst.num_clients(), island);
  TspPrdRow row;
  row.instance = inst.name();
  row.num_vertices = inst.size();
  row.optimum = optimum;
  row.found = rep.best_weight;
  if (optimum) row.prd = prd(rep.best_weight, *optimum);
  row.wall_time_seconds = rep.wall_time_seconds;
  row.iterations = rep.iterations_run;
  row.stop_reason = rep.stop_reason;
  return row;
}

std::vector<TspPrdRow> tsp_prd(const std::string& dir,
                               const std::map<std::string, Weight>& optima,
                               const TspPrdConfig& cfg, std::ostream& warn) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".tsp")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<TspPrdRow> rows;
  for (const auto& file : files) {
    Instance inst = tsplib::load(file.string());
    std::string name = inst.name().empty() ? file.stem().string() : inst.name();
    std::optional<Weight> optimum;
    if (auto it = optima.find(name); it != optima.end())
      optimum = it->second;
    else
      warn << "warning: no known optimum for " << name << "; PRD omitted\n";
    rows.push_back(tsp_prd_one(inst, optimum, cfg));
    rows.back().instance = name;
  }
  return rows;
}

void write_tsp_prd_csv(std::ostream& out, const std::vector<TspPrdRow>& rows) {
  out << "instance,n,optimum,found,prd,iterations,stop_reason,wall_time\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.num_vertices << ',';
    if (r.optimum) out << *r.optimum;
    out << ',' << r.found << ',';
    if (r.prd) {
      std::ostringstream p;
      p.setf(std::ios::fixed);
      p.precision(2);
      p << *r.prd;
      out << p.str();
    }
    out << ',' << r.iterations << ',' << r.stop_reason << ',' << r.wall_time_seconds << '\n';
  }
}

SpeedupBenchResult bench_speedup(const Instance& inst, const SpeedupBenchConfig& cfg) {
  if (cfg.g_max < 1) throw InputError("speedup needs g_max >= 1");
  if (cfg.repeats < 1) throw InputError("speedup needs at least one repeat");
  const std::size_t capacity = cfg.capacity == 0 ? inst.num_clients() : cfg.capacity;
  SpeedupBenchResult result;
  result.hardware_threads = std::thread::hardware_concurrency();
  result.enough_parallelism = result.hardware_threads >= static_cast<std::size_t>(cfg.g_max);
  result.rows = cost::speedup_curve(cfg.g_max, cfg.migration_freq_model);

  auto timed = [&](std::size_t islands, std::size_t iterations, std::uint64_t seed) {
    IslandConfig ic;
    ic.num_islands = islands;
    ic.worker_threads = islands;
    ic.params = cfg.params;
    ic.params.iterations = iterations;
    ic.params.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    run_island_model(inst, capacity, ic);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  for (auto& row : result.rows) {
    const auto g = static_cast<std::size_t>(row.islands);
    std::vector<double> ratios;
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      const std::uint64_t seed = derive_seed(cfg.params.seed, {g, r});
      const double sequential = timed(1, cfg.iterations * g, seed);
      const double parallel = timed(g, cfg.iterations, seed);
      ratios.push_back(sequential / parallel);
    }
    row.measured = median(std::move(ratios));
  }
  return result;
}

}  // namespace cvrp::bench
