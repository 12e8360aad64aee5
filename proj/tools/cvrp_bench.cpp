// Command-line front end: solvers, oracles, experiment drivers, generators.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cvrp/bench.hpp"
#include "cvrp/cost_model.hpp"
#include "cvrp/exact_c2.hpp"
#include "cvrp/island.hpp"
#include "cvrp/oracle.hpp"
#include "cvrp/tsplib.hpp"

namespace {

using namespace cvrp;

constexpr const char* kOutputDirEnv = "CVRP_OUTPUT_DIR";

// Resolves --out: explicit path, else $CVRP_OUTPUT_DIR/<default_name>, else stdout.
class Output {
 public:
  Output(const std::string& path, const std::string& default_name) {
    std::string target = path;
    if (target.empty()) {
      if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
        std::filesystem::create_directories(dir);
        target = (std::filesystem::path(dir) / default_name).string();
      }
    }
    if (!target.empty()) {
      file_ = std::make_unique<std::ofstream>(target);
      if (!*file_) throw InputError("cannot write " + target);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string command_echo(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

struct InstanceArgs {
  std::string path;
  std::size_t random_vertices = 0;
  std::optional<std::uint64_t> instance_seed;
  std::int64_t coord_bound = 1000;

  void add_to(CLI::App* app, bool positional = true) {
    if (positional)
      app->add_option("instance", path, "TSPLIB instance file");
    else
      app->add_option("--instance", path, "TSPLIB instance file");
    app->add_option("--random", random_vertices,
                    "Generate a random Euclidean instance with this many vertices "
                    "(base plus clients) instead of reading a file");
    app->add_option("--instance-seed", instance_seed,
                    "Seed for --random (default: the run seed)");
    app->add_option("--coord-bound", coord_bound, "Coordinate range [0, B] for --random")
        ->capture_default_str();
  }

  std::pair<Instance, bench::InstanceSource> load(std::uint64_t run_seed) const {
    bench::InstanceSource src;
    if (!path.empty() && random_vertices)
      throw InputError("give either an instance file or --random, not both");
    if (!path.empty()) {
      src.path = path;
      return {tsplib::load(path), src};
    }
    if (!random_vertices) throw InputError("an instance file or --random N is required");
    src.random_vertices = random_vertices;
    src.random_seed = instance_seed.value_or(run_seed);
    src.coord_bound = coord_bound;
    return {tsplib::generate_random_instance(random_vertices, src.random_seed, coord_bound), src};
  }
};

struct MemeticArgs {
  std::size_t islands = 4;
  std::size_t workers = 0;
  MemeticParams params;
  std::optional<double> pr_cross;
  std::optional<double> sa_temp;
  std::string crossover = "cx";
  std::optional<double> time_budget;

  void add_to(CLI::App* app) {
    app->add_option("--islands", islands, "Number of islands g")->capture_default_str();
    app->add_option("--workers", workers, "Worker threads (0 = one per island)")
        ->capture_default_str();
    app->add_option("--pop-size", params.population_size, "Population size per island")
        ->capture_default_str();
    app->add_option("--iterations", params.iterations, "Iteration budget per island")
        ->capture_default_str();
    app->add_option("--migration-freq", params.migration_freq,
                    "Iterations between migrations")
        ->capture_default_str();
    app->add_option("--migration-count", params.migration_count,
                    "Genomes each island broadcasts per migration")
        ->capture_default_str();
    app->add_option("--pr-cross", pr_cross,
                    "Crossover probability per unordered pair (default 2/pop-size)");
    app->add_option("--pr-mut", params.pr_mut,
                    "Per-member swap mutation probability")
        ->capture_default_str();
    app->add_option("--crossover", crossover,
                    "cx, ox or pmx")
        ->capture_default_str();
    app->add_option("--sa-steps", params.sa_steps, "Annealing proposals per local search")
        ->capture_default_str();
    app->add_option("--sa-temp", sa_temp, "Initial temperature (default: mean edge weight)");
    app->add_option("--sa-cooling", params.sa_cooling, "Geometric cooling factor")
        ->capture_default_str();
    app->add_option("--stagnation", params.stagnation_limit,
                    "Stop after this many iterations without improvement (0 = off)")
        ->capture_default_str();
    app->add_option("--seed", params.seed, "Run seed")->capture_default_str();
    app->add_option("--time-budget", time_budget, "Wall-clock limit in seconds");
  }

  IslandConfig config() const {
    IslandConfig cfg;
    cfg.num_islands = islands;
    cfg.worker_threads = workers;
    cfg.params = params;
    cfg.params.pr_cross = pr_cross;
    cfg.params.sa_initial_temp = sa_temp;
    cfg.params.crossover_kind = parse_crossover(crossover);
    cfg.time_budget_seconds = time_budget;
    return cfg;
  }
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvers and experiment drivers for the unit-demand single-vehicle VRP"};
  app.require_subcommand(1);
  const std::string echo = command_echo(argc, argv);

  // solve ------------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "Run the island-model memetic algorithm");
  InstanceArgs solve_inst;
  MemeticArgs solve_args;
  std::size_t solve_capacity = 0;
  std::optional<Weight> solve_optimum;
  std::string solve_optima_file, solve_out, solve_history;
  bool solve_exact = false;
  solve_inst.add_to(solve);
  solve_args.add_to(solve);
  solve->add_option("--capacity", solve_capacity, "Truck capacity (default: all clients, TSP)");
  solve->add_option("--optimum", solve_optimum, "Known optimum for PRD");
  solve->add_option("--optima-file", solve_optima_file, "File of '<name> <optimum>' lines");
  solve->add_flag("--exact", solve_exact,
                  "With --capacity 2 and an even client count, use the exact matching solver");
  solve->add_option("--out", solve_out, "JSON record path (default stdout)");
  solve->add_option("--history", solve_history, "Per-iteration CSV history path");

  // exact2 -----------------------------------------------------------------
  auto* exact2 = app.add_subcommand("exact2", "Exact capacity-2 solver via perfect matching");
  InstanceArgs exact_inst;
  std::uint64_t exact_seed = 1;
  std::string exact_out;
  exact_inst.add_to(exact2);
  exact2->add_option("--seed", exact_seed, "Seed for --random")->capture_default_str();
  exact2->add_option("--out", exact_out, "JSON record path (default stdout)");

  // oracle -----------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum for tiny instances");
  InstanceArgs oracle_inst;
  std::uint64_t oracle_seed = 1;
  std::size_t oracle_capacity = 0;
  std::size_t oracle_max = oracle::kDefaultMaxClients;
  std::string oracle_out;
  oracle_inst.add_to(oracle_cmd);
  oracle_cmd->add_option("--seed", oracle_seed, "Seed for --random")->capture_default_str();
  oracle_cmd->add_option("--capacity", oracle_capacity, "Capacity (default: all clients)");
  oracle_cmd->add_option("--max-clients", oracle_max, "Refuse larger instances")
      ->capture_default_str();
  oracle_cmd->add_option("--out", oracle_out, "JSON output path (default stdout)");

  // bench-crossover ----------------------------------------------------------
  auto* bcross = app.add_subcommand("bench-crossover",
                                    "Median iterations to a reference weight per operator");
  bench::CrossoverBenchConfig bc;
  std::string bc_sizes = "30,51,99", bc_out, bc_cells;
  bcross->add_option("--sizes", bc_sizes, "Comma-separated client counts")
      ->capture_default_str();
  bcross->add_option("--seeds", bc.seeds, "Seeds per size")->capture_default_str();
  bcross->add_option("--reference-quality", bc.reference_quality,
                     "Reference = q * best final weight over all operators")
      ->capture_default_str();
  bcross->add_option("--capacity", bc.capacity, "Truck capacity")->capture_default_str();
  bcross->add_option("--budget", bc.iteration_budget, "Iterations per run (censoring point)")
      ->capture_default_str();
  bcross->add_option("--pop-size", bc.params.population_size, "Population size")
      ->capture_default_str();
  bcross->add_option("--seed", bc.base_seed, "Base seed")->capture_default_str();
  bcross->add_option("--out", bc_out, "CSV path (default stdout)");
  bcross->add_option("--cells", bc_cells, "Optional per-run CSV path");

  // bench-mutation -----------------------------------------------------------
  auto* bmut = app.add_subcommand("bench-mutation", "Median convergence per mutation probability");
  bench::MutationBenchConfig bm;
  std::string bm_values = "0.15,0.9", bm_out;
  bmut->add_option("--values", bm_values, "Comma-separated pr_mut values")
      ->capture_default_str();
  bmut->add_option("--seeds", bm.seeds, "Seeds per value")->capture_default_str();
  bmut->add_option("--clients", bm.clients, "Clients in the random instance")
      ->capture_default_str();
  bmut->add_option("--capacity", bm.capacity, "Truck capacity")->capture_default_str();
  bmut->add_option("--iterations", bm.iterations, "Iterations per run")->capture_default_str();
  bmut->add_option("--pop-size", bm.params.population_size, "Population size")
      ->capture_default_str();
  bmut->add_option("--instance-seed", bm.instance_seed, "Seed of the random instance")
      ->capture_default_str();
  bmut->add_option("--seed", bm.base_seed, "Base run seed")->capture_default_str();
  bmut->add_option("--out", bm_out, "CSV path (default stdout)");

  // tsp-prd --------------------------------------------------------------------
  auto* tprd = app.add_subcommand("tsp-prd", "TSP-mode PRD against known optima");
  std::string tp_dir, tp_optima, tp_out;
  bench::TspPrdConfig tp;
  MemeticArgs tp_args;
  tp_args.params.iterations = 1'000'000'000;
  tprd->add_option("--instances", tp_dir, "Directory of .tsp files")->required();
  tprd->add_option("--optima", tp_optima, "File of '<name> <optimum>' lines")->required();
  tprd->add_option("--budget", tp.budget_seconds, "Seconds per instance")->capture_default_str();
  tp_args.add_to(tprd);
  tprd->add_option("--out", tp_out, "CSV path (default stdout)");

  // speedup ----------------------------------------------------------------------
  auto* spd = app.add_subcommand("speedup", "Measured vs modelled speedup");
  bench::SpeedupBenchConfig sc;
  InstanceArgs sp_inst;
  std::string sp_out;
  spd->add_option("--g-max", sc.g_max, "Largest island count")->capture_default_str();
  spd->add_option("--iterations", sc.iterations, "Iterations per island (parallel run)")
      ->capture_default_str();
  spd->add_option("--repeats", sc.repeats, "Repeats per island count")->capture_default_str();
  spd->add_option("--capacity", sc.capacity, "Capacity (0 = TSP mode)")->capture_default_str();
  spd->add_option("--pop-size", sc.params.population_size, "Population size")
      ->capture_default_str();
  spd->add_option("--seed", sc.params.seed, "Seed")->capture_default_str();
  sp_inst.add_to(spd, false);
  spd->add_option("--out", sp_out, "CSV path (default stdout)");

  // speedup-curve ------------------------------------------------------------------
  auto* scurve = app.add_subcommand("speedup-curve", "Modelled speedup for g = 1..g_max");
  int sc_gmax = 16;
  double sc_freq = cost::kDefaultMigrationFreq, sc_base = 2.0;
  std::string scurve_out;
  scurve->add_option("--g-max", sc_gmax, "Largest island count")->capture_default_str();
  scurve->add_option("--migration-freq", sc_freq, "Migration frequency f")->capture_default_str();
  scurve->add_option("--log-base", sc_base, "Logarithm base")->capture_default_str();
  scurve->add_option("--out", scurve_out, "CSV path (default stdout)");

  // gen ------------------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Write a random EUC_2D instance in TSPLIB format");
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 1;
  std::int64_t gen_bound = 1000;
  std::string gen_name, gen_out;
  gen->add_option("--vertices", gen_n, "Vertex count (base plus clients)")->required();
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("--coord-bound", gen_bound, "Coordinate range [0, B]")->capture_default_str();
  gen->add_option("--name", gen_name, "NAME field");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      const IslandConfig cfg = solve_args.config();
      auto [inst, src] = solve_inst.load(cfg.params.seed);
      const std::size_t capacity = solve_capacity ? solve_capacity : inst.num_clients();
      std::optional<Weight> optimum = solve_optimum;
      if (!optimum && !solve_optima_file.empty()) {
        const auto optima = bench::load_optima_file(solve_optima_file);
        if (auto it = optima.find(inst.name()); it != optima.end()) optimum = it->second;
      }
      Output out(solve_out, "solve.json");
      if (solve_exact) {
        if (capacity != 2) throw InputError("--exact requires --capacity 2");
        const auto sol = solve_capacity2(inst);
        bench::ExperimentRecord rec;
        rec.command = echo;
        rec.instance_name = inst.name();
        rec.source = src;
        rec.num_vertices = inst.size();
        rec.capacity = 2;
        rec.solver = "exact2";
        rec.result_weight = sol.weight;
        rec.optimum = optimum;
        if (optimum) rec.prd = bench::prd(sol.weight, *optimum);
        rec.stop_reason = "exact";
        rec.trips = sol.cover.cycles;
        out.stream() << bench::to_json(rec).dump(2) << '\n';
        return 0;
      }
      const RunReport rep = run_island_model(inst, capacity, cfg);
      const auto rec = bench::record_from_run(echo, inst, src, rep, optimum);
      out.stream() << bench::to_json(rec).dump(2) << '\n';
      if (!solve_history.empty()) {
        std::ofstream h(solve_history);
        if (!h) throw InputError("cannot write " + solve_history);
        bench::write_history_csv(h, rep);
      }
      std::cerr << inst.name() << ": weight " << rep.best_weight;
      if (rec.prd) {
        std::cerr << ", prd " << std::fixed << std::setprecision(2) << *rec.prd;
        if (*rec.prd < 0) std::cerr << " (below the given optimum; check the optima file)";
      }
      std::cerr << '\n';
    } else if (exact2->parsed()) {
      auto [inst, src] = exact_inst.load(exact_seed);
      const auto sol = solve_capacity2(inst);
      bench::ExperimentRecord rec;
      rec.command = echo;
      rec.instance_name = inst.name();
      rec.source = src;
      rec.num_vertices = inst.size();
      rec.capacity = 2;
      rec.solver = "exact2";
      rec.result_weight = sol.weight;
      rec.stop_reason = "exact";
      rec.trips = sol.cover.cycles;
      Output out(exact_out, "exact2.json");
      out.stream() << bench::to_json(rec).dump(2) << '\n';
    } else if (oracle_cmd->parsed()) {
      auto [inst, src] = oracle_inst.load(oracle_seed);
      const std::size_t capacity = oracle_capacity ? oracle_capacity : inst.num_clients();
      const auto best = oracle::brute_force_best_route(inst, capacity, oracle_max);
      nlohmann::ordered_json j;
      j["instance"] = inst.name();
      j["capacity"] = capacity;
      j["weight"] = best.weight;
      j["permutation"] = std::vector<Vertex>(best.plan.perm().begin(), best.plan.perm().end());
      j["trips"] = blocks_of(best.plan);
      Output out(oracle_out, "oracle.json");
      out.stream() << j.dump(2) << '\n';
    } else if (bcross->parsed()) {
      bc.sizes.clear();
      for (const auto& s : split_csv(bc_sizes)) bc.sizes.push_back(std::stoul(s));
      const auto result = bench::bench_crossover(bc);
      Output out(bc_out, "bench_crossover.csv");
      bench::write_crossover_csv(out.stream(), result);
      if (!bc_cells.empty()) {
        std::ofstream cells(bc_cells);
        if (!cells) throw InputError("cannot write " + bc_cells);
        cells << "n,seed,operator,final_weight,reference_weight,iterations_to_reference\n";
        for (const auto& c : result.cells) {
          cells << c.clients << ',' << c.seed << ',' << to_string(c.kind) << ','
                << c.final_weight << ',' << c.reference_weight << ',';
          if (c.iterations_to_reference)
            cells << *c.iterations_to_reference;
          else
            cells << '>' << bc.iteration_budget;
          cells << '\n';
        }
      }
    } else if (bmut->parsed()) {
      bm.values.clear();
      for (const auto& s : split_csv(bm_values)) bm.values.push_back(std::stod(s));
      const auto result = bench::bench_mutation(bm);
      Output out(bm_out, "bench_mutation.csv");
      bench::write_mutation_csv(out.stream(), result);
    } else if (tprd->parsed()) {
      tp.island = tp_args.config();
      const auto optima = bench::load_optima_file(tp_optima);
      const auto rows = bench::tsp_prd(tp_dir, optima, tp, std::cerr);
      Output out(tp_out, "tsp_prd.csv");
      bench::write_tsp_prd_csv(out.stream(), rows);
    } else if (spd->parsed()) {
      auto [inst, src] = sp_inst.load(sc.params.seed);
      const auto result = bench::bench_speedup(inst, sc);
      if (!result.enough_parallelism)
        std::cerr << "note: " << result.hardware_threads << " hardware threads for g_max "
                  << sc.g_max << "; measured speedup is bounded by the host\n";
      Output out(sp_out, "speedup.csv");
      out.stream() << "# hardware_threads=" << result.hardware_threads << '\n';
      cost::write_speedup_csv(out.stream(), result.rows);
    } else if (scurve->parsed()) {
      Output out(scurve_out, "speedup_curve.csv");
      cost::write_speedup_csv(out.stream(), cost::speedup_curve(sc_gmax, sc_freq, sc_base));
    } else if (gen->parsed()) {
      const auto pts = tsplib::random_points(gen_n, gen_seed, gen_bound);
      const std::string name =
          gen_name.empty() ? "rand" + std::to_string(gen_n) + "_s" + std::to_string(gen_seed)
                           : gen_name;
      Output out(gen_out, name + ".tsp");
      tsplib::write_euc2d(out.stream(), name, pts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
