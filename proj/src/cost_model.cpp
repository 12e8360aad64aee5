#include "cvrp/cost_model.hpp"

#include <cmath>
#include <ostream>

#include "cvrp/graph.hpp"

namespace cvrp::cost {
namespace {

double log_in_base(double x, double base) { return std::log(x) / std::log(base); }

double pairs(double c) { return c * (c - 1) / 2; }

}  // namespace

void CostModelInput::validate() const {
  auto prob_ok = [](double p) { return p >= 0 && p <= 1; };
  if (islands < 1) throw InputError("cost model: islands must be >= 1");
  if (cores < 1) throw InputError("cost model: cores must be >= 1");
  if (problem_size < 1) throw InputError("cost model: problem size must be >= 1");
  if (iterations < 0) throw InputError("cost model: iterations must be >= 0");
  if (migration_freq < 1) throw InputError("cost model: migration frequency must be >= 1");
  if (migrants < 0) throw InputError("cost model: migrants must be >= 0");
  if (!prob_ok(pr_cross) || !prob_ok(pr_mut))
    throw InputError("cost model: probabilities must lie in [0, 1]");
  if (cross_coeff < 0 || mut_coeff < 0 || eval_coeff < 0)
    throw InputError("cost model: coefficients must be >= 0");
  if (!(log_base > 1)) throw InputError("cost model: log base must exceed 1");
}

TimeBreakdown time_breakdown(const CostModelInput& in) {
  in.validate();
  const double c = in.cores, n = in.problem_size;
  TimeBreakdown t;
  // Work on c members is spread over c cores, hence the division by c.
  t.init = c * n / c;
  t.cross = in.pr_cross * in.cross_coeff * n * pairs(c) / c;
  t.mut = in.pr_mut * in.mut_coeff * n * c / c;
  t.eval = in.eval_coeff * n * c / c;
  t.inner_selection = log_in_base(c + pairs(c) * in.pr_cross, in.log_base);
  t.outer_selection = log_in_base(c + in.migrants * (in.islands - 1), in.log_base);
  t.total = t.init + in.iterations * (t.cross + t.mut + t.eval + t.inner_selection) +
            in.iterations / in.migration_freq * t.outer_selection;
  return t;
}

double time_estimate(const CostModelInput& in) { return time_breakdown(in).total; }

double cost_estimate(const CostModelInput& in) {
  return in.islands * in.cores * time_estimate(in);
}

double time_estimate_simplified(const CostModelInput& in) {
  in.validate();
  const double n = in.problem_size;
  return in.iterations * n +
         in.iterations / in.migration_freq * n * log_in_base(in.cores + in.islands, in.log_base);
}

double speedup(double islands, double migration_freq, double log_base) {
  if (islands < 1) throw InputError("speedup: number of islands must be >= 1");
  if (migration_freq <= 0) throw InputError("speedup: migration frequency must be positive");
  if (!(log_base > 1)) throw InputError("speedup: log base must exceed 1");
  const double n = kDeviceCores;
  return n * islands / (n + (1.0 / migration_freq) * (n * log_in_base(islands, log_base)));
}

std::vector<SpeedupRow> speedup_curve(int max_islands, double migration_freq, double log_base) {
  if (max_islands < 1) throw InputError("speedup curve: g_max must be >= 1");
  std::vector<SpeedupRow> rows;
  for (int g = 1; g <= max_islands; ++g)
    rows.push_back({g, speedup(g, migration_freq, log_base), std::nullopt});
  return rows;
}

void write_speedup_csv(std::ostream& out, const std::vector<SpeedupRow>& rows) {
  const auto old_precision = out.precision(10);
  out << "g,S_theoretical,S_measured\n";
  for (const auto& r : rows) {
    out << r.islands << ',' << r.theoretical << ',';
    if (r.measured) out << *r.measured;
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace cvrp::cost
