#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

namespace cvrp::cost {

/// Inputs of the hierarchical PRAM time model. `cores` is both the number of
/// cores per device and the population size per island.
struct CostModelInput {
  double islands = 1;         // g
  double cores = 448;         // c
  double problem_size = 448;  // n
  double iterations = 1000;   // i
  double migration_freq = 50; // f
  double migrants = 2;        // e
  double pr_cross = 0.0;
  double pr_mut = 0.15;
  double cross_coeff = 1.0;
  double mut_coeff = 1.0;
  double eval_coeff = 1.0;
  double log_base = 2.0;

  /// Throws cvrp::InputError on invalid values.
  void validate() const;
};

/// Per-phase terms of the time formula.
struct TimeBreakdown {
  double init = 0;
  double cross = 0;
  double mut = 0;
  double eval = 0;
  double inner_selection = 0;
  double outer_selection = 0;
  double total = 0;
};

TimeBreakdown time_breakdown(const CostModelInput& in);
double time_estimate(const CostModelInput& in);
/// islands * cores * time_estimate.
double cost_estimate(const CostModelInput& in);

/// Asymptotic form with small e and pr_mut treated as constants:
/// i*n + (i/f) * n * log(c + g).
double time_estimate_simplified(const CostModelInput& in);

inline constexpr double kDeviceCores = 448;
inline constexpr double kDefaultMigrationFreq = 50;

/// Equal-total-work speedup with c = n: g / (1 + log(g) / f).
double speedup(double islands, double migration_freq = kDefaultMigrationFreq,
               double log_base = 2.0);

struct SpeedupRow {
  int islands = 0;
  double theoretical = 0;
  std::optional<double> measured;
};

std::vector<SpeedupRow> speedup_curve(int max_islands,
                                      double migration_freq = kDefaultMigrationFreq,
                                      double log_base = 2.0);

/// CSV with header "g,S_theoretical,S_measured"; missing measurements are blank.
void write_speedup_csv(std::ostream& out, const std::vector<SpeedupRow>& rows);

}  // namespace cvrp::cost
