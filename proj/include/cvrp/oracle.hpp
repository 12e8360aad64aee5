#pragma once

#include "cvrp/exact_c2.hpp"
#include "cvrp/graph.hpp"

// Exhaustive solvers. Only for test-sized inputs; they refuse anything larger.
namespace cvrp::oracle {

struct RouteOptimum {
  RoutePlan plan;
  Weight weight;
};

struct MatchingOptimum {
  Matching matching;
  Weight weight;
};

inline constexpr std::size_t kDefaultMaxClients = 10;
inline constexpr std::size_t kMaxMatchingVertices = 12;

/// Minimum over all client orders. Ties go to the lexicographically smallest
/// permutation. Orders whose full blocks run backwards (first > last) are
/// skipped; their mirror image has the same weight and sorts earlier.
RouteOptimum brute_force_best_route(const Instance& inst, std::size_t capacity,
                                    std::size_t max_clients = kDefaultMaxClients);

/// Same result without the mirror-image pruning. Reference for the pruned one.
RouteOptimum brute_force_best_route_exhaustive(const Instance& inst, std::size_t capacity,
                                               std::size_t max_clients = kDefaultMaxClients);

/// Minimum over all (m-1)!! perfect matchings, lexicographic tie-break.
MatchingOptimum brute_force_matching(const MatchingProblem& prob);

}  // namespace cvrp::oracle
