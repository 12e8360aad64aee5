#pragma once

#include <utility>
#include <vector>

#include "cvrp/graph.hpp"

namespace cvrp {

/// Complete graph on an even number of vertices 0..m-1.
class MatchingProblem {
 public:
  MatchingProblem(std::size_t m, std::vector<Weight> weights);

  std::size_t size() const { return m_; }
  Weight w(std::size_t a, std::size_t b) const { return weights_[a * m_ + b]; }

 private:
  std::size_t m_;
  std::vector<Weight> weights_;
};

/// Perfect matching; each pair is stored as (smaller, larger), pairs sorted.
struct Matching {
  std::vector<std::pair<Vertex, Vertex>> pairs;

  bool operator==(const Matching&) const = default;
};

Weight matching_weight(const MatchingProblem& prob, const Matching& matching);

/// Throws InputError unless every vertex appears in exactly one pair.
void validate(const MatchingProblem& prob, const Matching& matching);

/// w'(u,v) = 0 on base-incident edges, w(base,u)+w(u,v)+w(v,base) otherwise.
Instance reduce_to_zero_base(const Instance& inst);

/// Client-client submatrix, clients renumbered 0..n-2. Requires an even
/// number of clients.
MatchingProblem reduce_to_matching(const Instance& inst);

/// Largest problem handled by the subset dynamic program.
inline constexpr std::size_t kMaxSubsetDpVertices = 22;

/// Exact minimum-weight perfect matching. Uses the subset DP up to
/// kMaxSubsetDpVertices and a blossom-based solver beyond. Ties go to the
/// lexicographically smallest sorted pair list (guaranteed on the DP path).
Matching min_perfect_matching(const MatchingProblem& prob);

/// Subset DP only; throws InputError above kMaxSubsetDpVertices.
Matching min_perfect_matching_dp(const MatchingProblem& prob);

/// Blossom-based route; no tie-break guarantee.
Matching min_perfect_matching_blossom(const MatchingProblem& prob);

struct CapacityTwoSolution {
  BaseCycleCover cover;
  Weight weight = 0;
};

/// Optimal plan for capacity 2 with an even client count.
CapacityTwoSolution solve_capacity2(const Instance& inst);

}  // namespace cvrp
