#include "cvrp/exact_c2.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/maximum_weighted_matching.hpp>

namespace cvrp {

MatchingProblem::MatchingProblem(std::size_t m, std::vector<Weight> weights)
    : m_(m), weights_(std::move(weights)) {
  if (m_ < 2 || m_ % 2 != 0)
    throw InputError("no perfect matching possible on " + std::to_string(m_) + " vertices");
  if (weights_.size() != m_ * m_) throw InputError("matching weight matrix has wrong size");
  for (std::size_t a = 0; a < m_; ++a) {
    if (weights_[a * m_ + a] != 0) throw InputError("nonzero diagonal in matching problem");
    for (std::size_t b = a + 1; b < m_; ++b) {
      if (weights_[a * m_ + b] != weights_[b * m_ + a])
        throw InputError("asymmetric matching problem");
      if (weights_[a * m_ + b] < 0) throw InputError("negative weight in matching problem");
    }
  }
}

void validate(const MatchingProblem& prob, const Matching& matching) {
  std::vector<bool> seen(prob.size(), false);
  for (auto [a, b] : matching.pairs) {
    for (Vertex v : {a, b}) {
      if (v < 0 || static_cast<std::size_t>(v) >= prob.size())
        throw InputError("matching references invalid vertex");
      if (seen[v]) throw InputError("vertex matched twice");
      seen[v] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw InputError("matching is not perfect");
}

Weight matching_weight(const MatchingProblem& prob, const Matching& matching) {
  Weight total = 0;
  for (auto [a, b] : matching.pairs) total += prob.w(a, b);
  return total;
}

Instance reduce_to_zero_base(const Instance& inst) {
  const std::size_t n = inst.size();
  std::vector<Weight> m(n * n, 0);
  for (std::size_t u = 1; u < n; ++u)
    for (std::size_t v = 1; v < n; ++v)
      if (u != v) {
        const auto a = static_cast<Vertex>(u), b = static_cast<Vertex>(v);
        m[u * n + v] = inst.w(0, a) + inst.w(a, b) + inst.w(b, 0);
      }
  return Instance(inst.name(), n, std::move(m));
}

MatchingProblem reduce_to_matching(const Instance& inst) {
  const std::size_t clients = inst.num_clients();
  if (clients % 2 != 0)
    throw InputError("no perfect matching possible: " + std::to_string(clients) +
                     " clients is odd");
  for (std::size_t u = 1; u < inst.size(); ++u)
    if (inst.w(0, static_cast<Vertex>(u)) != 0)
      throw InputError("reduce_to_matching expects zero weights on base edges");
  std::vector<Weight> m(clients * clients);
  for (std::size_t a = 0; a < clients; ++a)
    for (std::size_t b = 0; b < clients; ++b)
      m[a * clients + b] = inst.w(static_cast<Vertex>(a + 1), static_cast<Vertex>(b + 1));
  return MatchingProblem(clients, std::move(m));
}

Matching min_perfect_matching_dp(const MatchingProblem& prob) {
  const std::size_t m = prob.size();
  if (m > kMaxSubsetDpVertices)
    throw InputError("subset DP limited to " + std::to_string(kMaxSubsetDpVertices) +
                     " vertices");
  // best[mask]: cheapest completion once the vertices in `mask` are matched.
  // The lowest unmatched vertex is always paired next, so each matching has
  // exactly one path through the table.
  const std::uint32_t full = (1u << m) - 1;
  constexpr Weight kUnset = std::numeric_limits<Weight>::max();
  std::vector<Weight> best(std::size_t{full} + 1, kUnset);
  best[full] = 0;
  for (std::uint32_t mask = full; mask-- > 0;) {
    if (std::popcount(mask) % 2 != 0) continue;
    const auto i = static_cast<std::size_t>(std::countr_one(mask));
    Weight cost = kUnset;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (mask & (1u << j)) continue;
      const Weight rest = best[mask | (1u << i) | (1u << j)];
      if (rest != kUnset) cost = std::min(cost, prob.w(i, j) + rest);
    }
    best[mask] = cost;
  }

  Matching out;
  std::uint32_t mask = 0;
  while (mask != full) {
    const auto i = static_cast<std::size_t>(std::countr_one(mask));
    for (std::size_t j = i + 1; j < m; ++j) {
      if (mask & (1u << j)) continue;
      const std::uint32_t next = mask | (1u << i) | (1u << j);
      if (best[next] != kUnset && prob.w(i, j) + best[next] == best[mask]) {
        out.pairs.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
        mask = next;
        break;
      }
    }
  }
  return out;
}

Matching min_perfect_matching_blossom(const MatchingProblem& prob) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                      boost::no_property,
                                      boost::property<boost::edge_weight_t, Weight>>;
  const std::size_t m = prob.size();
  Weight max_w = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) max_w = std::max(max_w, prob.w(a, b));
  // With every edge worth offset - w and offset > (m/2) * max_w, any perfect
  // matching outweighs any non-perfect one, so a maximum-weight matching is
  // a minimum-weight perfect matching.
  const Weight offset = static_cast<Weight>(m / 2) * max_w + 1;
  Graph g(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) boost::add_edge(a, b, offset - prob.w(a, b), g);
  std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(m);
  boost::maximum_weighted_matching(g, &mate[0]);

  Matching out;
  for (std::size_t a = 0; a < m; ++a) {
    if (mate[a] == boost::graph_traits<Graph>::null_vertex())
      throw std::logic_error("blossom matching left a vertex unmatched");
    if (a < mate[a])
      out.pairs.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(mate[a]));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

Matching min_perfect_matching(const MatchingProblem& prob) {
  if (prob.size() <= kMaxSubsetDpVertices) return min_perfect_matching_dp(prob);
  return min_perfect_matching_blossom(prob);
}

CapacityTwoSolution solve_capacity2(const Instance& inst) {
  if (inst.num_clients() % 2 != 0)
    throw InputError("capacity-2 exact solver needs an even client count, got " +
                     std::to_string(inst.num_clients()));
  const Instance zero_base = reduce_to_zero_base(inst);
  const MatchingProblem prob = reduce_to_matching(zero_base);
  const Matching matching = min_perfect_matching(prob);

  CapacityTwoSolution sol;
  for (auto [a, b] : matching.pairs) sol.cover.cycles.push_back({a + 1, b + 1});
  sol.weight = cover_weight(inst, sol.cover);
  if (sol.weight != matching_weight(prob, matching))
    throw std::logic_error("capacity-2 reduction lost weight");
  return sol;
}

}  // namespace cvrp
