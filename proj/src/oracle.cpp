#include "cvrp/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace cvrp::oracle {
namespace {

void check_size(const Instance& inst, std::size_t capacity, std::size_t max_clients) {
  if (inst.num_clients() > max_clients)
    throw InputError("brute force refuses " + std::to_string(inst.num_clients()) +
                     " clients (limit " + std::to_string(max_clients) + ")");
  if (capacity < 1 || capacity > inst.num_clients())
    throw InputError("capacity out of range for brute force");
}

RouteOptimum enumerate_all(const Instance& inst, std::size_t capacity) {
  std::vector<Vertex> perm(inst.num_clients());
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<Vertex> best_perm = perm;
  Weight best = std::numeric_limits<Weight>::max();
  do {
    const Weight w = route_weight_unchecked(inst, perm, capacity);
    if (w < best) {
      best = w;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {RoutePlan(std::move(best_perm), capacity), best};
}

// Depth-first over permutations in lexicographic order. A block whose first
// client exceeds its last is the reversal of one already visited, so its
// subtree is skipped; the first strict minimum is the lexicographic one.
class PrunedSearch {
 public:
  PrunedSearch(const Instance& inst, std::size_t capacity)
      : inst_(inst), cap_(capacity), k_(inst.num_clients()), used_(k_ + 1, false) {
    perm_.reserve(k_);
  }

  RouteOptimum run() {
    extend(0);
    return {RoutePlan(std::move(best_perm_), cap_), best_};
  }

 private:
  void extend(Weight so_far) {
    const std::size_t pos = perm_.size();
    if (pos == k_) {
      const Weight total = so_far + inst_.w(perm_.back(), 0);
      if (total < best_) {
        best_ = total;
        best_perm_ = perm_;
      }
      return;
    }
    const bool opens = pos % cap_ == 0;
    const bool closes = pos % cap_ == cap_ - 1 || pos + 1 == k_;
    const Vertex prev = opens ? 0 : perm_.back();
    const Weight reopen = opens && pos > 0 ? inst_.w(perm_.back(), 0) : 0;
    for (Vertex v = 1; v <= static_cast<Vertex>(k_); ++v) {
      if (used_[v]) continue;
      if (closes && !opens && perm_[pos - pos % cap_] > v) continue;
      used_[v] = true;
      perm_.push_back(v);
      extend(so_far + reopen + inst_.w(prev, v));
      perm_.pop_back();
      used_[v] = false;
    }
  }

  const Instance& inst_;
  std::size_t cap_;
  std::size_t k_;
  std::vector<bool> used_;
  std::vector<Vertex> perm_;
  std::vector<Vertex> best_perm_;
  Weight best_ = std::numeric_limits<Weight>::max();
};

void match_rest(const MatchingProblem& prob, std::vector<bool>& used,
                std::vector<std::pair<Vertex, Vertex>>& current, Weight so_far,
                MatchingOptimum& best) {
  const auto first = std::find(used.begin(), used.end(), false);
  if (first == used.end()) {
    if (so_far < best.weight) {
      best.weight = so_far;
      best.matching.pairs = current;
    }
    return;
  }
  const auto i = static_cast<std::size_t>(first - used.begin());
  used[i] = true;
  for (std::size_t j = i + 1; j < prob.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    current.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
    match_rest(prob, used, current, so_far + prob.w(i, j), best);
    current.pop_back();
    used[j] = false;
  }
  used[i] = false;
}

}  // namespace

RouteOptimum brute_force_best_route(const Instance& inst, std::size_t capacity,
                                    std::size_t max_clients) {
  check_size(inst, capacity, max_clients);
  return PrunedSearch(inst, capacity).run();
}

RouteOptimum brute_force_best_route_exhaustive(const Instance& inst, std::size_t capacity,
                                               std::size_t max_clients) {
  check_size(inst, capacity, max_clients);
  return enumerate_all(inst, capacity);
}

MatchingOptimum brute_force_matching(const MatchingProblem& prob) {
  if (prob.size() > kMaxMatchingVertices)
    throw InputError("brute-force matching refuses " + std::to_string(prob.size()) +
                     " vertices (limit " + std::to_string(kMaxMatchingVertices) + ")");
  MatchingOptimum best{{}, std::numeric_limits<Weight>::max()};
  std::vector<bool> used(prob.size(), false);
  std::vector<std::pair<Vertex, Vertex>> current;
  match_rest(prob, used, current, 0, best);
  return best;
}

}  // namespace cvrp::oracle
