#include "cvrp/graph.hpp"

#include <algorithm>
#include <numeric>

namespace cvrp {

Instance::Instance(std::string name, std::size_t n, std::vector<Weight> weights)
    : name_(std::move(name)), n_(n), weights_(std::move(weights)) {
  if (n_ < 2) throw InputError("instance needs at least 2 vertices");
  if (weights_.size() != n_ * n_)
    throw InputError("weight matrix has " + std::to_string(weights_.size()) +
                     " entries, expected " + std::to_string(n_ * n_));
  for (std::size_t i = 0; i < n_; ++i) {
    if (weights_[i * n_ + i] != 0)
      throw InputError("nonzero diagonal at vertex " + std::to_string(i));
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Weight a = weights_[i * n_ + j];
      if (a != weights_[j * n_ + i])
        throw InputError("asymmetric weight between " + std::to_string(i) +
                         " and " + std::to_string(j));
      if (a < 0)
        throw InputError("negative weight between " + std::to_string(i) +
                         " and " + std::to_string(j));
    }
  }
}

Instance Instance::from_rows(std::string name,
                             const std::vector<std::vector<Weight>>& rows) {
  const std::size_t n = rows.size();
  std::vector<Weight> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw InputError("matrix rows must be square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return Instance(std::move(name), n, std::move(flat));
}

Weight Instance::at(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n_ ||
      static_cast<std::size_t>(v) >= n_)
    throw InputError("vertex index out of range");
  return w(u, v);
}

double Instance::mean_edge_weight() const {
  long double sum = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) sum += weights_[i * n_ + j];
  return static_cast<double>(sum / (static_cast<long double>(n_) * (n_ - 1) / 2));
}

RoutePlan::RoutePlan(std::vector<Vertex> perm, std::size_t capacity)
    : perm_(std::move(perm)), capacity_(capacity) {
  if (perm_.empty()) throw InputError("route plan needs at least one client");
  if (!is_client_permutation(perm_))
    throw InputError("route plan is not a permutation of 1.." +
                     std::to_string(perm_.size()));
  if (capacity_ < 1 || capacity_ > perm_.size())
    throw InputError("capacity " + std::to_string(capacity_) +
                     " outside [1, " + std::to_string(perm_.size()) + "]");
}

RoutePlan RoutePlan::identity(std::size_t num_clients, std::size_t capacity) {
  std::vector<Vertex> perm(num_clients);
  std::iota(perm.begin(), perm.end(), 1);
  return RoutePlan(std::move(perm), capacity);
}

bool is_client_permutation(std::span<const Vertex> perm) {
  std::vector<bool> seen(perm.size() + 1, false);
  for (Vertex v : perm) {
    if (v < 1 || static_cast<std::size_t>(v) > perm.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

void validate(const Instance& inst, const RoutePlan& plan) {
  if (plan.num_clients() != inst.num_clients())
    throw InputError("plan has " + std::to_string(plan.num_clients()) +
                     " clients but instance has " +
                     std::to_string(inst.num_clients()));
}

void validate(const Instance& inst, const BaseCycleCover& cover) {
  std::vector<bool> seen(inst.size(), false);
  std::size_t covered = 0;
  for (const auto& cycle : cover.cycles) {
    if (cycle.empty()) throw InputError("cover contains an empty cycle");
    for (Vertex v : cycle) {
      if (v < 1 || static_cast<std::size_t>(v) >= inst.size())
        throw InputError("cover references invalid client " + std::to_string(v));
      if (seen[v])
        throw InputError("client " + std::to_string(v) + " appears in two cycles");
      seen[v] = true;
      ++covered;
    }
  }
  if (covered != inst.num_clients())
    throw InputError("cover misses " + std::to_string(inst.num_clients() - covered) +
                     " clients");
}

Weight cycle_weight(const Instance& inst, std::span<const Vertex> cycle) {
  if (cycle.empty()) throw InputError("cycle must be nonempty");
  for (Vertex v : cycle)
    if (v < 1 || static_cast<std::size_t>(v) >= inst.size())
      throw InputError("cycle references invalid client " + std::to_string(v));
  Weight total = inst.w(0, cycle.front()) + inst.w(cycle.back(), 0);
  for (std::size_t k = 0; k + 1 < cycle.size(); ++k)
    total += inst.w(cycle[k], cycle[k + 1]);
  return total;
}

Weight cover_weight(const Instance& inst, const BaseCycleCover& cover) {
  validate(inst, cover);
  Weight total = 0;
  for (const auto& cycle : cover.cycles) total += cycle_weight(inst, cycle);
  return total;
}

std::vector<ClientSequence> blocks_of(const RoutePlan& plan) {
  std::vector<ClientSequence> blocks;
  const auto perm = plan.perm();
  for (std::size_t start = 0; start < perm.size(); start += plan.capacity()) {
    const std::size_t stop = std::min(perm.size(), start + plan.capacity());
    blocks.emplace_back(perm.begin() + start, perm.begin() + stop);
  }
  return blocks;
}

Weight route_weight_unchecked(const Instance& inst, std::span<const Vertex> perm,
                              std::size_t capacity) {
  Weight total = 0;
  for (std::size_t start = 0; start < perm.size(); start += capacity) {
    const std::size_t stop = std::min(perm.size(), start + capacity);
    total += inst.w(0, perm[start]) + inst.w(perm[stop - 1], 0);
    for (std::size_t k = start; k + 1 < stop; ++k) total += inst.w(perm[k], perm[k + 1]);
  }
  return total;
}

Weight route_weight(const Instance& inst, const RoutePlan& plan) {
  validate(inst, plan);
  return route_weight_unchecked(inst, plan.perm(), plan.capacity());
}

BaseCycleCover cover_from_plan(const RoutePlan& plan) {
  return BaseCycleCover{blocks_of(plan)};
}

}  // namespace cvrp
