#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cvrp {

using Weight = std::int64_t;
using Vertex = std::int32_t;

/// Raised for malformed input: bad indices, size mismatches, broken invariants.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Complete undirected graph with integer weights. Vertex 0 is the base.
class Instance {
 public:
  /// `weights` is row-major n*n; must be symmetric with a zero diagonal.
  Instance(std::string name, std::size_t n, std::vector<Weight> weights);

  /// Convenience for tests and small fixtures.
  static Instance from_rows(std::string name,
                            const std::vector<std::vector<Weight>>& rows);

  const std::string& name() const { return name_; }
  std::size_t size() const { return n_; }
  std::size_t num_clients() const { return n_ - 1; }

  Weight w(Vertex u, Vertex v) const {
    return weights_[static_cast<std::size_t>(u) * n_ + static_cast<std::size_t>(v)];
  }
  /// Bounds-checked variant of w().
  Weight at(Vertex u, Vertex v) const;

  std::span<const Weight> matrix() const { return weights_; }
  double mean_edge_weight() const;

  bool operator==(const Instance&) const = default;

 private:
  std::string name_;
  std::size_t n_;
  std::vector<Weight> weights_;
};

/// A permutation of clients 1..n-1 cut into consecutive trips of `capacity`.
class RoutePlan {
 public:
  RoutePlan(std::vector<Vertex> perm, std::size_t capacity);

  /// Identity order 1..num_clients.
  static RoutePlan identity(std::size_t num_clients, std::size_t capacity);

  std::span<const Vertex> perm() const { return perm_; }
  std::vector<Vertex> release_perm() && { return std::move(perm_); }
  std::size_t capacity() const { return capacity_; }
  std::size_t num_clients() const { return perm_.size(); }

  bool operator==(const RoutePlan&) const = default;
  auto operator<=>(const RoutePlan&) const = default;

 private:
  std::vector<Vertex> perm_;
  std::size_t capacity_;
};

using ClientSequence = std::vector<Vertex>;

/// Cycles sharing only the base; each sequence <u1..uk> means <base,u1..uk>.
struct BaseCycleCover {
  std::vector<ClientSequence> cycles;

  bool operator==(const BaseCycleCover&) const = default;
};

/// True when `perm` holds every value of 1..perm.size() exactly once.
bool is_client_permutation(std::span<const Vertex> perm);

/// Throws InputError unless plan is a valid plan for inst.
void validate(const Instance& inst, const RoutePlan& plan);
/// Throws InputError unless cover is disjoint, nonempty per cycle, and total.
void validate(const Instance& inst, const BaseCycleCover& cover);

/// Weight of the closed walk base -> cycle[0] -> ... -> cycle.back() -> base.
/// A single-client cycle counts both directions (out and back).
Weight cycle_weight(const Instance& inst, std::span<const Vertex> cycle);
Weight cover_weight(const Instance& inst, const BaseCycleCover& cover);

std::vector<ClientSequence> blocks_of(const RoutePlan& plan);
Weight route_weight(const Instance& inst, const RoutePlan& plan);
BaseCycleCover cover_from_plan(const RoutePlan& plan);

/// route_weight without validation, for inner loops.
Weight route_weight_unchecked(const Instance& inst, std::span<const Vertex> perm,
                              std::size_t capacity);

}  // namespace cvrp
