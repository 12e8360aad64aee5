#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cvrp/exact_c2.hpp"
#include "cvrp/graph.hpp"
#include "cvrp/random.hpp"

namespace testing {

using cvrp::Instance;
using cvrp::Rng;
using cvrp::Vertex;
using cvrp::Weight;

// Symmetric matrix with independent uniform weights in [lo, hi].
inline Instance random_matrix_instance(std::size_t n, Rng& rng, Weight lo = 0, Weight hi = 100) {
  std::vector<Weight> w(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      w[i * n + j] = w[j * n + i] =
          lo + static_cast<Weight>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
  return Instance("m" + std::to_string(n), n, std::move(w));
}

// Euclidean instance built here rather than through the library generator.
inline Instance random_euclid_instance(std::size_t n, Rng& rng, int bound = 1000) {
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = static_cast<double>(rng.below(static_cast<std::uint64_t>(bound) + 1));
    y[i] = static_cast<double>(rng.below(static_cast<std::uint64_t>(bound) + 1));
  }
  std::vector<Weight> w(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        w[i * n + j] = static_cast<Weight>(std::floor(std::hypot(x[i] - x[j], y[i] - y[j]) + 0.5));
  return Instance("e" + std::to_string(n), n, std::move(w));
}

inline std::vector<Vertex> random_perm(std::size_t clients, Rng& rng) {
  std::vector<Vertex> p(clients);
  std::iota(p.begin(), p.end(), 1);
  rng.shuffle(p.begin(), p.end());
  return p;
}

inline bool is_perm_of_clients(const std::vector<Vertex>& p) {
  std::vector<Vertex> s = p;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] != static_cast<Vertex>(i + 1)) return false;
  return true;
}

// Straight-line evaluation of a plan: walk the permutation, closing a trip
// every `cap` clients and at the end.
inline Weight naive_route_weight(const Instance& inst, const std::vector<Vertex>& perm,
                                 std::size_t cap) {
  Weight total = 0;
  Vertex prev = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    total += inst.w(prev, perm[i]);
    prev = perm[i];
    if ((i + 1) % cap == 0 || i + 1 == perm.size()) {
      total += inst.w(prev, 0);
      prev = 0;
    }
  }
  return total;
}

inline cvrp::MatchingProblem random_matching_problem(std::size_t m, Rng& rng, Weight hi = 50) {
  std::vector<Weight> w(m * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      w[i * m + j] = w[j * m + i] = static_cast<Weight>(rng.below(static_cast<std::uint64_t>(hi) + 1));
  return cvrp::MatchingProblem(m, std::move(w));
}

}  // namespace testing
