#include "cvrp/memetic.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace cvrp {

Weight Genome::weight() const {
  if (!weight_) throw std::logic_error("genome weight requested before evaluation");
  return *weight_;
}

void Genome::evaluate(const Instance& inst) {
  if (!weight_) weight_ = route_weight(inst, plan_);
}

std::string to_string(CrossoverKind kind) {
  switch (kind) {
    case CrossoverKind::kCx:
      return "cx";
    case CrossoverKind::kOx:
      return "ox";
    case CrossoverKind::kPmx:
      return "pmx";
  }
  return "?";
}

CrossoverKind parse_crossover(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "cx") return CrossoverKind::kCx;
  if (s == "ox") return CrossoverKind::kOx;
  if (s == "pmx") return CrossoverKind::kPmx;
  throw InputError("unknown crossover '" + name + "' (expected cx, ox or pmx)");
}

void MemeticParams::validate() const {
  auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (population_size < 2) throw InputError("population_size must be at least 2");
  if (!prob_ok(effective_pr_cross())) throw InputError("pr_cross must lie in [0, 1]");
  if (!prob_ok(pr_mut)) throw InputError("pr_mut must lie in [0, 1]");
  if (iterations < 1) throw InputError("iterations must be at least 1");
  if (migration_freq < 1) throw InputError("migration_freq must be at least 1");
  if (migration_count > population_size)
    throw InputError("migration_count cannot exceed population_size");
  if (sa_initial_temp && *sa_initial_temp < 0.0)
    throw InputError("sa_initial_temp must be nonnegative");
  if (!(sa_cooling > 0.0 && sa_cooling < 1.0)) throw InputError("sa_cooling must lie in (0, 1)");
}

bool genome_less(const Genome& a, const Genome& b) {
  const Weight wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  return std::lexicographical_compare(a.perm().begin(), a.perm().end(), b.perm().begin(),
                                      b.perm().end());
}

Population::Population(const Instance& inst, std::vector<Genome> members)
    : members_(std::move(members)) {
  for (auto& g : members_) g.evaluate(inst);
  std::stable_sort(members_.begin(), members_.end(), genome_less);
}

Population random_population(const Instance& inst, std::size_t capacity, std::size_t size,
                             Rng& rng) {
  if (size < 2) throw InputError("population size must be at least 2");
  std::vector<Genome> members;
  members.reserve(size);
  for (std::size_t k = 0; k < size; ++k) {
    auto perm = RoutePlan::identity(inst.num_clients(), capacity).release_perm();
    rng.shuffle(perm.begin(), perm.end());
    members.emplace_back(RoutePlan(std::move(perm), capacity));
  }
  return Population(inst, std::move(members));
}

namespace {

void check_parents(std::span<const Vertex> p1, std::span<const Vertex> p2) {
  if (p1.size() != p2.size())
    throw InputError("crossover parents differ in length: " + std::to_string(p1.size()) +
                     " vs " + std::to_string(p2.size()));
  if (!is_client_permutation(p1) || !is_client_permutation(p2))
    throw InputError("crossover parents must be permutations");
}

void check_cuts(std::size_t len, std::size_t a, std::size_t b) {
  if (a > b || b >= len) throw InputError("invalid crossover cut points");
}

std::pair<std::size_t, std::size_t> random_cuts(std::size_t len, Rng& rng) {
  auto a = static_cast<std::size_t>(rng.below(len));
  auto b = static_cast<std::size_t>(rng.below(len));
  if (a > b) std::swap(a, b);
  return {a, b};
}

// position_of[v] = index of value v in perm.
std::vector<std::size_t> positions(std::span<const Vertex> perm) {
  std::vector<std::size_t> pos(perm.size() + 1);
  for (std::size_t k = 0; k < perm.size(); ++k) pos[perm[k]] = k;
  return pos;
}

}  // namespace

std::pair<std::vector<Vertex>, std::vector<Vertex>> cycle_crossover(
    std::span<const Vertex> p1, std::span<const Vertex> p2) {
  check_parents(p1, p2);
  const std::size_t len = p1.size();
  const auto pos1 = positions(p1);
  std::vector<Vertex> c1(len), c2(len);
  std::vector<bool> assigned(len, false);
  std::size_t cycle_index = 0;
  for (std::size_t start = 0; start < len; ++start) {
    if (assigned[start]) continue;
    ++cycle_index;
    const bool keep = cycle_index % 2 == 1;
    std::size_t k = start;
    do {
      assigned[k] = true;
      c1[k] = keep ? p1[k] : p2[k];
      c2[k] = keep ? p2[k] : p1[k];
      k = pos1[p2[k]];
    } while (k != start);
  }
  return {std::move(c1), std::move(c2)};
}

std::vector<Vertex> order_crossover(std::span<const Vertex> p1, std::span<const Vertex> p2,
                                    std::size_t a, std::size_t b) {
  check_parents(p1, p2);
  const std::size_t len = p1.size();
  check_cuts(len, a, b);
  std::vector<Vertex> child(len, 0);
  std::vector<bool> present(len + 1, false);
  for (std::size_t k = a; k <= b; ++k) {
    child[k] = p1[k];
    present[p1[k]] = true;
  }
  std::size_t write = (b + 1) % len;
  for (std::size_t step = 0; step < len; ++step) {
    const Vertex v = p2[(b + 1 + step) % len];
    if (present[v]) continue;
    child[write] = v;
    write = (write + 1) % len;
  }
  return child;
}

std::vector<Vertex> partially_mapped_crossover(std::span<const Vertex> p1,
                                               std::span<const Vertex> p2, std::size_t a,
                                               std::size_t b) {
  check_parents(p1, p2);
  const std::size_t len = p1.size();
  check_cuts(len, a, b);
  const auto pos1 = positions(p1);
  std::vector<Vertex> child(len);
  std::vector<bool> in_segment(len + 1, false);
  for (std::size_t k = a; k <= b; ++k) {
    child[k] = p1[k];
    in_segment[p1[k]] = true;
  }
  for (std::size_t k = 0; k < len; ++k) {
    if (k >= a && k <= b) continue;
    Vertex v = p2[k];
    while (in_segment[v]) v = p2[pos1[v]];
    child[k] = v;
  }
  return child;
}

std::pair<Genome, Genome> crossover_cx(const Genome& p1, const Genome& p2) {
  auto [c1, c2] = cycle_crossover(p1.perm(), p2.perm());
  return {Genome(RoutePlan(std::move(c1), p1.capacity())),
          Genome(RoutePlan(std::move(c2), p1.capacity()))};
}

Genome crossover_ox(const Genome& p1, const Genome& p2, Rng& rng) {
  check_parents(p1.perm(), p2.perm());
  const auto [a, b] = random_cuts(p1.perm().size(), rng);
  return Genome(RoutePlan(order_crossover(p1.perm(), p2.perm(), a, b), p1.capacity()));
}

Genome crossover_pmx(const Genome& p1, const Genome& p2, Rng& rng) {
  check_parents(p1.perm(), p2.perm());
  const auto [a, b] = random_cuts(p1.perm().size(), rng);
  return Genome(
      RoutePlan(partially_mapped_crossover(p1.perm(), p2.perm(), a, b), p1.capacity()));
}

std::vector<Genome> crossover(CrossoverKind kind, const Genome& p1, const Genome& p2,
                              Rng& rng) {
  std::vector<Genome> out;
  switch (kind) {
    case CrossoverKind::kCx: {
      auto [c1, c2] = crossover_cx(p1, p2);
      out.push_back(std::move(c1));
      out.push_back(std::move(c2));
      break;
    }
    case CrossoverKind::kOx:
      out.push_back(crossover_ox(p1, p2, rng));
      break;
    case CrossoverKind::kPmx:
      out.push_back(crossover_pmx(p1, p2, rng));
      break;
  }
  return out;
}

Genome mutate_swap(const Genome& g, double pr_mut, Rng& rng) {
  if (g.perm().size() < 2 || !rng.bernoulli(pr_mut)) return g;
  auto perm = std::vector<Vertex>(g.perm().begin(), g.perm().end());
  const auto [i, j] = rng.distinct_pair(perm.size());
  std::swap(perm[i], perm[j]);
  return Genome(RoutePlan(std::move(perm), g.capacity()));
}

namespace {

// Permutation cut into trips with O(1) move deltas. Edge ids: 2p is the base
// edge into a trip starting at position p; 2p+1 is the edge leaving p.
class TripTour {
 public:
  TripTour(const Instance& inst, std::vector<Vertex> perm, std::size_t capacity)
      : inst_(inst), perm_(std::move(perm)), cap_(capacity) {}

  std::vector<Vertex>& perm() { return perm_; }
  const std::vector<Vertex>& perm() const { return perm_; }

  bool starts_trip(std::size_t p) const { return p % cap_ == 0; }
  bool ends_trip(std::size_t p) const { return p % cap_ == cap_ - 1 || p + 1 == perm_.size(); }
  std::size_t trip_of(std::size_t p) const { return p / cap_; }

  Weight edge(std::size_t id) const {
    const std::size_t p = id / 2;
    if (id % 2 == 0) return inst_.w(0, perm_[p]);
    return ends_trip(p) ? inst_.w(perm_[p], 0) : inst_.w(perm_[p], perm_[p + 1]);
  }

  // The two edges touching position p.
  std::array<std::size_t, 2> incident(std::size_t p) const {
    return {starts_trip(p) ? 2 * p : 2 * (p - 1) + 1, 2 * p + 1};
  }

  Weight trip_weight(std::size_t trip) const {
    const std::size_t start = trip * cap_;
    const std::size_t stop = std::min(perm_.size(), start + cap_);
    Weight total = inst_.w(0, perm_[start]) + inst_.w(perm_[stop - 1], 0);
    for (std::size_t k = start; k + 1 < stop; ++k) total += inst_.w(perm_[k], perm_[k + 1]);
    return total;
  }

  // Applies a swap of positions i != j and returns the weight change.
  Weight swap(std::size_t i, std::size_t j) {
    std::array<std::size_t, 4> ids{};
    std::size_t count = 0;
    for (std::size_t p : {i, j})
      for (std::size_t id : incident(p))
        if (std::find(ids.begin(), ids.begin() + count, id) == ids.begin() + count)
          ids[count++] = id;
    Weight before = 0, after = 0;
    for (std::size_t k = 0; k < count; ++k) before += edge(ids[k]);
    std::swap(perm_[i], perm_[j]);
    for (std::size_t k = 0; k < count; ++k) after += edge(ids[k]);
    return after - before;
  }

  // Reverses positions [i, j], i < j, and returns the weight change.
  Weight reverse(std::size_t i, std::size_t j) {
    const std::size_t first = trip_of(i), last = trip_of(j);
    if (first == last) {
      const Vertex prev = starts_trip(i) ? 0 : perm_[i - 1];
      const Vertex next = ends_trip(j) ? 0 : perm_[j + 1];
      const Weight delta = inst_.w(prev, perm_[j]) + inst_.w(perm_[i], next) -
                           inst_.w(prev, perm_[i]) - inst_.w(perm_[j], next);
      std::reverse(perm_.begin() + i, perm_.begin() + j + 1);
      return delta;
    }
    Weight before = 0, after = 0;
    for (std::size_t t = first; t <= last; ++t) before += trip_weight(t);
    std::reverse(perm_.begin() + i, perm_.begin() + j + 1);
    for (std::size_t t = first; t <= last; ++t) after += trip_weight(t);
    return after - before;
  }

 private:
  const Instance& inst_;
  std::vector<Vertex> perm_;
  std::size_t cap_;
};

}  // namespace

Genome local_search_sa(const Genome& g, const Instance& inst, const MemeticParams& params,
                       Rng& rng, std::vector<Weight>* accepted) {
  validate(inst, g.plan());
  const Weight start_weight =
      g.is_evaluated() ? g.weight() : route_weight_unchecked(inst, g.perm(), g.capacity());
  const std::size_t len = g.perm().size();
  if (params.sa_steps == 0 || len < 2) return Genome(g.plan(), start_weight);

  TripTour tour(inst, std::vector<Vertex>(g.perm().begin(), g.perm().end()), g.capacity());
  Weight current = start_weight;
  Weight best = start_weight;
  std::vector<Vertex> best_perm = tour.perm();
  double temp = params.effective_sa_temp(inst);

  for (std::size_t s = 0; s < params.sa_steps; ++s) {
    auto [i, j] = rng.distinct_pair(len);
    if (i > j) std::swap(i, j);
    const bool use_reversal = rng.below(2) == 0;
    const Weight delta = use_reversal ? tour.reverse(i, j) : tour.swap(i, j);
    bool accept = delta <= 0;
    if (!accept && temp > 0.0)
      accept = rng.uniform() < std::exp(-static_cast<double>(delta) / temp);
    if (accept) {
      if (accepted) accepted->push_back(delta);
      current += delta;
      if (current < best) {
        best = current;
        best_perm = tour.perm();
      }
    } else if (use_reversal) {
      std::reverse(tour.perm().begin() + i, tour.perm().begin() + j + 1);
    } else {
      std::swap(tour.perm()[i], tour.perm()[j]);
    }
    temp *= params.sa_cooling;
  }
  if (best == start_weight) return Genome(g.plan(), start_weight);
  return Genome(RoutePlan(std::move(best_perm), g.capacity()), best);
}

Population select_truncate(std::vector<Genome> pool, std::size_t target_size) {
  if (target_size < 1) throw InputError("selection target size must be at least 1");
  std::stable_sort(pool.begin(), pool.end(), genome_less);
  if (pool.size() > target_size) pool.erase(pool.begin() + target_size, pool.end());
  Population out;
  out.members_ = std::move(pool);
  return out;
}

Population select_truncate(Population pop, std::size_t target_size) {
  if (pop.empty()) throw InputError("cannot select from an empty population");
  return select_truncate(std::move(pop.members_), target_size);
}

namespace {
enum StreamPurpose : std::uint64_t { kMutation = 1, kCrossover = 2, kLocalSearch = 3 };
}

Rng StepStreams::mutation(std::size_t member) const {
  return Rng(derive_seed(seed, {island, iteration, kMutation, member}));
}
Rng StepStreams::crossover() const {
  return Rng(derive_seed(seed, {island, iteration, kCrossover}));
}
Rng StepStreams::local_search(std::size_t index) const {
  return Rng(derive_seed(seed, {island, iteration, kLocalSearch, index}));
}

Population step(const Population& pop, const Instance& inst, const MemeticParams& params,
                const StepStreams& streams) {
  std::vector<Genome> members = pop.members();
  for (auto& g : members) g.evaluate(inst);

  // Rank 0 is never mutated so the incumbent survives to selection.
  for (std::size_t k = 1; k < members.size(); ++k) {
    Rng rng = streams.mutation(k);
    members[k] = mutate_swap(members[k], params.pr_mut, rng);
  }

  std::vector<Genome> offspring;
  const double pr_cross = params.effective_pr_cross();
  if (pr_cross > 0.0) {
    Rng rng = streams.crossover();
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        if (!rng.bernoulli(pr_cross)) continue;
        for (auto& child : crossover(params.crossover_kind, members[a], members[b], rng))
          offspring.push_back(std::move(child));
      }
  }

  std::vector<Genome> pool;
  pool.reserve(members.size() + offspring.size());
  for (auto& g : members) pool.push_back(std::move(g));
  for (auto& g : offspring) pool.push_back(std::move(g));
  for (std::size_t k = 0; k < pool.size(); ++k) {
    Rng rng = streams.local_search(k);
    pool[k] = local_search_sa(pool[k], inst, params, rng);
  }
  return select_truncate(std::move(pool), params.population_size);
}

}  // namespace cvrp
