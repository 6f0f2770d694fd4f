#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "surfsing/error.hpp"
#include "surfsing/graph.hpp"

namespace surfsing {

/// Picks one vertex out of a nonempty, increasing list of candidates. Used both
/// for the start component and for every addition step of Laufer's algorithm.
using TieBreakPolicy = std::function<std::size_t(std::span<const std::size_t>)>;

inline TieBreakPolicy lowest_index_policy() {
  return [](std::span<const std::size_t> c) { return c.front(); };
}

inline TieBreakPolicy highest_index_policy() {
  return [](std::span<const std::size_t> c) { return c.back(); };
}

/// Uniform choice driven by its own seeded engine; each copy of the returned
/// policy owns an independent engine state.
inline TieBreakPolicy random_policy(std::uint64_t seed) {
  return [engine = std::mt19937_64(seed)](std::span<const std::size_t> c) mutable {
    std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
    return c[pick(engine)];
  };
}

inline bool is_antinef(const ResolutionGraph& graph, const Cycle& cycle) {
  if (cycle.size() != graph.size()) throw Error(Errc::DimensionMismatch, "cycle length differs from vertex count");
  for (std::size_t v = 0; v < graph.size(); ++v)
    if (cycle_dot_integer(graph, cycle, v) > 0) return false;
  return true;
}

struct LauferRun {
  Cycle cycle;
  /// Number of components added after the start component.
  std::size_t additions = 0;
};

inline void require_fundamental_cycle_input(const ResolutionGraph& graph) {
  if (graph.empty()) throw Error(Errc::InvalidGraph, "graph has no vertices");
  if (!graph.is_connected()) throw Error(Errc::InvalidGraph, "graph is not connected");
  if (!graph_is_negative_definite(graph))
    throw Error(Errc::NotNegativeDefinite, "intersection matrix is not negative definite");
}

/// Laufer's algorithm: start from one component and keep adding a component
/// E_i with C.E_i > 0 until C is antinef.
inline LauferRun laufer_run(const ResolutionGraph& graph, const TieBreakPolicy& policy = lowest_index_policy()) {
  require_fundamental_cycle_input(graph);
  const std::size_t n = graph.size();
  const std::size_t cap = 100 * n;

  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const std::size_t start = policy(all);
  if (start >= n) throw Error(Errc::IndexOutOfRange, "policy returned a vertex outside the graph");

  LauferRun run{Cycle(n), 0};
  std::vector<std::int64_t> dots(n, 0);
  auto add = [&](std::size_t v) {
    run.cycle[v] += 1;
    dots[v] += graph.weight(v);
    for (const auto& [nb, m] : graph.neighbors(v)) dots[nb] += m;
  };
  add(start);

  std::vector<std::size_t> positive;
  for (;;) {
    positive.clear();
    for (std::size_t v = 0; v < n; ++v)
      if (dots[v] > 0) positive.push_back(v);
    if (positive.empty()) return run;
    if (run.additions >= cap)
      throw Error(Errc::InternalError, "Laufer iteration exceeded " + std::to_string(cap) + " additions");
    const std::size_t next = policy(positive);
    if (next >= n || dots[next] <= 0) throw Error(Errc::InternalError, "policy chose a non-candidate vertex");
    add(next);
    ++run.additions;
  }
}

inline Cycle laufer_fundamental_cycle(const ResolutionGraph& graph,
                                      const TieBreakPolicy& policy = lowest_index_policy()) {
  return laufer_run(graph, policy).cycle;
}

/// Coordinatewise minimum of all nonzero antinef cycles with entries in
/// [0, bound]. Enumerates the box depth first in breadth-first vertex order.
/// Neighbours only ever raise C.E_w, so a partial assignment is discarded as
/// soon as some assigned vertex already has positive partial intersection.
inline Cycle brute_force_fundamental_cycle(const ResolutionGraph& graph, std::int64_t coefficient_bound) {
  require_fundamental_cycle_input(graph);
  if (coefficient_bound < 1) throw Error(Errc::InvalidParameters, "coefficient bound must be >= 1");
  const std::size_t n = graph.size();

  std::vector<std::size_t> order;
  std::vector<bool> queued(n, false);
  order.push_back(0);
  queued[0] = true;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (const auto& [nb, m] : graph.neighbors(order[head]))
      if (!queued[nb]) {
        queued[nb] = true;
        order.push_back(nb);
      }

  Cycle current(n);
  std::vector<bool> assigned(n, false);
  std::vector<std::int64_t> partial(n, 0);  // C.E_w restricted to assigned vertices
  Cycle best(std::vector<std::int64_t>(n, std::numeric_limits<std::int64_t>::max()));
  bool found = false;

  auto shift = [&](std::size_t v, std::int64_t delta) {
    current[v] += delta;
    partial[v] += graph.weight(v) * delta;
    for (const auto& [nb, m] : graph.neighbors(v)) partial[nb] += m * delta;
  };

  std::function<void(std::size_t)> descend = [&](std::size_t k) {
    if (k == n) {
      if (current.is_zero()) return;
      found = true;
      for (std::size_t i = 0; i < n; ++i) best[i] = std::min(best[i], current[i]);
      return;
    }
    const std::size_t v = order[k];
    assigned[v] = true;
    for (std::int64_t value = 0; value <= coefficient_bound; ++value) {
      if (value > 0) shift(v, 1);
      // Assigned neighbours only get worse as the value grows.
      bool neighbours_ok = true;
      for (const auto& [nb, m] : graph.neighbors(v))
        if (assigned[nb] && partial[nb] > 0) neighbours_ok = false;
      if (!neighbours_ok) break;
      if (partial[v] <= 0) descend(k + 1);
    }
    shift(v, -current[v]);
    assigned[v] = false;
  };
  descend(0);

  if (!found)
    throw Error(Errc::BoundTooSmall, "no nonzero antinef cycle with coefficients <= " + std::to_string(coefficient_bound));
  return best;
}

/// Checks c_i(A) >= c_i(B) for graphs with equal vertex count whose
/// intersection matrices satisfy A_ij >= B_ij entrywise.
inline bool check_monotonicity(const ResolutionGraph& a, const ResolutionGraph& b) {
  if (a.size() != b.size()) throw Error(Errc::PreconditionViolated, "graphs have different vertex counts");
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.pairing(i, j) < b.pairing(i, j))
        throw Error(Errc::PreconditionViolated, "intersection matrices are not comparable at (" + std::to_string(i) +
                                                    "," + std::to_string(j) + ")");
  return laufer_fundamental_cycle(a).dominates(laufer_fundamental_cycle(b));
}

struct SixEReport {
  std::int64_t max_coefficient = 0;
  bool passes = false;
};

inline SixEReport check_6E(const ResolutionGraph& graph) {
  const auto c = laufer_fundamental_cycle(graph);
  return {c.max(), c.max() <= 6};
}

}  // namespace surfsing
