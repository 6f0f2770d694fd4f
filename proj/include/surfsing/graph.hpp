#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surfsing/error.hpp"
#include "surfsing/matrix.hpp"
#include "surfsing/rational.hpp"

namespace surfsing {

/// Unordered pair of distinct exceptional components meeting in `mult` points.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  std::int64_t mult = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted dual graph of the exceptional divisor of a resolution. Vertex i
/// carries the self-intersection E_i^2. All components are smooth rational
/// curves, so no genus is stored.
///
/// Construction rejects structural defects (self-loops, endpoints out of
/// range, nonpositive or repeated edges). Semantic properties (connected,
/// negative definite, minimal) are reported by validate().
class ResolutionGraph {
 public:
  ResolutionGraph() = default;

  ResolutionGraph(std::vector<std::int64_t> weights, std::vector<Edge> edges, bool minimal_resolution)
      : weights_(std::move(weights)), edges_(std::move(edges)), minimal_(minimal_resolution) {
    const std::size_t n = weights_.size();
    adjacency_.assign(n, {});
    for (const Edge& e : edges_) {
      if (e.a >= n || e.b >= n)
        throw Error(Errc::InvalidGraph, "edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                            ") refers to a missing vertex");
      if (e.a == e.b)
        throw Error(Errc::InvalidGraph, "self-loop at vertex " + std::to_string(e.a) +
                                            " (components are smooth)");
      if (e.mult <= 0)
        throw Error(Errc::InvalidGraph, "edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                                            ") has nonpositive multiplicity");
      for (const auto& [nb, m] : adjacency_[e.a])
        if (nb == e.b)
          throw Error(Errc::InvalidGraph, "vertices " + std::to_string(e.a) + " and " +
                                              std::to_string(e.b) + " are joined twice; use mult");
      adjacency_[e.a].emplace_back(e.b, e.mult);
      adjacency_[e.b].emplace_back(e.a, e.mult);
    }
  }

  /// Path E_0 - E_1 - ... with the given weights.
  static ResolutionGraph chain(std::span<const std::int64_t> weights, bool minimal_resolution = true) {
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < weights.size(); ++i) edges.push_back({i - 1, i, 1});
    return ResolutionGraph({weights.begin(), weights.end()}, std::move(edges), minimal_resolution);
  }

  std::size_t size() const noexcept { return weights_.size(); }
  bool empty() const noexcept { return weights_.empty(); }
  std::int64_t weight(std::size_t v) const { return weights_.at(v); }
  std::span<const std::int64_t> weights() const noexcept { return weights_; }
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool is_minimal_resolution() const noexcept { return minimal_; }

  /// (neighbor, multiplicity) pairs.
  std::span<const std::pair<std::size_t, std::int64_t>> neighbors(std::size_t v) const {
    return adjacency_.at(v);
  }

  /// E_i . E_j as an integer.
  std::int64_t pairing(std::size_t i, std::size_t j) const {
    if (i == j) return weights_.at(i);
    for (const auto& [nb, m] : adjacency_.at(i))
      if (nb == j) return m;
    return 0;
  }

  bool is_connected() const {
    if (empty()) return true;
    std::vector<bool> seen(size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (const auto& [nb, m] : adjacency_[v])
        if (!seen[nb]) {
          seen[nb] = true;
          ++count;
          stack.push_back(nb);
        }
    }
    return count == size();
  }

  /// Connected, simple (all multiplicities 1), and |E| = |V| - 1.
  bool is_tree() const {
    if (empty() || edges_.size() + 1 != size()) return false;
    for (const Edge& e : edges_)
      if (e.mult != 1) return false;
    return is_connected();
  }

  /// Copy with different weights, same edges.
  ResolutionGraph with_weights(std::vector<std::int64_t> weights) const {
    if (weights.size() != size()) throw Error(Errc::DimensionMismatch, "weight vector has wrong length");
    return ResolutionGraph(std::move(weights), edges_, minimal_);
  }

  friend bool operator==(const ResolutionGraph& a, const ResolutionGraph& b) {
    return a.weights_ == b.weights_ && a.edges_ == b.edges_ && a.minimal_ == b.minimal_;
  }

 private:
  std::vector<std::int64_t> weights_;
  std::vector<Edge> edges_;
  bool minimal_ = true;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> adjacency_;
};

/// Integer cycle sum_i c_i E_i, indexed by graph vertices.
class Cycle {
 public:
  Cycle() = default;
  explicit Cycle(std::size_t n) : c_(n, 0) {}
  Cycle(std::initializer_list<std::int64_t> c) : c_(c) {}
  explicit Cycle(std::vector<std::int64_t> c) : c_(std::move(c)) {}

  std::size_t size() const noexcept { return c_.size(); }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }
  std::span<const std::int64_t> coefficients() const noexcept { return c_; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
  }
  std::int64_t max() const { return c_.empty() ? 0 : *std::max_element(c_.begin(), c_.end()); }
  std::int64_t sum() const { return std::accumulate(c_.begin(), c_.end(), std::int64_t{0}); }

  /// Coordinatewise c_i >= o_i.
  bool dominates(const Cycle& o) const {
    if (o.size() != size()) throw Error(Errc::DimensionMismatch, "cycles of different length");
    for (std::size_t i = 0; i < size(); ++i)
      if (c_[i] < o.c_[i]) return false;
    return true;
  }

  friend bool operator==(const Cycle&, const Cycle&) = default;

 private:
  std::vector<std::int64_t> c_;
};

inline RationalMatrix intersection_matrix(const ResolutionGraph& graph) {
  const std::size_t n = graph.size();
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = graph.weight(i);
  for (const Edge& e : graph.edges()) {
    m(e.a, e.b) = e.mult;
    m(e.b, e.a) = e.mult;
  }
  return m;
}

inline std::int64_t cycle_dot_integer(const ResolutionGraph& graph, const Cycle& cycle, std::size_t vertex) {
  if (cycle.size() != graph.size()) throw Error(Errc::DimensionMismatch, "cycle length differs from vertex count");
  if (vertex >= graph.size())
    throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(vertex) + " out of range");
  std::int64_t dot = cycle[vertex] * graph.weight(vertex);
  for (const auto& [nb, m] : graph.neighbors(vertex)) dot += cycle[nb] * m;
  return dot;
}

/// (sum_i c_i E_i) . E_vertex
inline Rational cycle_dot(const ResolutionGraph& graph, const Cycle& cycle, std::size_t vertex) {
  return Rational(cycle_dot_integer(graph, cycle, vertex));
}

/// Exact Gaussian elimination along a tree, leaves first. The intersection
/// matrix of a tree admits a perfect elimination order, so the pivots are
/// produced without fill-in in O(|V|) rational operations. The matrix is
/// negative definite iff every pivot is negative.
class TreeEliminator {
 public:
  explicit TreeEliminator(const ResolutionGraph& graph) : n_(graph.size()) {
    if (!graph.is_tree()) throw Error(Errc::PreconditionViolated, "tree elimination needs a tree");
    const std::size_t n = graph.size();
    parent_.assign(n, n);
    order_.reserve(n);
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      order_.push_back(v);
      for (const auto& [nb, m] : graph.neighbors(v))
        if (!seen[nb]) {
          seen[nb] = true;
          parent_[nb] = v;
          stack.push_back(nb);
        }
    }
    // Reverse preorder visits every child before its parent.
    std::reverse(order_.begin(), order_.end());
    pivots_.assign(n, Rational{});
    for (std::size_t v : order_) pivots_[v] = graph.weight(v);
    for (std::size_t v : order_) {
      if (parent_[v] == n) continue;
      if (pivots_[v].is_zero()) {
        singular_ = true;
        return;
      }
      pivots_[parent_[v]] -= Rational(1) / pivots_[v];
    }
    singular_ = pivots_[order_.back()].is_zero();
  }

  /// A zero pivot was met. For negative definite input this never happens.
  bool singular() const noexcept { return singular_; }

  bool negative_definite() const {
    if (singular_) return false;
    return std::all_of(pivots_.begin(), pivots_.end(), [](const Rational& p) { return p.sign() < 0; });
  }

  std::vector<Rational> solve(std::span<const Rational> rhs) const {
    const std::size_t n = n_;
    if (rhs.size() != n) throw Error(Errc::DimensionMismatch, "right-hand side has wrong length");
    if (singular_) throw Error(Errc::SingularMatrix, "zero pivot in tree elimination");
    std::vector<Rational> reduced(rhs.begin(), rhs.end());
    for (std::size_t v : order_)
      if (parent_[v] != n && !reduced[v].is_zero()) reduced[parent_[v]] -= reduced[v] / pivots_[v];
    std::vector<Rational> x(n);
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const std::size_t v = *it;
      Rational acc = reduced[v];
      if (parent_[v] != n) acc -= x[parent_[v]];
      x[v] = acc / pivots_[v];
    }
    return x;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> order_;
  std::vector<Rational> pivots_;
  bool singular_ = false;
};

/// Trees use the linear-time elimination; anything else goes through
/// Sylvester's criterion on the dense intersection matrix.
inline bool graph_is_negative_definite(const ResolutionGraph& graph) {
  if (graph.empty()) return true;
  if (graph.is_tree()) return TreeEliminator(graph).negative_definite();
  return is_negative_definite(intersection_matrix(graph));
}

enum class DiagnosticKind { NotConnected, NotNegativeDefinite, NotMinimalResolution };

constexpr std::string_view to_string(DiagnosticKind k) noexcept {
  switch (k) {
    case DiagnosticKind::NotConnected: return "NotConnected";
    case DiagnosticKind::NotNegativeDefinite: return "NotNegativeDefinite";
    case DiagnosticKind::NotMinimalResolution: return "NotMinimalResolution";
  }
  return "Unknown";
}

struct Diagnostic {
  DiagnosticKind kind;
  std::optional<std::size_t> vertex;
  std::string message;
};

/// Empty iff the graph is connected, negative definite and, when flagged as a
/// minimal resolution, free of curves with self-intersection above -2.
inline std::vector<Diagnostic> validate(const ResolutionGraph& graph) {
  std::vector<Diagnostic> out;
  if (!graph.is_connected())
    out.push_back({DiagnosticKind::NotConnected, std::nullopt, "dual graph is not connected"});
  if (!graph_is_negative_definite(graph))
    out.push_back({DiagnosticKind::NotNegativeDefinite, std::nullopt, "intersection matrix is not negative definite"});
  if (graph.is_minimal_resolution())
    for (std::size_t v = 0; v < graph.size(); ++v)
      if (graph.weight(v) > -2)
        out.push_back({DiagnosticKind::NotMinimalResolution, v,
                       "vertex " + std::to_string(v) + " has weight " + std::to_string(graph.weight(v)) +
                           " > -2 on a graph flagged minimal"});
  return out;
}

}  // namespace surfsing
