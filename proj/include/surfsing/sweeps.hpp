#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "surfsing/catalog.hpp"
#include "surfsing/fundamental_cycle.hpp"
#include "surfsing/graph.hpp"
#include "surfsing/hj.hpp"
#include "surfsing/log_discrepancy.hpp"
#include "surfsing/monomial.hpp"

namespace surfsing::sweeps {

/// Runs fn(0..count-1) on `jobs` workers; results stay in index order.
template <class Fn>
auto parallel_map(std::size_t count, unsigned jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using T = decltype(fn(std::size_t{0}));
  std::vector<T> out(count);
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned w = 0; w < jobs; ++w)
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += jobs) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : workers) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct SweepRange {
  std::int64_t max_n = 200;  // cyclic and dihedral: n <= max_n
  std::int64_t max_b = 10;   // tetrahedral/octahedral/icosahedral: derived b <= max_b
};

/// Cyclic (coprime 1 <= q < n <= max_n), dihedral (coprime 1 < q < n <= max_n),
/// then T, O, I for b = 2..max_b in table row order.
inline std::vector<CatalogEntry> enumerate_catalog(const SweepRange& range) {
  std::vector<CatalogEntry> out;
  for (std::int64_t n = 2; n <= range.max_n; ++n)
    for (std::int64_t q = 1; q < n; ++q)
      if (std::gcd(n, q) == 1) out.push_back(cyclic_entry(n, q));
  for (std::int64_t n = 3; n <= range.max_n; ++n)
    for (std::int64_t q = 2; q < n; ++q)
      if (std::gcd(n, q) == 1) out.push_back(dihedral_graph(n, q));
  for (Family f : {Family::Tetrahedral, Family::Octahedral, Family::Icosahedral}) {
    const auto modulus = family_modulus(f);
    for (std::int64_t b = 2; b <= range.max_b; ++b)
      for (auto r : table_residues(f)) out.push_back(polyhedral_graph(f, modulus * (b - 2) + r));
  }
  return out;
}

inline std::vector<CatalogEntry> small_catalog(const SweepRange& range, std::size_t max_vertices) {
  std::vector<CatalogEntry> out;
  for (auto& e : enumerate_catalog(range))
    if (e.graph.size() <= max_vertices) out.push_back(std::move(e));
  return out;
}

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string summary;
  std::vector<std::string> failures;

  void fail(std::string what) {
    passed = false;
    if (failures.size() < 20) failures.push_back(std::move(what));
  }
};

inline std::string cycle_string(const Cycle& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

// ---------------------------------------------------------------------------
// Table reproduction

struct TableRowCheck {
  Family family;
  std::int64_t row;
  Cycle expected;
  Cycle computed;
  bool matched = false;
};

struct TableReport {
  std::vector<TableRowCheck> table_rows;    // the 15 T/O/I rows
  std::vector<TableRowCheck> pattern_rows;  // cyclic and dihedral b=2 patterns
  std::size_t table_matched = 0;
  std::size_t pattern_matched = 0;
  bool passed() const { return table_matched == table_rows.size() && pattern_matched == pattern_rows.size(); }
};

inline TableReport verify_tables(std::int64_t max_pattern_length = 20) {
  TableReport rep;
  auto check = [](Family f, std::int64_t row) {
    const auto entry = b2_member(f, row);
    TableRowCheck r{f, row, expected_fundamental_cycle_b2(f, row).cycle, laufer_fundamental_cycle(entry.graph), false};
    r.matched = r.expected == r.computed;
    return r;
  };
  for (Family f : {Family::Tetrahedral, Family::Octahedral, Family::Icosahedral})
    for (auto residue : table_residues(f)) {
      rep.table_rows.push_back(check(f, residue));
      rep.table_matched += rep.table_rows.back().matched;
    }
  for (Family f : {Family::Cyclic, Family::Dihedral})
    for (std::int64_t len = 1; len <= max_pattern_length; ++len) {
      rep.pattern_rows.push_back(check(f, len));
      rep.pattern_matched += rep.pattern_rows.back().matched;
    }
  return rep;
}

// ---------------------------------------------------------------------------
// C_f <= 6E

struct SixEEntry {
  std::string label;
  Family family;
  std::int64_t residue;
  std::int64_t max_coefficient;
  std::size_t vertices;
  std::size_t additions;
  std::int64_t cycle_sum;
};

struct SixESweepReport {
  std::vector<SixEEntry> entries;
  std::int64_t global_max = 0;
  std::vector<std::string> attaining;
  std::size_t violations = 0;
};

inline SixESweepReport sweep_6e(const SweepRange& range, unsigned jobs) {
  const auto catalog = enumerate_catalog(range);
  SixESweepReport rep;
  rep.entries = parallel_map(catalog.size(), jobs, [&](std::size_t i) {
    const auto& e = catalog[i];
    const auto run = laufer_run(e.graph);
    return SixEEntry{e.label(), e.family, e.residue, run.cycle.max(), e.graph.size(), run.additions, run.cycle.sum()};
  });
  for (const auto& e : rep.entries) rep.global_max = std::max(rep.global_max, e.max_coefficient);
  for (const auto& e : rep.entries) {
    if (e.max_coefficient > 6) ++rep.violations;
    if (e.max_coefficient == rep.global_max) rep.attaining.push_back(e.label);
  }
  return rep;
}

inline CheckResult check_6e(const SweepRange& range, unsigned jobs) {
  CheckResult res{"C_f <= 6E over the catalog sweep", true, {}, {}};
  const auto rep = sweep_6e(range, jobs);
  for (const auto& e : rep.entries) {
    if (e.max_coefficient > 6) res.fail(e.label + " has coefficient " + std::to_string(e.max_coefficient));
    if (e.additions + 1 != static_cast<std::size_t>(e.cycle_sum) ||
        e.cycle_sum > 6 * static_cast<std::int64_t>(e.vertices))
      res.fail(e.label + " Laufer iteration count out of bounds");
  }
  if (rep.global_max != 6) res.fail("global maximum is " + std::to_string(rep.global_max) + ", expected 6");
  bool icosa_r1 = false;
  for (const auto& e : rep.entries) {
    if (e.max_coefficient != rep.global_max) continue;
    if (e.family == Family::Icosahedral && e.residue == 1) icosa_r1 = true;
    else res.fail(e.label + " attains the maximum outside the icosahedral residue-1 row");
  }
  if (!icosa_r1) res.fail("no icosahedral residue-1 graph attains the maximum");
  res.summary = std::to_string(rep.entries.size()) + " graphs, global max " + std::to_string(rep.global_max) +
                ", attained by " + std::to_string(rep.attaining.size()) + " graph(s)";
  if (!rep.attaining.empty()) res.summary += " [" + rep.attaining.front() + (rep.attaining.size() > 1 ? ", ..." : "") + "]";
  return res;
}

// ---------------------------------------------------------------------------
// Random graphs

/// Random tree on 1..max_vertices vertices with weights in [min_weight, -2],
/// resampled until negative definite.
inline ResolutionGraph random_negative_definite_tree(std::mt19937_64& rng, std::size_t max_vertices = 7,
                                                     std::int64_t min_weight = -5) {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_vertices);
  std::uniform_int_distribution<std::int64_t> weight_dist(min_weight, -2);
  for (;;) {
    const std::size_t n = size_dist(rng);
    std::vector<std::int64_t> weights(n);
    for (auto& w : weights) w = weight_dist(rng);
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) {
      std::uniform_int_distribution<std::size_t> parent(0, v - 1);
      edges.push_back({parent(rng), v, 1});
    }
    ResolutionGraph g(std::move(weights), std::move(edges), true);
    if (graph_is_negative_definite(g)) return g;
  }
}

// ---------------------------------------------------------------------------
// Fundamental-cycle properties

inline CheckResult check_oracle_equivalence(const SweepRange& range, std::uint64_t seed, std::size_t random_trees,
                                            std::int64_t bound, unsigned jobs) {
  CheckResult res{"Laufer agrees with the brute-force minimum", true, {}, {}};
  const auto catalog = small_catalog(range, 8);
  std::mt19937_64 rng(seed);
  std::vector<ResolutionGraph> graphs;
  std::vector<std::string> labels;
  for (const auto& e : catalog) {
    graphs.push_back(e.graph);
    labels.push_back(e.label());
  }
  for (std::size_t k = 0; k < random_trees; ++k) {
    graphs.push_back(random_negative_definite_tree(rng));
    labels.push_back("random tree #" + std::to_string(k));
  }
  const auto agree = parallel_map(graphs.size(), jobs, [&](std::size_t i) {
    const auto laufer = laufer_fundamental_cycle(graphs[i]);
    const auto brute = brute_force_fundamental_cycle(graphs[i], bound);
    return laufer == brute && is_antinef(graphs[i], laufer) &&
           std::all_of(laufer.coefficients().begin(), laufer.coefficients().end(), [](auto c) { return c >= 1; });
  });
  for (std::size_t i = 0; i < graphs.size(); ++i)
    if (!agree[i]) res.fail(labels[i]);
  res.summary = std::to_string(catalog.size()) + " catalog graphs with <= 8 vertices and " +
                std::to_string(random_trees) + " random trees, bound " + std::to_string(bound);
  return res;
}

/// B is A with some weights lowered, so A_ij >= B_ij entrywise.
inline CheckResult check_monotonicity_pairs(const SweepRange& range, std::uint64_t seed, std::size_t pairs) {
  CheckResult res{"fundamental cycle is monotone in the intersection matrix", true, {}, {}};
  const auto catalog = small_catalog(range, 40);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, catalog.size() - 1);
  std::uniform_int_distribution<std::int64_t> drop(1, 3);
  std::bernoulli_distribution lower(0.5);
  std::size_t strict = 0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto& a = catalog[pick(rng)].graph;
    std::vector<std::int64_t> w(a.weights().begin(), a.weights().end());
    bool changed = false;
    for (auto& x : w)
      if (lower(rng)) x -= drop(rng), changed = true;
    if (!changed) w[0] -= 1;
    const auto b = a.with_weights(std::move(w));
    if (!check_monotonicity(a, b)) res.fail(catalog[k % catalog.size()].label() + " pair #" + std::to_string(k));
    if (laufer_fundamental_cycle(a) != laufer_fundamental_cycle(b)) ++strict;
  }
  res.summary = std::to_string(pairs) + " comparable pairs, " + std::to_string(res.failures.size()) +
                " violations, " + std::to_string(strict) + " with a strict change";
  return res;
}

inline CheckResult check_tiebreak_invariance(const SweepRange& range, std::uint64_t seed, std::size_t policies,
                                             unsigned jobs) {
  CheckResult res{"Laufer output is independent of start and tie-break", true, {}, {}};
  const auto catalog = small_catalog(range, 8);
  const auto ok = parallel_map(catalog.size(), jobs, [&](std::size_t i) {
    const auto& g = catalog[i].graph;
    const auto reference = laufer_fundamental_cycle(g, lowest_index_policy());
    if (laufer_fundamental_cycle(g, highest_index_policy()) != reference) return false;
    for (std::size_t k = 0; k < policies; ++k)
      if (laufer_fundamental_cycle(g, random_policy(seed + 1000003 * i + k)) != reference) return false;
    return true;
  });
  for (std::size_t i = 0; i < catalog.size(); ++i)
    if (!ok[i]) res.fail(catalog[i].label());
  res.summary = std::to_string(catalog.size()) + " graphs x (lowest, highest, " + std::to_string(policies) +
                " random) policies";
  return res;
}

// ---------------------------------------------------------------------------
// Continued fractions

inline CheckResult check_hj_roundtrip(std::int64_t max_n) {
  CheckResult res{"Hirzebruch-Jung expansion round-trips", true, {}, {}};
  std::size_t pairs = 0;
  for (std::int64_t n = 2; n <= max_n; ++n)
    for (std::int64_t q = 1; q < n; ++q) {
      if (std::gcd(n, q) != 1) continue;
      ++pairs;
      const auto hj = hj_expand(n, q);
      const bool terms_ok = std::all_of(hj.terms.begin(), hj.terms.end(), [](auto b) { return b >= 2; }) &&
                            static_cast<std::int64_t>(hj.terms.size()) <= n - 1;
      if (!terms_ok || hj_evaluate(hj.terms) != Rational(n, q))
        res.fail(std::to_string(n) + "/" + std::to_string(q));
    }
  res.summary = std::to_string(pairs) + " coprime pairs with n <= " + std::to_string(max_n);
  return res;
}

// ---------------------------------------------------------------------------
// Discrepancies and the surface bound

inline bool all_minus_two(const ResolutionGraph& g) {
  return std::all_of(g.weights().begin(), g.weights().end(), [](auto w) { return w == -2; });
}

inline CheckResult check_discrepancy_sanity(const SweepRange& range, unsigned jobs) {
  CheckResult res{"log discrepancies of catalog germs", true, {}, {}};
  const auto catalog = enumerate_catalog(range);
  const auto verdicts = parallel_map(catalog.size(), jobs, [&](std::size_t i) -> std::string {
    const auto& g = catalog[i].graph;
    GermAnalyzer germ(g);
    const auto r = germ.verify_surface_bound({});
    const bool du_val = all_minus_two(g);
    for (const auto& a : r.log_discrepancies) {
      if (du_val && a != Rational(1)) return "Du Val germ with a_i = " + a.str();
      if (a.sign() <= 0 || a > Rational(1)) return "a_i = " + a.str() + " outside (0,1]";
    }
    if (!r.defining_system_ok) return "defining system does not vanish";
    if (!r.adjunction_ok) return "adjunction identity fails";
    return {};
  });
  std::size_t du_val = 0;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    du_val += all_minus_two(catalog[i].graph);
    if (!verdicts[i].empty()) res.fail(catalog[i].label() + ": " + verdicts[i]);
  }
  res.summary = std::to_string(catalog.size()) + " germs (" + std::to_string(du_val) + " Du Val)";
  return res;
}

struct SampledBoundary {
  BoundaryData boundary;
  std::vector<Rational> pullback;  // exceptional_log_pullback(boundary)
};

/// Seeded boundary with coefficients from {0, 1/4, 1/2, 3/4, a_j} (a_j a log
/// discrepancy of the bare germ) and incidences in {1, 2} at one or two
/// random curves. Coefficients are halved until the pair is klt over z; the
/// pullback is affine in the coefficients, so halving needs no new solve.
inline SampledBoundary random_klt_boundary(const GermAnalyzer& germ, const std::vector<Rational>& bare_pullback,
                                           std::mt19937_64& rng) {
  const std::size_t n = germ.model_graph().size();
  std::uniform_int_distribution<int> curve_count(1, 3);
  std::uniform_int_distribution<int> choice(0, 4);
  std::uniform_int_distribution<std::size_t> vertex(0, n - 1);
  std::uniform_int_distribution<int> touches(1, 2);
  std::uniform_int_distribution<std::int64_t> mult(1, 2);
  SampledBoundary out;
  auto& b = out.boundary;
  const int k = curve_count(rng);
  for (int c = 0; c < k; ++c) {
    BoundaryCurve curve;
    switch (choice(rng)) {
      case 0: curve.coefficient = 0; break;
      case 1: curve.coefficient = Rational(1, 4); break;
      case 2: curve.coefficient = Rational(1, 2); break;
      case 3: curve.coefficient = Rational(3, 4); break;
      default: curve.coefficient = std::min(Rational(1), Rational(1) - bare_pullback[vertex(rng)]); break;
    }
    curve.incidences.assign(n, 0);
    const int t = touches(rng);
    for (int j = 0; j < t; ++j) curve.incidences[vertex(rng)] = mult(rng);
    b.curves.push_back(std::move(curve));
  }
  out.pullback = germ.exceptional_log_pullback(b);
  const Rational half(1, 2);
  for (;;) {
    const auto mld = germ.mld_from_pullback(b, out.pullback);
    if (mld && mld->sign() > 0) return out;
    b = b.scaled(half);
    for (std::size_t i = 0; i < n; ++i) out.pullback[i] = half * (out.pullback[i] + bare_pullback[i]);
  }
}

struct SurfaceBoundTally {
  std::size_t germs = 0;
  std::size_t flag4_checked = 0;
  Rational min_ratio;  // smallest lct / epsilon^2 seen
  std::string failure;
};

inline CheckResult check_surface_bound(const SweepRange& range, std::uint64_t seed, std::size_t boundaries,
                                       unsigned jobs) {
  CheckResult res{"lct of the maximal ideal >= mld^2/24", true, {}, {}};
  const auto catalog = enumerate_catalog(range);
  const auto tallies = parallel_map(catalog.size(), jobs, [&](std::size_t i) {
    SurfaceBoundTally t;
    const auto& entry = catalog[i];
    GermAnalyzer germ(entry.graph);
    const bool six_e = germ.fundamental_cycle().max() <= 6;
    std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ull * (i + 1)));
    const std::vector<Rational> bare = germ.exceptional_log_pullback({});
    bool first = true;
    for (std::size_t k = 0; k <= boundaries; ++k) {
      auto sample = (k == 0) ? SampledBoundary{{}, bare} : random_klt_boundary(germ, bare, rng);
      const auto r = germ.report(sample.boundary, std::move(sample.pullback));
      ++t.germs;
      const Rational ratio = *r.lct_maximal_ideal / (r.epsilon * r.epsilon);
      if (first || ratio < t.min_ratio) t.min_ratio = ratio;
      first = false;
      if (!r.epsilon_sq_over_24_ok && t.failure.empty())
        t.failure = entry.label() + " boundary #" + std::to_string(k) + ": lct " + r.lct_maximal_ideal->str() +
                    " < " + r.required.str();
      if (six_e) {
        ++t.flag4_checked;
        if (!r.epsilon_sq_over_4_ok && t.failure.empty())
          t.failure = entry.label() + " boundary #" + std::to_string(k) + ": e_i + eps^2/4 > 1";
      }
      if ((!r.defining_system_ok || !r.adjunction_ok) && t.failure.empty())
        t.failure = entry.label() + " boundary #" + std::to_string(k) + ": pullback recheck failed";
    }
    return t;
  });
  std::size_t germs = 0, flag4 = 0;
  Rational min_ratio;
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    germs += tallies[i].germs;
    flag4 += tallies[i].flag4_checked;
    if (i == 0 || tallies[i].min_ratio < min_ratio) min_ratio = tallies[i].min_ratio;
    if (!tallies[i].failure.empty()) res.fail(tallies[i].failure);
  }
  res.summary = std::to_string(germs) + " germs on " + std::to_string(catalog.size()) +
                " graphs; min lct/eps^2 = " + min_ratio.str() + " (bound 1/24)";
  return res;
}

// ---------------------------------------------------------------------------
// Plane example

inline CheckResult check_example18(std::int64_t max_m) {
  CheckResult res{"weighted blowup example: mld 1/m, non-lc beyond 1/m^2", true, {}, {}};
  for (std::int64_t m = 1; m <= max_m; ++m) {
    const auto r = example_sharpness_check(m);
    if (!r.order_bound_ok)
      res.fail("m=" + std::to_string(m) + ": mld " + (r.mld ? r.mld->str() : "NotLC") + ", a_E " + r.a_E.str() +
               ", bound " + r.non_lc_bound.str());
  }
  res.summary = "m = 1.." + std::to_string(max_m);
  return res;
}

}  // namespace surfsing::sweeps
