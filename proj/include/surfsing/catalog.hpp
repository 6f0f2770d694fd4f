#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surfsing/error.hpp"
#include "surfsing/graph.hpp"
#include "surfsing/hj.hpp"

namespace surfsing {

enum class Family { Cyclic, Dihedral, Tetrahedral, Octahedral, Icosahedral };

constexpr std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Cyclic: return "cyclic";
    case Family::Dihedral: return "dihedral";
    case Family::Tetrahedral: return "tetrahedral";
    case Family::Octahedral: return "octahedral";
    case Family::Icosahedral: return "icosahedral";
  }
  return "unknown";
}

inline std::optional<Family> family_from_string(std::string_view s) {
  for (Family f : {Family::Cyclic, Family::Dihedral, Family::Tetrahedral, Family::Octahedral, Family::Icosahedral})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

struct CatalogParams {
  std::int64_t n = 0;  // Cyclic, Dihedral
  std::int64_t q = 0;  // Cyclic, Dihedral
  std::int64_t m = 0;  // Tetrahedral, Octahedral, Icosahedral
};

struct CatalogEntry {
  Family family;
  CatalogParams params;
  ResolutionGraph graph;
  /// Weight -b of the central (or, for chains, first) curve.
  std::int64_t derived_b = 0;
  /// Table row (residue of m) for T/O/I; 0 otherwise.
  std::int64_t residue = 0;

  std::string label() const {
    switch (family) {
      case Family::Cyclic:
      case Family::Dihedral:
        return std::string(to_string(family)) + "(n=" + std::to_string(params.n) + ",q=" + std::to_string(params.q) + ")";
      default:
        return std::string(to_string(family)) + "(m=" + std::to_string(params.m) + ")";
    }
  }
};

/// Transcribed fundamental cycle of the b = 2 member of a table row.
struct ExpectedCycle {
  Family family;
  std::int64_t row;
  Cycle cycle;
};

namespace detail {

/// One row of the tetrahedral / octahedral / icosahedral tables. The bottom
/// row is listed left to right as drawn, with 0 marking the central -b curve;
/// the single -2 branch curve comes last and meets bottom[branch_at].
struct TableRow {
  std::int64_t residue;
  std::vector<std::int64_t> bottom;
  std::size_t branch_at;
  std::vector<std::int64_t> expected_b2;
};

struct FamilyTable {
  Family family;
  std::int64_t modulus;
  std::vector<TableRow> rows;
};

inline const std::array<FamilyTable, 3>& polyhedral_tables() {
  static const std::array<FamilyTable, 3> tables{{
      {Family::Tetrahedral, 6,
       {
           {1, {-2, -2, 0, -2, -2}, 2, {1, 2, 3, 2, 1, 2}},
           {3, {-2, -2, 0, -3}, 2, {1, 2, 2, 1, 1}},
           {5, {-3, 0, -3}, 1, {1, 2, 1, 1}},
       }},
      {Family::Octahedral, 12,
       {
           {1, {-2, -2, 0, -2, -2, -2}, 2, {2, 3, 4, 3, 2, 1, 2}},
           {5, {-3, 0, -2, -2, -2}, 1, {1, 2, 2, 2, 1, 1}},
           {7, {-2, -2, 0, -4}, 2, {1, 2, 2, 1, 1}},
           {11, {-3, 0, -4}, 1, {1, 2, 1, 1}},
       }},
      {Family::Icosahedral, 30,
       {
           {1, {-2, -2, 0, -2, -2, -2, -2}, 2, {2, 4, 6, 5, 4, 3, 2, 3}},
           {7, {-2, -2, 0, -2, -3}, 2, {1, 2, 3, 2, 1, 2}},
           {11, {-3, 0, -2, -2, -2, -2}, 1, {1, 2, 2, 2, 2, 1, 1}},
           {13, {-2, -2, 0, -3, -2}, 2, {1, 2, 2, 1, 1, 1}},
           {17, {-3, 0, -2, -3}, 1, {1, 2, 2, 1, 1}},
           {19, {-2, -2, 0, -5}, 2, {1, 2, 2, 1, 1}},
           {23, {-3, 0, -3, -2}, 1, {1, 2, 1, 1, 1}},
           {29, {-3, 0, -5}, 1, {1, 2, 1, 1}},
       }},
  }};
  return tables;
}

inline const FamilyTable& table_for(Family f) {
  for (const auto& t : polyhedral_tables())
    if (t.family == f) return t;
  throw Error(Errc::UnknownRow, std::string(to_string(f)) + " has no polyhedral table");
}

inline const TableRow* find_row(const FamilyTable& table, std::int64_t residue) {
  for (const auto& r : table.rows)
    if (r.residue == residue) return &r;
  return nullptr;
}

inline ResolutionGraph row_graph(const TableRow& row, std::int64_t b) {
  std::vector<std::int64_t> weights;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < row.bottom.size(); ++i) {
    weights.push_back(row.bottom[i] == 0 ? -b : row.bottom[i]);
    if (i > 0) edges.push_back({i - 1, i, 1});
  }
  weights.push_back(-2);
  edges.push_back({row.branch_at, weights.size() - 1, 1});
  return ResolutionGraph(std::move(weights), std::move(edges), true);
}

inline CatalogEntry polyhedral_graph(Family family, std::int64_t m) {
  const auto& table = table_for(family);
  if (m < 1) throw Error(Errc::InvalidParameters, std::string(to_string(family)) + " needs m >= 1");
  const TableRow* row = find_row(table, m % table.modulus);
  if (row == nullptr)
    throw Error(Errc::InvalidParameters, std::string(to_string(family)) + ": m=" + std::to_string(m) +
                                             " matches no row (m mod " + std::to_string(table.modulus) + ")");
  const std::int64_t b = (m - row->residue) / table.modulus + 2;
  CatalogParams params;
  params.m = m;
  return {family, params, row_graph(*row, b), b, row->residue};
}

}  // namespace detail

inline CatalogEntry cyclic_entry(std::int64_t n, std::int64_t q) {
  auto graph = cyclic_graph(n, q);
  const std::int64_t b = -graph.weight(0);
  return {Family::Cyclic, {n, q, 0}, std::move(graph), b, 0};
}

/// Center -b, a -2 leaf drawn to its left, the chain -b_1..-b_r to its right
/// and a second -2 leaf as the branch (last vertex), where n/q = [b, b_1..b_r].
inline CatalogEntry dihedral_graph(std::int64_t n, std::int64_t q) {
  if (!(1 < q && q < n) || std::gcd(n, q) != 1)
    throw Error(Errc::InvalidParameters, "dihedral needs 1 < q < n and gcd(n,q) = 1, got n=" + std::to_string(n) +
                                             ", q=" + std::to_string(q));
  const auto hj = hj_expand(n, q);
  std::vector<std::int64_t> weights{-2, -hj.terms[0]};
  std::vector<Edge> edges{{0, 1, 1}};
  for (std::size_t i = 1; i < hj.terms.size(); ++i) {
    weights.push_back(-hj.terms[i]);
    edges.push_back({weights.size() - 2, weights.size() - 1, 1});
  }
  weights.push_back(-2);
  edges.push_back({1, weights.size() - 1, 1});
  return {Family::Dihedral, {n, q, 0}, ResolutionGraph(std::move(weights), std::move(edges), true), hj.terms[0], 0};
}

inline CatalogEntry tetrahedral_graph(std::int64_t m) { return detail::polyhedral_graph(Family::Tetrahedral, m); }
inline CatalogEntry octahedral_graph(std::int64_t m) { return detail::polyhedral_graph(Family::Octahedral, m); }
inline CatalogEntry icosahedral_graph(std::int64_t m) { return detail::polyhedral_graph(Family::Icosahedral, m); }

inline CatalogEntry polyhedral_graph(Family family, std::int64_t m) { return detail::polyhedral_graph(family, m); }

/// Modulus of the residue classes for T/O/I (6, 12, 30).
inline std::int64_t family_modulus(Family family) { return detail::table_for(family).modulus; }

/// Residues with a table row, in table order.
inline std::vector<std::int64_t> table_residues(Family family) {
  std::vector<std::int64_t> out;
  for (const auto& r : detail::table_for(family).rows) out.push_back(r.residue);
  return out;
}

/// For T/O/I, `row` is the residue of m. For Cyclic, `row` is the number of
/// curves in the chain; for Dihedral it is the length r of the tail chain
/// b_1..b_r (the graph then has r + 3 curves).
inline ExpectedCycle expected_fundamental_cycle_b2(Family family, std::int64_t row) {
  switch (family) {
    case Family::Cyclic: {
      if (row < 1) throw Error(Errc::UnknownRow, "cyclic chain length must be >= 1");
      return {family, row, Cycle(std::vector<std::int64_t>(static_cast<std::size_t>(row), 1))};
    }
    case Family::Dihedral: {
      if (row < 1) throw Error(Errc::UnknownRow, "dihedral tail length must be >= 1");
      std::vector<std::int64_t> c{1, 2};
      for (std::int64_t i = 1; i < row; ++i) c.push_back(2);
      c.push_back(1);
      c.push_back(1);
      return {family, row, Cycle(std::move(c))};
    }
    default: {
      const auto* r = detail::find_row(detail::table_for(family), row);
      if (r == nullptr)
        throw Error(Errc::UnknownRow, std::string(to_string(family)) + " has no row " + std::to_string(row));
      return {family, row, Cycle(r->expected_b2)};
    }
  }
}

/// The b = 2 member of a row in the same indexing as above.
inline CatalogEntry b2_member(Family family, std::int64_t row) {
  switch (family) {
    case Family::Cyclic: return cyclic_entry(row + 1, row);
    case Family::Dihedral: return dihedral_graph(row + 2, row + 1);
    default: return polyhedral_graph(family, row);
  }
}

}  // namespace surfsing
