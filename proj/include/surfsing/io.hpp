#pragma once

#include <cstddef>
#include <fstream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "surfsing/error.hpp"
#include "surfsing/graph.hpp"
#include "surfsing/log_discrepancy.hpp"
#include "surfsing/rational.hpp"

namespace surfsing::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// JSON document plus the source line at which every object and array starts,
/// keyed by JSON pointer ("" for the root, "/vertices/2", ...).
struct LocatedDocument {
  std::string source;
  json root;
  std::map<std::string, std::size_t> lines;

  std::size_t line_of(const std::string& pointer) const {
    auto it = lines.find(pointer);
    return it == lines.end() ? 1 : it->second;
  }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    throw Error(Errc::ParseError, source + ":" + std::to_string(line_of(pointer)) + ": " + message);
  }
};

namespace detail {

struct LineCountingIterator {
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* p = nullptr;
  std::size_t* line = nullptr;

  reference operator*() const { return *p; }
  LineCountingIterator& operator++() {
    if (*p == '\n') ++*line;
    ++p;
    return *this;
  }
  LineCountingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  friend bool operator==(const LineCountingIterator& a, const LineCountingIterator& b) { return a.p == b.p; }
};

class LocatingSax : public nlohmann::json_sax<json> {
 public:
  LocatingSax(LocatedDocument& doc, const std::size_t& line) : doc_(doc), line_(line) {}

  bool null() override { return value(nullptr); }
  bool boolean(bool v) override { return value(v); }
  bool number_integer(number_integer_t v) override { return value(v); }
  bool number_unsigned(number_unsigned_t v) override { return value(v); }
  bool number_float(number_float_t v, const string_t&) override { return value(v); }
  bool string(string_t& v) override { return value(v); }
  bool binary(binary_t& v) override { return value(json::binary_t(v)); }

  bool start_object(std::size_t) override { return open(json::object()); }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(json::array()); }
  bool end_array() override { return close(); }

  bool key(string_t& k) override {
    key_ = k;
    return true;
  }

  bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
    error_ = ex.what();
    return false;
  }

  const std::string& error() const { return error_; }

 private:
  struct Frame {
    json* node;
    std::string pointer;
  };

  std::pair<json*, std::string> place(json v) {
    if (stack_.empty()) {
      doc_.root = std::move(v);
      return {&doc_.root, ""};
    }
    Frame& top = stack_.back();
    if (top.node->is_array()) {
      top.node->push_back(std::move(v));
      return {&top.node->back(), top.pointer + "/" + std::to_string(top.node->size() - 1)};
    }
    if (top.node->contains(key_)) duplicate_ = top.pointer + "/" + key_;
    (*top.node)[key_] = std::move(v);
    return {&(*top.node)[key_], top.pointer + "/" + key_};
  }

  bool value(json v) {
    auto [node, pointer] = place(std::move(v));
    doc_.lines.emplace(pointer, line_);
    return check_duplicate();
  }

  bool open(json v) {
    auto [node, pointer] = place(std::move(v));
    doc_.lines.emplace(pointer, line_);
    stack_.push_back({node, pointer});
    return check_duplicate();
  }

  bool close() {
    stack_.pop_back();
    return true;
  }

  bool check_duplicate() {
    if (duplicate_.empty()) return true;
    error_ = "duplicate key " + duplicate_;
    return false;
  }

  LocatedDocument& doc_;
  const std::size_t& line_;
  std::vector<Frame> stack_;
  std::string key_;
  std::string duplicate_;
  std::string error_;
};

}  // namespace detail

inline LocatedDocument parse_located(const std::string& text, const std::string& source = "<input>") {
  LocatedDocument doc;
  doc.source = source;
  std::size_t line = 1;
  detail::LocatingSax sax(doc, line);
  detail::LineCountingIterator first{text.data(), &line};
  detail::LineCountingIterator last{text.data() + text.size(), &line};
  const bool ok = json::sax_parse(first, last, &sax);
  if (!ok) throw Error(Errc::ParseError, source + ":" + std::to_string(line) + ": " + sax.error());
  return doc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// A parsed graph together with the source lines of its parts, so later
/// semantic checks can point back into the file.
struct LoadedGraph {
  ResolutionGraph graph;
  std::string source;
  std::size_t root_line = 1;
  std::size_t edges_line = 1;
  std::vector<std::size_t> vertex_lines;  // indexed by vertex id
};

struct LoadedGerm {
  LoadedGraph graph;
  BoundaryData boundary;
};

namespace detail {

inline void reject_unknown_keys(const LocatedDocument& doc, const json& obj, const std::string& pointer,
                                const std::set<std::string>& allowed) {
  for (const auto& [k, v] : obj.items())
    if (!allowed.contains(k)) doc.fail(pointer, "unknown key '" + k + "'");
}

inline std::int64_t require_integer(const LocatedDocument& doc, const json& obj, const std::string& pointer,
                                    const std::string& key) {
  if (!obj.contains(key)) doc.fail(pointer, "missing key '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) doc.fail(pointer, "'" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

inline LoadedGraph graph_from_document(const LocatedDocument& doc, const std::set<std::string>& root_keys) {
  const json& root = doc.root;
  if (!root.is_object()) doc.fail("", "top level must be an object");
  reject_unknown_keys(doc, root, "", root_keys);

  LoadedGraph out;
  out.source = doc.source;
  out.root_line = doc.line_of("");

  if (!root.contains("minimal_resolution") || !root.at("minimal_resolution").is_boolean())
    doc.fail("", "'minimal_resolution' must be a boolean");
  const bool minimal = root.at("minimal_resolution").get<bool>();

  if (!root.contains("vertices") || !root.at("vertices").is_array()) doc.fail("", "'vertices' must be an array");
  const auto& vertices = root.at("vertices");
  const std::size_t n = vertices.size();
  std::vector<std::int64_t> weights(n, 0);
  std::vector<bool> seen(n, false);
  out.vertex_lines.assign(n, doc.line_of("/vertices"));
  for (std::size_t k = 0; k < n; ++k) {
    const std::string ptr = "/vertices/" + std::to_string(k);
    const auto& v = vertices[k];
    if (!v.is_object()) doc.fail(ptr, "vertex must be an object");
    reject_unknown_keys(doc, v, ptr, {"id", "weight"});
    const auto id = require_integer(doc, v, ptr, "id");
    if (id < 0 || static_cast<std::size_t>(id) >= n) doc.fail(ptr, "vertex id " + std::to_string(id) + " outside 0.." + std::to_string(n - 1));
    if (seen[static_cast<std::size_t>(id)]) doc.fail(ptr, "vertex id " + std::to_string(id) + " repeated");
    seen[static_cast<std::size_t>(id)] = true;
    weights[static_cast<std::size_t>(id)] = require_integer(doc, v, ptr, "weight");
    out.vertex_lines[static_cast<std::size_t>(id)] = doc.line_of(ptr);
  }

  std::vector<Edge> edges;
  out.edges_line = doc.line_of("");
  if (root.contains("edges")) {
    if (!root.at("edges").is_array()) doc.fail("", "'edges' must be an array");
    out.edges_line = doc.line_of("/edges");
    const auto& es = root.at("edges");
    for (std::size_t k = 0; k < es.size(); ++k) {
      const std::string ptr = "/edges/" + std::to_string(k);
      const auto& e = es[k];
      if (!e.is_object()) doc.fail(ptr, "edge must be an object");
      reject_unknown_keys(doc, e, ptr, {"a", "b", "mult"});
      const auto a = require_integer(doc, e, ptr, "a");
      const auto b = require_integer(doc, e, ptr, "b");
      const auto mult = e.contains("mult") ? require_integer(doc, e, ptr, "mult") : 1;
      if (a < 0 || b < 0) doc.fail(ptr, "edge endpoints must be vertex ids");
      edges.push_back({static_cast<std::size_t>(a), static_cast<std::size_t>(b), mult});
    }
  }
  try {
    out.graph = ResolutionGraph(std::move(weights), std::move(edges), minimal);
  } catch (const Error& err) {
    doc.fail("/edges", err.what());
  }
  return out;
}

}  // namespace detail

inline LoadedGraph parse_graph(const std::string& text, const std::string& source = "<input>") {
  return detail::graph_from_document(parse_located(text, source), {"minimal_resolution", "vertices", "edges"});
}

inline LoadedGraph load_graph(const std::string& path) { return parse_graph(read_file(path), path); }

/// Graph document with an optional "boundary" array of
/// {"coefficient": "p/q", "incidences": [...]}; coefficients outside [0,1]
/// are rejected here.
inline LoadedGerm parse_germ(const std::string& text, const std::string& source = "<input>") {
  const auto doc = parse_located(text, source);
  LoadedGerm out{detail::graph_from_document(doc, {"minimal_resolution", "vertices", "edges", "boundary"}), {}};
  const std::size_t n = out.graph.graph.size();
  if (!doc.root.contains("boundary")) return out;
  const auto& curves = doc.root.at("boundary");
  if (!curves.is_array()) doc.fail("", "'boundary' must be an array");
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const std::string ptr = "/boundary/" + std::to_string(k);
    const auto& c = curves[k];
    if (!c.is_object()) doc.fail(ptr, "boundary curve must be an object");
    detail::reject_unknown_keys(doc, c, ptr, {"coefficient", "incidences"});
    if (!c.contains("coefficient")) doc.fail(ptr, "missing key 'coefficient'");
    BoundaryCurve curve;
    const auto& coeff = c.at("coefficient");
    if (coeff.is_string()) {
      try {
        curve.coefficient = Rational::parse(coeff.get<std::string>());
      } catch (const Error& err) {
        doc.fail(ptr, err.what());
      }
    } else if (coeff.is_number_integer()) {
      curve.coefficient = Rational(coeff.get<std::int64_t>());
    } else {
      doc.fail(ptr, "'coefficient' must be a \"p/q\" string");
    }
    if (curve.coefficient.sign() < 0 || curve.coefficient > Rational(1))
      doc.fail(ptr, "boundary coefficient " + curve.coefficient.str() + " outside [0,1]");
    if (!c.contains("incidences") || !c.at("incidences").is_array()) doc.fail(ptr, "'incidences' must be an array");
    const auto& inc = c.at("incidences");
    if (inc.size() != n)
      doc.fail(ptr, "'incidences' has " + std::to_string(inc.size()) + " entries, graph has " + std::to_string(n) + " vertices");
    for (const auto& v : inc) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0) doc.fail(ptr, "incidences must be nonnegative integers");
      curve.incidences.push_back(v.get<std::int64_t>());
    }
    out.boundary.curves.push_back(std::move(curve));
  }
  if (n == 0 && out.boundary.curves.size() > 2)
    doc.fail("/boundary", "TooManyBranchesAtSmoothPoint: at most two snc curves pass through a smooth point");
  return out;
}

inline LoadedGerm load_germ(const std::string& path) { return parse_germ(read_file(path), path); }

inline ordered_json to_json(const ResolutionGraph& graph) {
  ordered_json out;
  out["minimal_resolution"] = graph.is_minimal_resolution();
  out["vertices"] = ordered_json::array();
  for (std::size_t i = 0; i < graph.size(); ++i) out["vertices"].push_back({{"id", i}, {"weight", graph.weight(i)}});
  out["edges"] = ordered_json::array();
  for (const auto& e : graph.edges()) out["edges"].push_back({{"a", e.a}, {"b", e.b}, {"mult", e.mult}});
  return out;
}

inline ordered_json to_json(const Cycle& c) {
  ordered_json out = ordered_json::array();
  for (auto v : c.coefficients()) out.push_back(v);
  return out;
}

inline ordered_json to_json(const std::vector<Rational>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

inline ordered_json to_json(const LcValue& v) { return v ? ordered_json(v->str()) : ordered_json("NotLC"); }

inline ordered_json to_json(const BoundaryData& b) {
  ordered_json out = ordered_json::array();
  for (const auto& c : b.curves) out.push_back({{"coefficient", c.coefficient.str()}, {"incidences", c.incidences}});
  return out;
}

inline ordered_json to_json(const GermReport& r) {
  ordered_json out;
  out["model"] = r.model == GermModel::MinimalResolution ? "minimal_resolution" : "smooth_point_blowup";
  out["exceptional_pullback_coeffs"] = to_json(r.exceptional_pullback_coeffs);
  out["log_discrepancies"] = to_json(r.log_discrepancies);
  out["fundamental_cycle"] = to_json(r.fundamental_cycle);
  out["mld"] = to_json(r.mld);
  out["lct_maximal_ideal"] = to_json(r.lct_maximal_ideal);
  out["epsilon"] = r.epsilon.str();
  out["required"] = r.required.str();
  out["epsilon_sq_over_24_ok"] = r.epsilon_sq_over_24_ok;
  out["epsilon_sq_over_4_ok"] = r.epsilon_sq_over_4_ok;
  out["adjunction_ok"] = r.adjunction_ok;
  out["defining_system_ok"] = r.defining_system_ok;
  return out;
}

}  // namespace surfsing::io
