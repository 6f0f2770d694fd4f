#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "surfsing/catalog.hpp"
#include "surfsing/error.hpp"
#include "surfsing/fundamental_cycle.hpp"
#include "surfsing/io.hpp"
#include "surfsing/log_discrepancy.hpp"
#include "surfsing/monomial.hpp"
#include "surfsing/sweeps.hpp"

namespace surfsing::cli {

using io::ordered_json;

enum class Format { Human, Json };

struct RunConfig {
  Format format = Format::Human;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_input_error = 2;

/// Input problem that has already been phrased for the user.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void render_human(std::ostream& out, const ordered_json& value, int indent);

inline std::string scalar_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline bool is_flat_array(const ordered_json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (x.is_structured()) return false;
  return true;
}

inline std::string flat_text(const ordered_json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
  return s + ")";
}

inline bool is_flat_object(const ordered_json& v) {
  if (!v.is_object()) return false;
  for (const auto& [k, x] : v.items())
    if (x.is_object() || (x.is_array() && !is_flat_array(x))) return false;
  return true;
}

inline void render_human(std::ostream& out, const ordered_json& value, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, v] : value.items()) {
    if (!v.is_structured() || is_flat_array(v)) {
      out << pad << key << ": " << flat_text(v) << '\n';
    } else if (v.is_array()) {
      out << pad << key << ":\n";
      for (const auto& item : v) {
        if (is_flat_object(item)) {
          out << pad << "  -";
          for (const auto& [k, x] : item.items()) out << ' ' << k << '=' << flat_text(x);
          out << '\n';
        } else if (item.is_object()) {
          out << pad << "  -\n";
          render_human(out, item, indent + 4);
        } else {
          out << pad << "  - " << flat_text(item) << '\n';
        }
      }
    } else {
      out << pad << key << ":\n";
      render_human(out, v, indent + 2);
    }
  }
}

inline void emit(std::ostream& out, const RunConfig& cfg, const ordered_json& report) {
  if (cfg.format == Format::Json) out << report.dump(2) << '\n';
  else render_human(out, report, 0);
}

inline Rational parse_rational_flag(const std::string& flag, const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    throw InputError(flag + ": '" + text + "' is not a rational p/q (" + e.what() + ")");
  }
}

/// "a,b;a,b;..." -> exponent list.
inline std::vector<Lattice2> parse_exponents(const std::string& text) {
  std::vector<Lattice2> out;
  std::stringstream pairs(text);
  std::string item;
  while (std::getline(pairs, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw InputError("--exponents: '" + item + "' is not of the form a,b");
    try {
      std::size_t used_a = 0, used_b = 0;
      const std::string sa = item.substr(0, comma), sb = item.substr(comma + 1);
      const auto a = std::stoll(sa, &used_a), b = std::stoll(sb, &used_b);
      if (used_a != sa.size() || used_b != sb.size()) throw std::invalid_argument("trailing characters");
      out.push_back({a, b});
    } catch (const std::logic_error&) {
      throw InputError("--exponents: '" + item + "' is not of the form a,b");
    }
  }
  if (out.empty()) throw InputError("--exponents: no exponent pairs given");
  return out;
}

inline ordered_json exponents_json(const std::vector<Lattice2>& es) {
  ordered_json out = ordered_json::array();
  for (const auto& e : es) out.push_back(ordered_json::array({e.x, e.y}));
  return out;
}

/// Structural diagnostics of a loaded graph, phrased as file:line: Kind: message.
inline void require_valid(const io::LoadedGraph& loaded) {
  const auto diagnostics = validate(loaded.graph);
  if (diagnostics.empty()) return;
  std::string msg;
  for (const auto& d : diagnostics) {
    const std::size_t line = d.vertex ? loaded.vertex_lines[*d.vertex]
                             : d.kind == DiagnosticKind::NotConnected ? loaded.edges_line
                                                                      : loaded.root_line;
    if (!msg.empty()) msg += '\n';
    msg += loaded.source + ":" + std::to_string(line) + ": " + std::string(to_string(d.kind)) + ": " + d.message;
  }
  throw InputError(msg);
}

inline io::LoadedGerm load_germ_checked(const std::string& path) {
  auto germ = io::load_germ(path);
  if (!germ.graph.graph.empty()) require_valid(germ.graph);
  if (!germ.graph.graph.empty() && !germ.graph.graph.is_minimal_resolution())
    throw InputError(path + ":" + std::to_string(germ.graph.root_line) +
                     ": NotMinimalResolution: germ files describe the minimal resolution");
  return germ;
}

inline ordered_json check_json(const sweeps::CheckResult& r) {
  ordered_json out;
  out["check"] = r.name;
  out["passed"] = r.passed;
  out["summary"] = r.summary;
  out["failures"] = r.failures;
  return out;
}

inline TieBreakPolicy policy_from(const std::string& name, std::uint64_t seed) {
  if (name == "lowest") return lowest_index_policy();
  if (name == "highest") return highest_index_policy();
  if (name == "random") return random_policy(seed);
  throw InputError("--policy: expected lowest, highest or random, got '" + name + "'");
}

}  // namespace detail

/// Parses argv and runs one subcommand. Exit codes: 0 success, 1 a verification
/// failed, 2 malformed input.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface singularity toolkit: fundamental cycles, log discrepancies, and bound checks"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.jobs = sweeps::default_jobs();
  std::string format = "human";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Seed for randomized checks");

  std::function<int()> action;

  // catalog
  auto* cat = app.add_subcommand("catalog", "Minimal resolution graph of a quotient singularity")->fallthrough();
  std::string family_name;
  std::optional<std::int64_t> cat_n, cat_q, cat_m;
  cat->add_option("family", family_name, "cyclic|dihedral|tetrahedral|octahedral|icosahedral")->required();
  cat->add_option("--n", cat_n, "Group parameter n (cyclic, dihedral)");
  cat->add_option("--q", cat_q, "Group parameter q (cyclic, dihedral)");
  cat->add_option("--m", cat_m, "Group parameter m (tetrahedral, octahedral, icosahedral)");
  cat->callback([&] {
    action = [&] {
      const auto family = family_from_string(family_name);
      if (!family) throw InputError("catalog: unknown family '" + family_name + "'");
      CatalogEntry entry = [&] {
        if (*family == Family::Cyclic || *family == Family::Dihedral) {
          if (!cat_n || !cat_q || cat_m) throw InputError("catalog " + family_name + " takes --n and --q");
          return *family == Family::Cyclic ? cyclic_entry(*cat_n, *cat_q) : dihedral_graph(*cat_n, *cat_q);
        }
        if (!cat_m || cat_n || cat_q) throw InputError("catalog " + family_name + " takes --m");
        return polyhedral_graph(*family, *cat_m);
      }();
      ordered_json r;
      r["family"] = to_string(entry.family);
      r["label"] = entry.label();
      r["derived_b"] = entry.derived_b;
      if (entry.residue) r["residue"] = entry.residue;
      if (entry.family == Family::Cyclic) r["hj_expansion"] = hj_expand(*cat_n, *cat_q).terms;
      r["graph"] = io::to_json(entry.graph);
      detail::emit(out, cfg, r);
      return exit_ok;
    };
  });

  // fundcycle
  auto* fc = app.add_subcommand("fundcycle", "Fundamental cycle of a resolution graph file")->fallthrough();
  std::string fc_path, fc_policy = "lowest";
  bool fc_oracle = false;
  std::int64_t fc_bound = 10;
  fc->add_option("graph", fc_path, "Graph JSON file")->required();
  fc->add_flag("--oracle", fc_oracle, "Cross-check against the brute-force minimum");
  fc->add_option("--bound", fc_bound, "Coefficient bound for the brute-force search");
  fc->add_option("--policy", fc_policy, "Tie-break: lowest, highest or random");
  fc->callback([&] {
    action = [&] {
      const auto loaded = io::load_graph(fc_path);
      detail::require_valid(loaded);
      const auto run = laufer_run(loaded.graph, detail::policy_from(fc_policy, cfg.seed));
      ordered_json r;
      r["graph"] = fc_path;
      r["fundamental_cycle"] = io::to_json(run.cycle);
      r["additions"] = run.additions;
      r["max_coefficient"] = run.cycle.max();
      r["at_most_6E"] = run.cycle.max() <= 6;
      int code = exit_ok;
      if (fc_oracle) {
        const auto brute = brute_force_fundamental_cycle(loaded.graph, fc_bound);
        r["oracle_cycle"] = io::to_json(brute);
        r["oracle_agrees"] = brute == run.cycle;
        if (brute != run.cycle) code = exit_verification_failed;
      }
      detail::emit(out, cfg, r);
      return code;
    };
  });

  // sweep-6e
  auto* s6 = app.add_subcommand("sweep-6e", "Largest fundamental-cycle coefficient over the quotient catalog")->fallthrough();
  sweeps::SweepRange s6_range;
  bool s6_details = false;
  s6->add_option("--max-n", s6_range.max_n, "Cyclic and dihedral n bound");
  s6->add_option("--max-b", s6_range.max_b, "Tetrahedral/octahedral/icosahedral b bound");
  s6->add_flag("--details", s6_details, "List every graph");
  s6->callback([&] {
    action = [&] {
      const auto rep = sweeps::sweep_6e(s6_range, cfg.jobs);
      ordered_json r;
      r["max_n"] = s6_range.max_n;
      r["max_b"] = s6_range.max_b;
      r["graphs"] = rep.entries.size();
      r["global_max_coefficient"] = rep.global_max;
      r["attained_by"] = rep.attaining;
      r["violations"] = rep.violations;
      r["passed"] = rep.violations == 0;
      if (s6_details) {
        r["entries"] = ordered_json::array();
        for (const auto& e : rep.entries)
          r["entries"].push_back({{"graph", e.label}, {"vertices", e.vertices}, {"max_coefficient", e.max_coefficient}});
      }
      detail::emit(out, cfg, r);
      return rep.violations == 0 ? exit_ok : exit_verification_failed;
    };
  });

  // verify-tables
  auto* vt = app.add_subcommand("verify-tables", "Recompute the tabulated fundamental cycles for b = 2")->fallthrough();
  std::int64_t vt_len = 20;
  vt->add_option("--pattern-length", vt_len, "Longest cyclic/dihedral chain checked");
  vt->callback([&] {
    action = [&] {
      const auto rep = sweeps::verify_tables(vt_len);
      auto rows = [](const std::vector<sweeps::TableRowCheck>& v, const char* key) {
        ordered_json a = ordered_json::array();
        for (const auto& row : v)
          a.push_back({{"family", to_string(row.family)}, {key, row.row},
                       {"expected", io::to_json(row.expected)}, {"computed", io::to_json(row.computed)},
                       {"matched", row.matched}});
        return a;
      };
      ordered_json r;
      r["table_rows_matched"] = std::to_string(rep.table_matched) + "/" + std::to_string(rep.table_rows.size());
      r["pattern_rows_matched"] = std::to_string(rep.pattern_matched) + "/" + std::to_string(rep.pattern_rows.size());
      r["passed"] = rep.passed();
      r["table_rows"] = rows(rep.table_rows, "residue");
      r["pattern_rows"] = rows(rep.pattern_rows, "length");
      detail::emit(out, cfg, r);
      return rep.passed() ? exit_ok : exit_verification_failed;
    };
  });

  // germ subcommands
  std::string germ_path;
  auto germ_cmd = [&](const char* name, const char* help) {
    auto* sc = app.add_subcommand(name, help)->fallthrough();
    sc->add_option("germ", germ_path, "Germ JSON file")->required();
    return sc;
  };

  auto* dis = germ_cmd("discrepancy", "Log pullback coefficients and log discrepancies of a germ");
  dis->callback([&] {
    action = [&] {
      const auto germ = detail::load_germ_checked(germ_path);
      GermAnalyzer an(germ.graph.graph);
      const auto e = an.exceptional_log_pullback(germ.boundary);
      std::vector<Rational> a;
      for (const auto& x : e) a.push_back(Rational(1) - x);
      ordered_json r;
      r["germ"] = germ_path;
      r["model"] = an.smooth_point() ? "smooth_point_blowup" : "minimal_resolution";
      r["exceptional_pullback_coeffs"] = io::to_json(e);
      r["log_discrepancies"] = io::to_json(a);
      detail::emit(out, cfg, r);
      return exit_ok;
    };
  });

  auto* mld = germ_cmd("mld", "Minimal log discrepancy over the point");
  mld->callback([&] {
    action = [&] {
      const auto germ = detail::load_germ_checked(germ_path);
      ordered_json r;
      r["germ"] = germ_path;
      r["mld"] = io::to_json(GermAnalyzer(germ.graph.graph).mld_over_point(germ.boundary));
      detail::emit(out, cfg, r);
      return exit_ok;
    };
  });

  auto* lct = germ_cmd("lct-max-ideal", "Log canonical threshold of the maximal ideal");
  lct->callback([&] {
    action = [&] {
      const auto germ = detail::load_germ_checked(germ_path);
      ordered_json r;
      r["germ"] = germ_path;
      r["lct_maximal_ideal"] = GermAnalyzer(germ.graph.graph).lct_maximal_ideal(germ.boundary).str();
      detail::emit(out, cfg, r);
      return exit_ok;
    };
  });

  auto* csb = app.add_subcommand("check-surface-bound", "Check lct(m_z) >= mld^2/24 on a germ or over a sweep")->fallthrough();
  std::string csb_path;
  bool csb_sweep = false;
  sweeps::SweepRange csb_range;
  std::size_t csb_boundaries = 50;
  csb->add_option("germ", csb_path, "Germ JSON file");
  csb->add_flag("--sweep", csb_sweep, "Sweep the quotient catalog with random klt boundaries");
  csb->add_option("--max-n", csb_range.max_n, "Cyclic and dihedral n bound");
  csb->add_option("--max-b", csb_range.max_b, "Tetrahedral/octahedral/icosahedral b bound");
  csb->add_option("--boundaries", csb_boundaries, "Random boundaries per germ");
  csb->callback([&] {
    action = [&] {
      if (csb_sweep == !csb_path.empty())
        throw InputError("check-surface-bound takes either a germ file or --sweep");
      if (csb_sweep) {
        const auto res = sweeps::check_surface_bound(csb_range, cfg.seed, csb_boundaries, cfg.jobs);
        detail::emit(out, cfg, detail::check_json(res));
        return res.passed ? exit_ok : exit_verification_failed;
      }
      const auto germ = detail::load_germ_checked(csb_path);
      const auto rep = GermAnalyzer(germ.graph.graph).verify_surface_bound(germ.boundary);
      const bool passed = rep.epsilon_sq_over_24_ok;
      ordered_json r;
      r["germ"] = csb_path;
      r["epsilon"] = rep.epsilon.str();
      r["lct"] = io::to_json(rep.lct_maximal_ideal);
      r["required"] = rep.required.str();
      r["passed"] = passed;
      r["details"] = io::to_json(rep);
      detail::emit(out, cfg, r);
      return passed ? exit_ok : exit_verification_failed;
    };
  });

  auto* mm = app.add_subcommand("monomial-mld", "mld of lambda*(monomial curve) on the plane")->fallthrough();
  std::string mm_lambda, exponents_text;
  mm->add_option("--lambda", mm_lambda, "Coefficient p/q")->required();
  mm->add_option("--exponents", exponents_text, "Exponents \"a,b;a,b;...\"")->required();
  mm->callback([&] {
    action = [&] {
      const auto lambda = detail::parse_rational_flag("--lambda", mm_lambda);
      MonomialBoundary mb(lambda, detail::parse_exponents(exponents_text));
      const auto res = monomial_mld(mb);
      ordered_json r;
      r["lambda"] = lambda.str();
      r["exponents"] = detail::exponents_json(mb.exponents());
      r["mld"] = io::to_json(res.mld);
      if (res.minimizer) r["minimizer"] = ordered_json::array({res.minimizer->x, res.minimizer->y});
      detail::emit(out, cfg, r);
      return exit_ok;
    };
  });

  auto* ml = app.add_subcommand("monomial-lct", "lct of a monomial ideal on the plane")->fallthrough();
  ml->add_option("--exponents", exponents_text, "Exponents \"a,b;a,b;...\"")->required();
  ml->callback([&] {
    action = [&] {
      const auto es = detail::parse_exponents(exponents_text);
      ordered_json r;
      r["exponents"] = detail::exponents_json(MonomialBoundary::normalized(es));
      r["lct"] = monomial_lct(es).str();
      detail::emit(out, cfg, r);
      return exit_ok;
    };
  });

  auto* ex = app.add_subcommand("example18", "Sharpness example with boundary (2m-1)/m^2 (x^m + y^(m+1))")->fallthrough();
  std::optional<std::int64_t> ex_m, ex_max;
  ex->add_option("--m", ex_m, "Single m");
  ex->add_option("--max-m", ex_max, "Check m = 1..max");
  ex->callback([&] {
    action = [&] {
      if (ex_m.has_value() == ex_max.has_value()) throw InputError("example18 takes exactly one of --m, --max-m");
      const std::int64_t lo = ex_m ? *ex_m : 1, hi = ex_m ? *ex_m : *ex_max;
      if (lo < 1 || hi < 1) throw InputError("example18: m must be >= 1");
      ordered_json rows = ordered_json::array();
      bool all_ok = true;
      for (std::int64_t m = lo; m <= hi; ++m) {
        const auto s = example_sharpness_check(m);
        all_ok = all_ok && s.order_bound_ok;
        rows.push_back({{"m", m}, {"lambda", s.lambda.str()}, {"mld", io::to_json(s.mld)}, {"a_E", s.a_E.str()},
                        {"non_lc_bound", s.non_lc_bound.str()}, {"ok", s.order_bound_ok}});
      }
      ordered_json r;
      r["passed"] = all_ok;
      r["rows"] = rows;
      detail::emit(out, cfg, r);
      return all_ok ? exit_ok : exit_verification_failed;
    };
  });

  auto* ps = app.add_subcommand("property-suite", "Seeded property checks on fundamental cycles and discrepancies")->fallthrough();
  sweeps::SweepRange ps_range;
  std::size_t ps_trees = 200, ps_pairs = 500, ps_policies = 50;
  std::int64_t ps_bound = 10, ps_hj = 300;
  ps->add_option("--max-n", ps_range.max_n, "Cyclic and dihedral n bound");
  ps->add_option("--max-b", ps_range.max_b, "Tetrahedral/octahedral/icosahedral b bound");
  ps->add_option("--random-trees", ps_trees, "Random negative definite trees for the oracle check");
  ps->add_option("--bound", ps_bound, "Brute-force coefficient bound");
  ps->add_option("--pairs", ps_pairs, "Monotonicity pairs");
  ps->add_option("--policies", ps_policies, "Random tie-break policies per graph");
  ps->add_option("--hj-max-n", ps_hj, "Continued fraction round-trip bound");
  ps->callback([&] {
    action = [&] {
      std::vector<sweeps::CheckResult> results;
      results.push_back(sweeps::check_oracle_equivalence(ps_range, cfg.seed, ps_trees, ps_bound, cfg.jobs));
      results.push_back(sweeps::check_monotonicity_pairs(ps_range, cfg.seed, ps_pairs));
      results.push_back(sweeps::check_tiebreak_invariance(ps_range, cfg.seed, ps_policies, cfg.jobs));
      results.push_back(sweeps::check_hj_roundtrip(ps_hj));
      results.push_back(sweeps::check_discrepancy_sanity(ps_range, cfg.jobs));
      ordered_json r;
      bool all = true;
      r["checks"] = ordered_json::array();
      for (const auto& c : results) {
        all = all && c.passed;
        r["checks"].push_back(detail::check_json(c));
      }
      r["passed"] = all;
      detail::emit(out, cfg, r);
      return all ? exit_ok : exit_verification_failed;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }
  cfg.format = format == "json" ? Format::Json : Format::Human;

  try {
    return action();
  } catch (const InputError& e) {
    err << e.what() << '\n';
    return exit_input_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == Errc::InternalError ? exit_verification_failed : exit_input_error;
  }
}

}  // namespace surfsing::cli
