#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfsing/error.hpp"
#include "surfsing/fundamental_cycle.hpp"
#include "surfsing/graph.hpp"
#include "surfsing/matrix.hpp"
#include "surfsing/rational.hpp"

namespace surfsing {

/// Strict transform of a boundary curve through the germ: its coefficient and
/// the number of transversal intersection points with each exceptional curve.
struct BoundaryCurve {
  Rational coefficient;
  std::vector<std::int64_t> incidences;
};

/// The caller asserts the configuration is log smooth on the minimal
/// resolution: every incidence is a transversal double point and no three of
/// the curves (exceptional or boundary) pass through one point.
struct BoundaryData {
  std::vector<BoundaryCurve> curves;

  bool empty() const noexcept { return curves.empty(); }

  BoundaryData scaled(const Rational& s) const {
    BoundaryData out = *this;
    for (auto& c : out.curves) c.coefficient *= s;
    return out;
  }
};

/// Empty means the pair is not lc over the point (infimum -infinity).
using LcValue = std::optional<Rational>;

enum class GermModel {
  MinimalResolution,
  /// A smooth point is handled on its blowup: one (-1)-curve met once by each
  /// boundary curve.
  SmoothPointBlowup,
};

struct GermReport {
  GermModel model = GermModel::MinimalResolution;
  std::vector<Rational> exceptional_pullback_coeffs;
  std::vector<Rational> log_discrepancies;
  Cycle fundamental_cycle;
  LcValue mld;
  LcValue lct_maximal_ideal;
  Rational epsilon;
  Rational required;  // epsilon^2 / 24
  bool epsilon_sq_over_24_ok = false;
  bool epsilon_sq_over_4_ok = false;
  bool adjunction_ok = false;
  bool defining_system_ok = false;
};

/// Precomputes everything about a germ that does not depend on the boundary:
/// the working model, its fundamental cycle, and an elimination for the
/// pullback system. Reusable across many boundaries.
///
/// lct_maximal_ideal relies on pi^* m_z = O(-C_f), which holds for rational
/// singularities. Quotient singularities are rational; for other graphs this
/// is the caller's responsibility.
class GermAnalyzer {
 public:
  explicit GermAnalyzer(const ResolutionGraph& graph)
      : smooth_(graph.empty()),
        model_(smooth_ ? ResolutionGraph({-1}, {}, false) : graph) {
    if (!smooth_) {
      if (!graph.is_minimal_resolution())
        throw Error(Errc::InvalidGraph, "discrepancies are computed on a graph flagged minimal_resolution");
      auto diagnostics = validate(graph);
      if (!diagnostics.empty()) {
        std::string msg;
        for (const auto& d : diagnostics) msg += std::string(msg.empty() ? "" : "; ") + d.message;
        throw Error(Errc::InvalidGraph, msg);
      }
    }
    if (model_.is_tree()) tree_.emplace(model_);
    else dense_ = intersection_matrix(model_);
    fundamental_ = laufer_fundamental_cycle(model_);
    for (auto w : model_.weights()) weights_q_.emplace_back(w);
  }

  bool smooth_point() const noexcept { return smooth_; }
  GermModel model() const noexcept { return smooth_ ? GermModel::SmoothPointBlowup : GermModel::MinimalResolution; }
  const ResolutionGraph& model_graph() const noexcept { return model_; }
  const Cycle& fundamental_cycle() const noexcept { return fundamental_; }

  /// Coefficients e_i of sum_i e_i E_i with (K_W + Delta_W + sum_i e_i E_i).E_j = 0.
  std::vector<Rational> exceptional_log_pullback(const BoundaryData& boundary) const {
    check_boundary(boundary);
    const std::size_t n = model_.size();
    std::vector<Rational> rhs(n);
    for (std::size_t j = 0; j < n; ++j) {
      rhs[j] = Rational(2 + model_.weight(j));
      for (const auto& curve : boundary.curves) {
        const std::int64_t inc = incidence(curve, j);
        if (inc != 0) rhs[j] -= curve.coefficient * Rational(inc);
      }
    }
    return tree_ ? tree_->solve(rhs) : solve_linear_system(dense_, rhs);
  }

  LcValue mld_over_point(const BoundaryData& boundary) const {
    return mld_from_pullback(boundary, exceptional_log_pullback(boundary));
  }

  /// mld over the point from already solved pullback coefficients e.
  ///
  /// Higher blowups at double points of an lc log smooth configuration have
  /// log discrepancy p*a_1 + q*a_2 >= min(a_1, a_2), so the minimum over the
  /// curves of the model is the infimum over all divisors centred at z.
  LcValue mld_from_pullback(const BoundaryData& boundary, const std::vector<Rational>& e) const {
    for (const auto& curve : boundary.curves) {
      bool through = smooth_;
      for (auto inc : curve.incidences) through = through || inc > 0;
      if (through && curve.coefficient > Rational(1)) return std::nullopt;
    }
    const Rational one(1);
    const Rational* largest = &e.front();
    for (const auto& ei : e)
      if (ei > *largest) largest = &ei;
    if (*largest > one) return std::nullopt;
    return one - *largest;
  }

  Rational lct_maximal_ideal(const BoundaryData& boundary) const {
    const auto e = exceptional_log_pullback(boundary);
    if (!mld_from_pullback(boundary, e)) throw Error(Errc::NotLCInput, "the germ itself is not lc over the point");
    return lct_from(e);
  }

  GermReport verify_surface_bound(const BoundaryData& boundary) const {
    return report(boundary, exceptional_log_pullback(boundary));
  }

  /// verify_surface_bound for pullback coefficients e already solved for
  /// this boundary; the rechecks below catch an e that does not belong to it.
  GermReport report(const BoundaryData& boundary, std::vector<Rational> e) const {
    check_boundary(boundary);
    if (e.size() != model_.size()) throw Error(Errc::DimensionMismatch, "pullback has wrong length");
    GermReport r;
    r.model = model();
    r.exceptional_pullback_coeffs = std::move(e);
    const Rational one(1);
    for (const auto& ei : r.exceptional_pullback_coeffs) r.log_discrepancies.push_back(one - ei);
    r.fundamental_cycle = fundamental_;
    r.mld = mld_from_pullback(boundary, r.exceptional_pullback_coeffs);
    if (!r.mld || r.mld->sign() <= 0)
      throw Error(Errc::NotKLT, r.mld ? "mld over the point is " + r.mld->str() : "pair is not lc over the point");
    r.epsilon = *r.mld;
    r.lct_maximal_ideal = lct_from(r.exceptional_pullback_coeffs);
    const Rational eps_sq = r.epsilon * r.epsilon;
    r.required = eps_sq / Rational(24);
    r.epsilon_sq_over_24_ok = *r.lct_maximal_ideal >= r.required;
    const Rational cap = one - eps_sq / Rational(4);
    r.epsilon_sq_over_4_ok = std::all_of(r.exceptional_pullback_coeffs.begin(), r.exceptional_pullback_coeffs.end(),
                                         [&](const Rational& ei) { return ei <= cap; });
    r.defining_system_ok = true;
    r.adjunction_ok = true;
    const auto& ec = r.exceptional_pullback_coeffs;
    mpq_class full_dot, tmp;
    for (std::size_t j = 0; j < model_.size(); ++j) {
      // Delta_full . E_j with Delta_full = Delta_W + sum_i e_i E_i.
      full_dot = ec[j].raw() * weights_q_[j].raw();
      for (const auto& [nb, m] : model_.neighbors(j)) {
        if (m == 1) full_dot += ec[nb].raw();
        else full_dot += ec[nb].raw() * m;
      }
      for (const auto& curve : boundary.curves)
        if (const auto inc = incidence(curve, j); inc != 0) full_dot += curve.coefficient.raw() * inc;
      // K_W . E_j = -2 - E_j^2
      tmp = full_dot - 2 - weights_q_[j].raw();
      if (tmp != 0) r.defining_system_ok = false;
      tmp = full_dot - weights_q_[j].raw();
      if (tmp != 2) r.adjunction_ok = false;
    }
    return r;
  }

 private:
  std::int64_t incidence(const BoundaryCurve& curve, std::size_t j) const {
    return smooth_ ? 1 : curve.incidences[j];
  }

  void check_boundary(const BoundaryData& boundary) const {
    if (smooth_ && boundary.curves.size() > 2)
      throw Error(Errc::TooManyBranchesAtSmoothPoint,
                  std::to_string(boundary.curves.size()) + " curves through a smooth point cannot be snc");
    const std::size_t expected = smooth_ ? 0 : model_.size();
    for (std::size_t k = 0; k < boundary.curves.size(); ++k) {
      const auto& c = boundary.curves[k];
      if (c.coefficient.sign() < 0 || c.coefficient > Rational(1))
        throw Error(Errc::InvalidParameters, "boundary curve " + std::to_string(k) + " has coefficient " +
                                                 c.coefficient.str() + " outside [0,1]");
      if (c.incidences.size() != expected)
        throw Error(Errc::DimensionMismatch, "boundary curve " + std::to_string(k) + " lists " +
                                                 std::to_string(c.incidences.size()) + " incidences, expected " +
                                                 std::to_string(expected));
      for (auto inc : c.incidences)
        if (inc < 0) throw Error(Errc::InvalidParameters, "negative incidence on boundary curve " + std::to_string(k));
    }
  }

  Rational lct_from(const std::vector<Rational>& e) const {
    Rational best = (Rational(1) - e[0]) / Rational(fundamental_[0]);
    for (std::size_t i = 1; i < e.size(); ++i) best = std::min(best, (Rational(1) - e[i]) / Rational(fundamental_[i]));
    return best;
  }

  bool smooth_;
  ResolutionGraph model_;
  std::optional<TreeEliminator> tree_;
  RationalMatrix dense_;
  Cycle fundamental_;
  std::vector<Rational> weights_q_;
};

inline std::vector<Rational> exceptional_log_pullback(const ResolutionGraph& graph, const BoundaryData& boundary) {
  return GermAnalyzer(graph).exceptional_log_pullback(boundary);
}

inline LcValue mld_over_point(const ResolutionGraph& graph, const BoundaryData& boundary) {
  return GermAnalyzer(graph).mld_over_point(boundary);
}

inline Rational lct_maximal_ideal(const ResolutionGraph& graph, const BoundaryData& boundary) {
  return GermAnalyzer(graph).lct_maximal_ideal(boundary);
}

inline GermReport verify_surface_bound(const ResolutionGraph& graph, const BoundaryData& boundary) {
  return GermAnalyzer(graph).verify_surface_bound(boundary);
}

}  // namespace surfsing
