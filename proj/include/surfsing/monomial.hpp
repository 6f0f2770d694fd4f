#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfsing/error.hpp"
#include "surfsing/log_discrepancy.hpp"
#include "surfsing/rational.hpp"

namespace surfsing {

/// Integer vector in the plane, used both as a monomial exponent (a, b) and
/// as a weight (p1, p2) of a weighted blowup.
struct Lattice2 {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Lattice2&, const Lattice2&) = default;
  friend auto operator<=>(const Lattice2&, const Lattice2&) = default;
};

/// lambda * (curve spanned by the monomials x^a y^b) on the germ (A^2, 0).
class MonomialBoundary {
 public:
  MonomialBoundary(Rational lambda, std::vector<Lattice2> exponents)
      : lambda_(std::move(lambda)), exponents_(normalized(std::move(exponents))) {
    if (lambda_.sign() < 0) throw Error(Errc::InvalidParameters, "lambda must be >= 0");
  }

  const Rational& lambda() const noexcept { return lambda_; }
  const std::vector<Lattice2>& exponents() const noexcept { return exponents_; }

  static std::vector<Lattice2> normalized(std::vector<Lattice2> exponents) {
    if (exponents.empty()) throw Error(Errc::InvalidParameters, "exponent list is empty");
    for (const auto& e : exponents)
      if (e.x < 0 || e.y < 0) throw Error(Errc::InvalidParameters, "exponents must be nonnegative");
    std::sort(exponents.begin(), exponents.end());
    exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());
    return exponents;
  }

 private:
  Rational lambda_;
  std::vector<Lattice2> exponents_;
};

/// min over exponents (a, b) of a*p1 + b*p2.
inline std::int64_t weighted_order(Lattice2 weights, const std::vector<Lattice2>& exponents) {
  if (exponents.empty()) throw Error(Errc::InvalidParameters, "exponent list is empty");
  std::int64_t best = exponents.front().x * weights.x + exponents.front().y * weights.y;
  for (const auto& e : exponents) best = std::min(best, e.x * weights.x + e.y * weights.y);
  return best;
}

inline std::int64_t weighted_order(Lattice2 weights, const MonomialBoundary& mb) {
  if (weights.x < 1 || weights.y < 1) throw Error(Errc::InvalidParameters, "weights must be positive");
  return weighted_order(weights, mb.exponents());
}

/// Log discrepancy p1 + p2 - lambda * ord_p of the weighted blowup with
/// weights p (any nonnegative direction, for the boundary rays too).
inline Rational weighted_log_discrepancy(Lattice2 p, const MonomialBoundary& mb) {
  return Rational(p.x + p.y) - mb.lambda() * Rational(weighted_order(p, mb.exponents()));
}

namespace detail {

inline std::int64_t cross(Lattice2 u, Lattice2 v) { return u.x * v.y - u.y * v.x; }

/// Primitive directions in the closed positive quadrant, sorted from (1,0) to
/// (0,1), across which the minimizing monomial of the weighted order can
/// change. The weighted order is linear on every cone between neighbours.
inline std::vector<Lattice2> breakpoint_rays(const std::vector<Lattice2>& exponents) {
  std::vector<Lattice2> rays{{1, 0}, {0, 1}};
  for (std::size_t i = 0; i < exponents.size(); ++i)
    for (std::size_t j = i + 1; j < exponents.size(); ++j) {
      std::int64_t px = exponents[j].y - exponents[i].y;
      std::int64_t py = exponents[i].x - exponents[j].x;
      if (px < 0 && py < 0) px = -px, py = -py;
      if (px <= 0 || py <= 0) continue;
      const std::int64_t g = std::gcd(px, py);
      rays.push_back({px / g, py / g});
    }
  std::sort(rays.begin(), rays.end(), [](Lattice2 u, Lattice2 v) { return cross(u, v) > 0; });
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline Rational ceil_rational(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
  return Rational(mpq_class(q));
}

}  // namespace detail

struct MonomialMldResult {
  /// Empty when the infimum is -infinity.
  LcValue mld;
  /// A weight attaining the infimum; for infima reached only in the limit
  /// along an axis this is the first point of the constant tail.
  std::optional<Lattice2> minimizer;
};

/// Exact infimum of g(p) = p1 + p2 - lambda * weighted_order(p) over integer
/// weights p >= (1,1).
///
/// g is positively homogeneous, convex and linear on each cone between
/// consecutive breakpoint rays. A negative value on any ray makes every large
/// multiple of a nearby lattice point negative, so the pair is not lc.
/// Otherwise each cone is minimized exactly: on a cone where g > 0 on both
/// rays, g >= c * (p1 + p2) bounds the rows worth scanning; on a row the
/// linear function is minimized at an end of the admissible interval.
inline MonomialMldResult monomial_mld(const MonomialBoundary& mb) {
  const auto rays = detail::breakpoint_rays(mb.exponents());
  for (const auto& r : rays)
    if (weighted_log_discrepancy(r, mb).sign() < 0) return {std::nullopt, std::nullopt};

  std::optional<Rational> best;
  std::optional<Lattice2> arg;
  auto offer = [&](Lattice2 p) {
    auto v = weighted_log_discrepancy(p, mb);
    if (!best || v < *best || (v == *best && p < *arg)) {
      best = v;
      arg = p;
    }
  };
  offer({1, 1});

  for (std::size_t k = 0; k + 1 < rays.size(); ++k) {
    const Lattice2 u = rays[k], v = rays[k + 1];
    const Rational gu = weighted_log_discrepancy(u, mb), gv = weighted_log_discrepancy(v, mb);
    const std::int64_t det = detail::cross(u, v);

    // g = alpha * p1 + beta * p2 on this cone.
    const Rational alpha = (gu * Rational(v.y) - gv * Rational(u.y)) / Rational(det);
    const Rational beta = (gv * Rational(u.x) - gu * Rational(v.x)) / Rational(det);

    const bool lower_axis = (u == Lattice2{1, 0});
    const bool upper_axis = (v == Lattice2{0, 1});

    // Rows p2 = row: cone requires cross(u,p) >= 0 and cross(p,v) >= 0.
    auto scan_row = [&](std::int64_t row) {
      // cross(u,p) = u.x*row - u.y*p1 >= 0  -> p1 <= u.x*row / u.y (if u.y > 0)
      // cross(p,v) = p1*v.y - row*v.x >= 0  -> p1 >= row*v.x / v.y
      std::int64_t lo = std::max<std::int64_t>(1, detail::ceil_div(row * v.x, v.y));
      std::optional<std::int64_t> hi;
      if (u.y > 0) hi = detail::floor_div(u.x * row, u.y);
      if (hi && *hi < lo) return;
      if (alpha.sign() <= 0 && hi) offer({*hi, row});
      else offer({lo, row});
    };

    if (lower_axis && gu.is_zero()) {
      // g = beta * p2 here; the smallest row is optimal.
      scan_row(1);
      continue;
    }
    if (upper_axis && gv.is_zero()) {
      // g = alpha * p1; symmetric with p1 = 1 and the largest p2 in the cone.
      const std::int64_t lo2 = std::max<std::int64_t>(1, detail::ceil_div(u.y, u.x));
      offer({1, lo2});
      continue;
    }
    // An interior ray with g = 0 has both coordinates >= 1 and attains the
    // global minimum 0.
    if (gu.is_zero() || gv.is_zero()) {
      offer(gu.is_zero() ? u : v);
      continue;
    }
    // Both rays positive: g(p) >= c (p1 + p2) with c the smaller ray slope.
    const Rational c = std::min(gu / Rational(u.x + u.y), gv / Rational(v.x + v.y));
    const Rational limit = *best / c;
    const Rational row_cap = detail::ceil_rational(limit);
    const std::int64_t max_row = static_cast<std::int64_t>(row_cap.numerator().get_si());
    for (std::int64_t row = 1; row <= max_row; ++row) scan_row(row);
  }
  return {best, arg};
}

/// sup { t : p1 + p2 - t * weighted_order(p) >= 0 for all p }, attained on a
/// breakpoint ray because the ratio is linear-fractional on every cone.
inline Rational monomial_lct(const std::vector<Lattice2>& exponents_in) {
  const auto exponents = MonomialBoundary::normalized(exponents_in);
  for (const auto& e : exponents)
    if (e.x == 0 && e.y == 0) throw Error(Errc::DegenerateIdeal, "the unit monomial generates the whole ring");
  std::optional<Rational> best;
  for (const auto& r : detail::breakpoint_rays(exponents)) {
    const std::int64_t ord = weighted_order(r, exponents);
    if (ord == 0) continue;
    Rational ratio(r.x + r.y, ord);
    if (!best || ratio < *best) best = ratio;
  }
  return *best;
}

struct SharpnessReport {
  std::int64_t m = 0;
  Rational lambda;
  LcValue mld;
  Rational a_E;
  /// Smallest vanishing order along E of a curve through z: min(m+1, m).
  std::int64_t min_vanishing_order = 0;
  /// a_E / min_vanishing_order: beyond this t, (Z, Delta + tH) has negative
  /// log discrepancy at E for every curve H through z.
  Rational non_lc_bound;
  bool order_bound_ok = false;
};

/// Boundary (2m-1)/m^2 * (x^m + y^(m+1) = 0) examined at the weighted blowup
/// with weights (m+1, m).
inline SharpnessReport example_sharpness_check(std::int64_t m) {
  if (m < 1) throw Error(Errc::InvalidParameters, "m must be >= 1");
  SharpnessReport r;
  r.m = m;
  r.lambda = Rational(2 * m - 1, m * m);
  MonomialBoundary mb(r.lambda, {{m, 0}, {0, m + 1}});
  r.mld = monomial_mld(mb).mld;
  r.a_E = weighted_log_discrepancy({m + 1, m}, mb);
  r.min_vanishing_order = std::min(m + 1, m);
  r.non_lc_bound = r.a_E / Rational(r.min_vanishing_order);
  const Rational one_over_m(1, m);
  r.order_bound_ok = r.mld && *r.mld == one_over_m && r.a_E == one_over_m &&
                     r.non_lc_bound == one_over_m * one_over_m && r.non_lc_bound == *r.mld * *r.mld;
  return r;
}

}  // namespace surfsing
