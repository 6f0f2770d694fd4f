#pragma once

// Slow reference implementations used only by the tests. None of them share
// code paths with the library algorithms they check.

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "surfsing/graph.hpp"
#include "surfsing/matrix.hpp"
#include "surfsing/monomial.hpp"
#include "surfsing/rational.hpp"

namespace oracle {

using surfsing::Cycle;
using surfsing::Rational;
using surfsing::RationalMatrix;
using surfsing::ResolutionGraph;

/// Determinant by cofactor expansion along the first row.
inline Rational laplace_det(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational det = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (m(0, col).is_zero()) continue;
    RationalMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j)
        if (j != col) minor(i - 1, jj++) = m(i, j);
    const Rational term = m(0, col) * laplace_det(minor);
    det += (col % 2 == 0) ? term : -term;
  }
  return det;
}

inline RationalMatrix leading_block(const RationalMatrix& m, std::size_t k) {
  RationalMatrix out(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = m(i, j);
  return out;
}

/// Sylvester's criterion with minors from the cofactor expansion.
inline bool negative_definite_by_minors(const RationalMatrix& m) {
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    const int s = laplace_det(leading_block(m, k)).sign();
    if (s == 0 || (k % 2 == 1 ? s > 0 : s < 0)) return false;
  }
  return true;
}

/// Cramer's rule; empty when the matrix is singular.
inline std::optional<std::vector<Rational>> cramer(const RationalMatrix& m, const std::vector<Rational>& b) {
  const Rational det = laplace_det(m);
  if (det.is_zero()) return std::nullopt;
  std::vector<Rational> x;
  for (std::size_t col = 0; col < m.cols(); ++col) {
    RationalMatrix mc = m;
    for (std::size_t i = 0; i < m.rows(); ++i) mc(i, col) = b[i];
    x.push_back(laplace_det(mc) / det);
  }
  return x;
}

/// Every cycle in [0, bound]^n with no pruning; coordinatewise minimum of the
/// nonzero antinef ones.
inline std::optional<Cycle> exhaustive_fundamental_cycle(const ResolutionGraph& g, std::int64_t bound) {
  const std::size_t n = g.size();
  std::vector<std::int64_t> c(n, 0);
  std::optional<std::vector<std::int64_t>> best;
  for (;;) {
    bool nonzero = false, antinef = true;
    for (std::size_t v = 0; v < n; ++v) {
      nonzero = nonzero || c[v] != 0;
      std::int64_t dot = 0;
      for (std::size_t w = 0; w < n; ++w) dot += g.pairing(v, w) * c[w];
      antinef = antinef && dot <= 0;
    }
    if (nonzero && antinef) {
      if (!best) best = c;
      else
        for (std::size_t v = 0; v < n; ++v) (*best)[v] = std::min((*best)[v], c[v]);
    }
    std::size_t k = 0;
    while (k < n && c[k] == bound) c[k++] = 0;
    if (k == n) break;
    ++c[k];
  }
  if (!best) return std::nullopt;
  return Cycle(*best);
}

/// [b_1, ..., b_r] evaluated bottom-up as a fraction num/den in int64.
inline std::pair<std::int64_t, std::int64_t> continued_fraction(const std::vector<std::int64_t>& terms) {
  std::int64_t num = terms.back(), den = 1;
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    // b - den/num = (b*num - den) / num
    const std::int64_t next_num = terms[i] * num - den;
    den = num;
    num = next_num;
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

/// min of p1 + p2 - lambda*ord_p over the box [1, bound]^2.
inline std::pair<Rational, surfsing::Lattice2> box_minimum(const surfsing::MonomialBoundary& mb, std::int64_t bound) {
  std::optional<Rational> best;
  surfsing::Lattice2 arg{};
  for (std::int64_t p1 = 1; p1 <= bound; ++p1)
    for (std::int64_t p2 = 1; p2 <= bound; ++p2) {
      std::int64_t ord = -1;
      for (const auto& e : mb.exponents()) {
        const auto v = e.x * p1 + e.y * p2;
        if (ord < 0 || v < ord) ord = v;
      }
      const Rational g = Rational(p1 + p2) - mb.lambda() * Rational(ord);
      if (!best || g < *best) best = g, arg = {p1, p2};
    }
  return {*best, arg};
}

/// min over coprime (p1, p2) in [0, bound]^2 \ {0} with ord > 0 of (p1+p2)/ord.
inline Rational lct_by_weights(const std::vector<surfsing::Lattice2>& exponents, std::int64_t bound) {
  std::optional<Rational> best;
  for (std::int64_t p1 = 0; p1 <= bound; ++p1)
    for (std::int64_t p2 = 0; p2 <= bound; ++p2) {
      if (std::gcd(p1, p2) != 1) continue;
      std::int64_t ord = -1;
      for (const auto& e : exponents) {
        const auto v = e.x * p1 + e.y * p2;
        if (ord < 0 || v < ord) ord = v;
      }
      if (ord <= 0) continue;
      const Rational r(p1 + p2, ord);
      if (!best || r < *best) best = r;
    }
  return *best;
}

inline RationalMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> d(lo, hi);
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace oracle
