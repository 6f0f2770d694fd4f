#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "surfsing/error.hpp"
#include "surfsing/graph.hpp"
#include "surfsing/rational.hpp"

namespace surfsing {

/// n/q = b_1 - 1/(b_2 - 1/(... - 1/b_r)) with every b_i >= 2.
struct HJExpansion {
  std::int64_t n = 0;
  std::int64_t q = 0;
  std::vector<std::int64_t> terms;
};

inline void require_cyclic_parameters(std::int64_t n, std::int64_t q) {
  if (!(0 < q && q < n) || std::gcd(n, q) != 1)
    throw Error(Errc::InvalidParameters, "need 0 < q < n and gcd(n,q) = 1, got n=" + std::to_string(n) +
                                             ", q=" + std::to_string(q));
}

/// b = ceil(n/q), then (n, q) <- (q, b*q - n) until q = 0.
inline HJExpansion hj_expand(std::int64_t n, std::int64_t q) {
  require_cyclic_parameters(n, q);
  HJExpansion out{n, q, {}};
  while (q != 0) {
    const std::int64_t b = (n + q - 1) / q;
    out.terms.push_back(b);
    const std::int64_t next = b * q - n;
    n = q;
    q = next;
  }
  return out;
}

inline Rational hj_evaluate(std::span<const std::int64_t> terms) {
  if (terms.empty()) throw Error(Errc::InvalidParameters, "empty continued fraction");
  Rational value = terms.back();
  for (std::size_t i = terms.size() - 1; i-- > 0;) {
    if (value.is_zero())
      throw Error(Errc::DivisionByZero, "tail starting at term " + std::to_string(i + 1) + " evaluates to 0");
    value = Rational(terms[i]) - Rational(1) / value;
  }
  return value;
}

/// Minimal resolution chain of the cyclic quotient singularity A_{n,q}.
inline ResolutionGraph cyclic_graph(std::int64_t n, std::int64_t q) {
  const auto hj = hj_expand(n, q);
  std::vector<std::int64_t> weights;
  weights.reserve(hj.terms.size());
  for (auto b : hj.terms) weights.push_back(-b);
  return ResolutionGraph::chain(weights, true);
}

}  // namespace surfsing
