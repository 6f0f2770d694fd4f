#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "surfsing/error.hpp"
#include "surfsing/rational.hpp"

namespace surfsing {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(Errc::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline std::vector<Rational> multiply(const RationalMatrix& m, std::span<const Rational> x) {
  if (m.cols() != x.size()) throw Error(Errc::DimensionMismatch, "matrix-vector size mismatch");
  std::vector<Rational> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero() && !x[j].is_zero()) out[i] += m(i, j) * x[j];
  return out;
}

/// Unique solution of matrix * x = rhs by fraction-free (Bareiss) elimination
/// with row pivoting. Throws SingularMatrix when the determinant vanishes.
inline std::vector<Rational> solve_linear_system(const RationalMatrix& matrix,
                                                 std::span<const Rational> rhs) {
  if (!matrix.is_square()) throw Error(Errc::DimensionMismatch, "matrix is not square");
  const std::size_t n = matrix.rows();
  if (rhs.size() != n) throw Error(Errc::DimensionMismatch, "right-hand side has wrong length");

  RationalMatrix a(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = matrix(i, j);
    a(i, n) = rhs[i];
  }

  Rational prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k).is_zero()) ++pivot;
    if (pivot == n) throw Error(Errc::SingularMatrix, "determinant is zero");
    if (pivot != k)
      for (std::size_t j = k; j <= n; ++j) std::swap(a(k, j), a(pivot, j));
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }

  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = a(i, n);
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

/// Leading principal minors of orders 1..n, computed exactly by Bareiss
/// elimination without pivoting. After the first vanishing minor the
/// recurrence breaks down, so the list stops there (its last entry is 0).
inline std::vector<Rational> leading_principal_minors(const RationalMatrix& matrix) {
  if (!matrix.is_square()) throw Error(Errc::DimensionMismatch, "matrix is not square");
  const std::size_t n = matrix.rows();
  RationalMatrix a = matrix;
  std::vector<Rational> minors;
  minors.reserve(n);
  Rational prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    minors.push_back(a(k, k));
    if (a(k, k).is_zero()) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return minors;
}

/// Sylvester's criterion: the k-th leading principal minor has sign (-1)^k.
inline bool is_negative_definite(const RationalMatrix& matrix) {
  if (!matrix.is_symmetric()) throw Error(Errc::NotSymmetric, "negative definiteness needs a symmetric matrix");
  const auto minors = leading_principal_minors(matrix);
  if (minors.size() != matrix.rows()) return false;
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const int expected = (k % 2 == 0) ? -1 : 1;
    if (minors[k].sign() != expected) return false;
  }
  return true;
}

}  // namespace surfsing
