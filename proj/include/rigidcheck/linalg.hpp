#pragma once

// Exact rank and kernel computations over Rational and ModP matrices.
//
// Every kernel routine re-derives the rank through an independent elimination
// and checks rank + kernel dimension against the matrix dimension, and that
// each basis vector annihilates the matrix exactly. A violation throws
// std::logic_error.

#include <sstream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rigidcheck/field.hpp"

namespace rigidcheck {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

/// Basis of a kernel, one vector per column.
template <class Scalar>
struct KernelBasis {
  Matrix<Scalar> vectors;

  Index dimension() const { return vectors.cols(); }
  Vector<Scalar> operator[](Index i) const { return vectors.col(i); }
};

template <class Scalar>
struct Echelon {
  Matrix<Scalar> reduced;  // reduced row echelon form
  std::vector<Index> pivot_columns;

  Index rank() const { return static_cast<Index>(pivot_columns.size()); }
};

/// Gauss-Jordan elimination to reduced row echelon form (exact fields only).
template <class Derived>
Echelon<typename Derived::Scalar> row_reduce(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  static_assert(FieldTraits<Scalar>::exact, "row_reduce requires an exact field");
  Echelon<Scalar> out{input, {}};
  Matrix<Scalar>& m = out.reduced;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = row;
    while (pivot < m.rows() && FieldTraits<Scalar>::is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (Index i = 0; i < m.rows(); ++i) {
      if (i == row || FieldTraits<Scalar>::is_zero(m(i, col))) continue;
      const Scalar factor = m(i, col);
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    out.pivot_columns.push_back(col);
    ++row;
  }
  return out;
}

namespace detail {

// Fraction-free Bareiss elimination on the integer matrix obtained by clearing
// denominators row by row.
inline Index bareiss_rank(const Matrix<Rational>& input) {
  const Index rows = input.rows();
  const Index cols = input.cols();
  std::vector<std::vector<Integer>> a(static_cast<std::size_t>(rows), std::vector<Integer>(static_cast<std::size_t>(cols)));
  for (Index i = 0; i < rows; ++i) {
    Integer lcm = 1;
    for (Index j = 0; j < cols; ++j) lcm = boost::multiprecision::lcm(lcm, Integer(boost::multiprecision::denominator(input(i, j))));
    for (Index j = 0; j < cols; ++j) {
      const Rational& q = input(i, j);
      a[i][j] = boost::multiprecision::numerator(q) * (lcm / boost::multiprecision::denominator(q));
    }
  }
  Integer previous = 1;
  Index rank = 0;
  for (Index col = 0; col < cols && rank < rows; ++col) {
    Index pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (Index i = rank + 1; i < rows; ++i) {
      for (Index j = col + 1; j < cols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / previous;
      }
      a[i][col] = 0;
    }
    previous = a[rank][col];
    ++rank;
  }
  return rank;
}

// Forward elimination without back substitution.
template <class Scalar>
Index forward_rank(Matrix<Scalar> m) {
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index pivot = row;
    while (pivot < m.rows() && FieldTraits<Scalar>::is_zero(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index i = row + 1; i < m.rows(); ++i) {
      if (FieldTraits<Scalar>::is_zero(m(i, col))) continue;
      const Scalar factor = m(i, col) * inv;
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    ++row;
  }
  return row;
}

}  // namespace detail

/// Exact rank: Bareiss for rationals, Gaussian elimination over Z/pZ, and a
/// pivoted LU (diagnostic only) for float64.
template <class Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return detail::bareiss_rank(m);
  } else if constexpr (std::is_same_v<Scalar, double>) {
    if (m.size() == 0) return 0;
    Eigen::FullPivLU<Matrix<double>> lu(m);
    return lu.rank();
  } else {
    return detail::forward_rank<Scalar>(m);
  }
}

namespace detail {

template <class Scalar>
void check_kernel(const Matrix<Scalar>& m, const KernelBasis<Scalar>& kernel) {
  const Index r = rank(m);
  if (r + kernel.dimension() != m.cols()) {
    throw std::logic_error("rank identity violated: rank " + std::to_string(r) + " + kernel dim " +
                           std::to_string(kernel.dimension()) + " != " + std::to_string(m.cols()));
  }
  if (kernel.dimension() == 0 || m.rows() == 0) return;
  const Matrix<Scalar> residual = m * kernel.vectors;
  for (Index i = 0; i < residual.rows(); ++i)
    for (Index j = 0; j < residual.cols(); ++j)
      if (!FieldTraits<Scalar>::is_zero(residual(i, j))) throw std::logic_error("kernel vector has nonzero residual");
}

}  // namespace detail

/// Basis of {x : M x = 0}, normalized so each free coordinate carries a 1.
template <class Derived>
KernelBasis<typename Derived::Scalar> right_kernel_basis(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  const Matrix<Scalar> m = input;
  const Echelon<Scalar> ech = row_reduce(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index c : ech.pivot_columns) is_pivot[c] = true;

  KernelBasis<Scalar> kernel{Matrix<Scalar>::Zero(m.cols(), m.cols() - ech.rank())};
  Index out = 0;
  for (Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    kernel.vectors(free, out) = Scalar(1);
    for (Index r = 0; r < ech.rank(); ++r) kernel.vectors(ech.pivot_columns[r], out) = -ech.reduced(r, free);
    ++out;
  }
  detail::check_kernel(m, kernel);
  return kernel;
}

/// Basis of {w : wᵀ M = 0}.
template <class Derived>
KernelBasis<typename Derived::Scalar> left_kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  return right_kernel_basis(Matrix<Scalar>(m.transpose()));
}

/// Vertical concatenation; all blocks must share a column count.
template <class Scalar>
Matrix<Scalar> vstack(std::span<const Matrix<Scalar>> blocks, Index cols) {
  Index rows = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw std::invalid_argument("vstack: mismatched column counts");
    rows += b.rows();
  }
  Matrix<Scalar> out(rows, cols);
  Index offset = 0;
  for (const auto& b : blocks) {
    out.middleRows(offset, b.rows()) = b;
    offset += b.rows();
  }
  return out;
}

/// Intersection of right kernels, i.e. the right kernel of the vertical stack.
/// An empty list yields the whole space of dimension `cols`.
template <class Scalar>
KernelBasis<Scalar> kernel_intersection(std::span<const Matrix<Scalar>> matrices, Index cols) {
  return right_kernel_basis(vstack(matrices, cols));
}

/// Tab-separated dump with optional row/column labels, for debugging.
template <class Derived>
std::string to_tsv(const Eigen::MatrixBase<Derived>& m, const std::vector<std::string>& row_labels = {},
                   const std::vector<std::string>& col_labels = {}) {
  using Scalar = typename Derived::Scalar;
  std::ostringstream os;
  if (!col_labels.empty()) {
    if (!row_labels.empty()) os << '\t';
    for (std::size_t j = 0; j < col_labels.size(); ++j) os << (j ? "\t" : "") << col_labels[j];
    os << '\n';
  }
  for (Index i = 0; i < m.rows(); ++i) {
    if (!row_labels.empty()) os << row_labels[static_cast<std::size_t>(i)] << '\t';
    for (Index j = 0; j < m.cols(); ++j) os << (j ? "\t" : "") << FieldTraits<Scalar>::str(m(i, j));
    os << '\n';
  }
  return os.str();
}

}  // namespace rigidcheck
