#pragma once

#include <optional>

#include <Eigen/Core>

namespace monty {

/// Solves A x = b by Gauss-Jordan elimination in exact arithmetic.
///
/// Returns the solution only when it exists and is unique (consistent system
/// of full column rank). Over-determined consistent systems are accepted.
/// Scalar must be an exact field type: pivots are chosen as the first
/// nonzero entry, with no tolerance.
template <class Scalar>
std::optional<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> solve_unique(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a, Eigen::Matrix<Scalar, Eigen::Dynamic, 1> b) {
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  if (rows < cols) return std::nullopt;

  const Scalar zero(0);
  Eigen::Index pivot_row = 0;
  for (Eigen::Index col = 0; col < cols; ++col) {
    Eigen::Index found = -1;
    for (Eigen::Index r = pivot_row; r < rows; ++r) {
      if (a(r, col) != zero) {
        found = r;
        break;
      }
    }
    if (found < 0) return std::nullopt;  // rank deficient
    if (found != pivot_row) {
      a.row(found).swap(a.row(pivot_row));
      std::swap(b(found), b(pivot_row));
    }
    const Scalar inv = Scalar(1) / a(pivot_row, col);
    for (Eigen::Index c = col; c < cols; ++c) a(pivot_row, c) *= inv;
    b(pivot_row) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == pivot_row || a(r, col) == zero) continue;
      const Scalar factor = a(r, col);
      for (Eigen::Index c = col; c < cols; ++c) a(r, c) -= factor * a(pivot_row, c);
      b(r) -= factor * b(pivot_row);
    }
    ++pivot_row;
  }
  // Remaining rows are all-zero on the left; they must be zero on the right.
  for (Eigen::Index r = cols; r < rows; ++r) {
    if (b(r) != zero) return std::nullopt;
  }
  return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(b.head(cols));
}

}  // namespace monty
