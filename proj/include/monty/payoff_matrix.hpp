#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "monty/error.hpp"
#include "monty/game.hpp"
#include "monty/rational.hpp"

namespace monty {

using ConieMatrix = Eigen::Matrix<int, kConieCount, kMonteCount>;

/// Contestant's 0/1 payoff matrix, rows in canonical contestant order and
/// columns in canonical host order.
class PayoffMatrix {
 public:
  /// Validates 0/1 entries and pairwise distinct rows.
  explicit PayoffMatrix(const ConieMatrix& entries);

  const ConieMatrix& entries() const { return entries_; }
  int at(const ConiePureStrategy& c, const MontePureStrategy& m) const { return entries_(c.index(), m.index()); }
  auto row(const ConiePureStrategy& c) const { return entries_.row(c.index()); }

  Eigen::Matrix<Rational, kConieCount, kMonteCount> as_rational() const { return entries_.cast<Rational>(); }

  static const std::vector<ConiePureStrategy>& row_labels() { return enumerate_conie(); }
  static const std::vector<MontePureStrategy>& column_labels() { return enumerate_monte(); }

  friend bool operator==(const PayoffMatrix& a, const PayoffMatrix& b) { return a.entries_ == b.entries_; }

 private:
  ConieMatrix entries_;
};

/// Derives the matrix from deterministic play of all 72 pure profiles.
PayoffMatrix build_payoff_matrix();

/// Shared instance of build_payoff_matrix().
const PayoffMatrix& conie_payoff_matrix();

/// Probability vector over N pure strategies, aligned to canonical order.
template <int N>
class MixedStrategy {
 public:
  using Weights = RationalRow<N>;

  /// Throws invalid-distribution unless weights are nonnegative and sum to 1.
  explicit MixedStrategy(const Weights& weights) : weights_(weights) {
    Rational total(0);
    for (int i = 0; i < N; ++i) {
      if (weights_(i).sign() < 0) throw_invalid("negative weight " + weights_(i).str());
      total += weights_(i);
    }
    if (total != Rational(1)) throw_invalid("weights sum to " + total.str() + ", not 1");
  }

  static MixedStrategy point_mass(int index) {
    Weights w = Weights::Constant(Rational(0));
    w(index) = Rational(1);
    return MixedStrategy(w);
  }
  static MixedStrategy uniform() { return MixedStrategy(Weights::Constant(Rational(1, N))); }
  /// Uniform over the given indices.
  static MixedStrategy uniform_over(const std::vector<int>& indices) {
    Weights w = Weights::Constant(Rational(0));
    for (int i : indices) w(i) = Rational(1, static_cast<long>(indices.size()));
    return MixedStrategy(w);
  }

  const Weights& weights() const { return weights_; }
  const Rational& operator[](int i) const { return weights_(i); }

  std::vector<int> support() const {
    std::vector<int> out;
    for (int i = 0; i < N; ++i) {
      if (!weights_(i).is_zero()) out.push_back(i);
    }
    return out;
  }
  bool fully_supported() const { return static_cast<int>(support().size()) == N; }

  friend bool operator==(const MixedStrategy& a, const MixedStrategy& b) { return a.weights_ == b.weights_; }

 private:
  [[noreturn]] static void throw_invalid(const std::string& why) {
    throw Error(ErrorCode::kInvalidDistribution, "mixed strategy: " + why);
  }

  Weights weights_;
};

using MixedConie = MixedStrategy<kConieCount>;
using MixedMonte = MixedStrategy<kMonteCount>;

MixedConie point_mass(const ConiePureStrategy& c);
MixedMonte point_mass(const MontePureStrategy& m);

/// Prize-door marginal of a host mixture.
std::array<Rational, 3> theta_marginal(const MixedMonte& q);

/// p * M * q^T for any conforming dense operands of one scalar type.
template <class P, class M, class Q>
typename M::Scalar bilinear(const Eigen::MatrixBase<P>& p, const Eigen::MatrixBase<M>& m,
                            const Eigen::MatrixBase<Q>& q) {
  return (p * m * q.transpose())(0, 0);
}

/// Contestant's win probability under independent mixing: P C Q^T.
Rational expected_payoff(const MixedConie& p, const MixedMonte& q,
                         const PayoffMatrix& m = conie_payoff_matrix());

/// Row b is entrywise >= row a and differs somewhere.
bool weakly_dominates(const ConiePureStrategy& b, const ConiePureStrategy& a,
                      const PayoffMatrix& m = conie_payoff_matrix());

/// Doors u such that row a is zero in both columns hiding the prize at u.
std::vector<Door> unlucky_doors(const ConiePureStrategy& a, const PayoffMatrix& m = conie_payoff_matrix());

struct ReductionStep {
  enum class Kind { kDominatedRow, kDuplicateColumn };
  Kind kind;
  std::string removed;
  std::string justified_by;

  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

std::string_view reduction_kind_name(ReductionStep::Kind k);

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  std::vector<ConiePureStrategy> rows;
  std::vector<MontePureStrategy> columns;
  Eigen::MatrixXi terminal;

  bool contains(const ReductionStep& s) const;
};

/// Iterated removal of weakly dominated rows, then of duplicate columns.
///
/// Rows are scanned in canonical order and the first dominated one is
/// removed, justified by the first always-switching dominator if there is
/// one, else by the first dominator. Among equal columns the one with the
/// smaller offer door survives.
ReductionTrace eliminate_dominated(const PayoffMatrix& m = conie_payoff_matrix());

/// Entrywise m - k, promoting to the scalar of k.
template <class Derived>
Eigen::Matrix<Rational, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> subtract_constant(
    const Eigen::MatrixBase<Derived>& m, const Rational& k) {
  using Out = Eigen::Matrix<Rational, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
  Out out = m.template cast<Rational>();
  return (out.array() - k).matrix();
}

}  // namespace monty
