#include "monty/payoff_matrix.hpp"

#include <algorithm>

#include "monty/error.hpp"

namespace monty {

PayoffMatrix::PayoffMatrix(const ConieMatrix& entries) : entries_(entries) {
  for (int i = 0; i < kConieCount; ++i) {
    for (int j = 0; j < kMonteCount; ++j) {
      if (entries_(i, j) != 0 && entries_(i, j) != 1) {
        throw Error(ErrorCode::kParseError, "payoff entries must be 0 or 1");
      }
    }
    for (int k = 0; k < i; ++k) {
      if (entries_.row(i) == entries_.row(k)) {
        throw Error(ErrorCode::kParseError, "payoff rows must be pairwise distinct");
      }
    }
  }
}

PayoffMatrix build_payoff_matrix() {
  ConieMatrix entries;
  for (const auto& c : enumerate_conie()) {
    for (const auto& m : enumerate_monte()) entries(c.index(), m.index()) = payoff(m, c);
  }
  return PayoffMatrix(entries);
}

const PayoffMatrix& conie_payoff_matrix() {
  static const PayoffMatrix matrix = build_payoff_matrix();
  return matrix;
}

MixedConie point_mass(const ConiePureStrategy& c) { return MixedConie::point_mass(c.index()); }
MixedMonte point_mass(const MontePureStrategy& m) { return MixedMonte::point_mass(m.index()); }

std::array<Rational, 3> theta_marginal(const MixedMonte& q) {
  std::array<Rational, 3> out{Rational(0), Rational(0), Rational(0)};
  for (const auto& m : enumerate_monte()) out[m.theta.index()] += q[m.index()];
  return out;
}

Rational expected_payoff(const MixedConie& p, const MixedMonte& q, const PayoffMatrix& m) {
  return bilinear(p.weights(), m.as_rational(), q.weights());
}

bool weakly_dominates(const ConiePureStrategy& b, const ConiePureStrategy& a, const PayoffMatrix& m) {
  const auto rb = m.row(b);
  const auto ra = m.row(a);
  return (rb.array() >= ra.array()).all() && rb != ra;
}

std::vector<Door> unlucky_doors(const ConiePureStrategy& a, const PayoffMatrix& m) {
  std::vector<Door> out;
  for (Door u : all_doors()) {
    bool never_wins = true;
    for (const auto& s : enumerate_monte()) {
      if (s.theta == u && m.at(a, s) != 0) never_wins = false;
    }
    if (never_wins) out.push_back(u);
  }
  return out;
}

std::string_view reduction_kind_name(ReductionStep::Kind k) {
  return k == ReductionStep::Kind::kDominatedRow ? "dominated-row" : "duplicate-column";
}

bool ReductionTrace::contains(const ReductionStep& s) const {
  return std::find(steps.begin(), steps.end(), s) != steps.end();
}

namespace {

bool row_dominates(const Eigen::MatrixXi& m, Eigen::Index b, Eigen::Index a) {
  return (m.row(b).array() >= m.row(a).array()).all() && m.row(b) != m.row(a);
}

Eigen::MatrixXi drop_row(const Eigen::MatrixXi& m, Eigen::Index r) {
  Eigen::MatrixXi out(m.rows() - 1, m.cols());
  out << m.topRows(r), m.bottomRows(m.rows() - r - 1);
  return out;
}

Eigen::MatrixXi drop_col(const Eigen::MatrixXi& m, Eigen::Index c) {
  Eigen::MatrixXi out(m.rows(), m.cols() - 1);
  out << m.leftCols(c), m.rightCols(m.cols() - c - 1);
  return out;
}

}  // namespace

ReductionTrace eliminate_dominated(const PayoffMatrix& m) {
  ReductionTrace trace;
  trace.rows = PayoffMatrix::row_labels();
  trace.columns = PayoffMatrix::column_labels();
  Eigen::MatrixXi cur = m.entries();

  for (bool removed = true; removed;) {
    removed = false;
    for (Eigen::Index a = 0; a < cur.rows() && !removed; ++a) {
      Eigen::Index justifier = -1;
      for (Eigen::Index b = 0; b < cur.rows(); ++b) {
        if (b == a || !row_dominates(cur, b, a)) continue;
        if (trace.rows[b].always_switches()) {
          justifier = b;
          break;
        }
        if (justifier < 0) justifier = b;
      }
      if (justifier < 0) continue;
      trace.steps.push_back({ReductionStep::Kind::kDominatedRow, trace.rows[a].code(), trace.rows[justifier].code()});
      trace.rows.erase(trace.rows.begin() + a);
      cur = drop_row(cur, a);
      removed = true;
    }
  }

  for (bool removed = true; removed;) {
    removed = false;
    for (Eigen::Index a = 0; a < cur.cols() && !removed; ++a) {
      for (Eigen::Index b = 0; b < cur.cols(); ++b) {
        if (b == a || cur.col(a) != cur.col(b)) continue;
        // Keep whichever of the pair offers the smaller door.
        const auto& la = trace.columns[a];
        const auto& lb = trace.columns[b];
        const bool drop_a = la.offer_on_match > lb.offer_on_match ||
                            (la.offer_on_match == lb.offer_on_match && la.index() > lb.index());
        const Eigen::Index victim = drop_a ? a : b;
        const Eigen::Index keeper = drop_a ? b : a;
        trace.steps.push_back({ReductionStep::Kind::kDuplicateColumn, trace.columns[victim].code(),
                               trace.columns[keeper].code()});
        trace.columns.erase(trace.columns.begin() + victim);
        cur = drop_col(cur, victim);
        removed = true;
        break;
      }
    }
  }

  trace.terminal = cur;
  return trace;
}

}  // namespace monty
