#include "monty/solvers.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include "monty/error.hpp"
#include "monty/linear_solve.hpp"

namespace monty {

void validate_prior(const Prior& p) {
  Rational total(0);
  for (const auto& x : p) {
    if (x.sign() < 0) throw Error(ErrorCode::kInvalidDistribution, "prior has a negative entry " + x.str());
    total += x;
  }
  if (total != Rational(1)) {
    throw Error(ErrorCode::kInvalidDistribution, "prior sums to " + total.str() + ", not 1");
  }
}

BehavioralHost::BehavioralHost(Prior pi_in, std::array<Rational, 3> lambda_in)
    : pi(std::move(pi_in)), lambda(std::move(lambda_in)) {
  validate_prior(pi);
  for (const auto& l : lambda) {
    if (l.sign() < 0 || l > Rational(1)) {
      throw Error(ErrorCode::kInvalidDistribution, "lambda must lie in [0,1], got " + l.str());
    }
  }
}

BehavioralHost BehavioralHost::uniform(const Rational& lambda) {
  const Rational third(1, 3);
  return {{third, third, third}, {lambda, lambda, lambda}};
}

BehavioralHost BehavioralHost::crawl() { return uniform(Rational(1)); }

Rational BehavioralHost::offer_probability(Door theta, Door pick, Door offer) const {
  if (offer == pick) return 0;
  if (pick != theta) return offer == theta ? Rational(1) : Rational(0);
  if (offer == theta) return 0;
  const Rational& l = lambda[theta.index()];
  return offer == other_doors(theta)[0] ? l : Rational(1) - l;
}

MixedMonte host_to_mixed(const BehavioralHost& h) {
  MixedMonte::Weights w;
  for (const auto& m : enumerate_monte()) {
    const int t = m.theta.index();
    w(m.index()) = h.pi[t] * (m.offers_smaller() ? h.lambda[t] : Rational(1) - h.lambda[t]);
  }
  return MixedMonte(w);
}

BehavioralHost mixed_to_host(const MixedMonte& q) {
  const Prior pi = theta_marginal(q);
  std::array<Rational, 3> lambda{Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  for (Door t : all_doors()) {
    if (!pi[t.index()].is_zero()) {
      lambda[t.index()] = q[MontePureStrategy(t, other_doors(t)[0]).index()] / pi[t.index()];
    }
  }
  return {pi, lambda};
}

BayesResult bayes_best_response(const MixedMonte& q, const PayoffMatrix& m) {
  const RationalVector values = m.as_rational() * q.weights().transpose();
  BayesResult out{values.maxCoeff(), {}};
  for (const auto& c : enumerate_conie()) {
    if (values(c.index()) == out.value) out.best_responses.push_back(c);
  }
  return out;
}

Rational bayes_value_formula(const Prior& pi) {
  validate_prior(pi);
  return Rational(1) - *std::min_element(pi.begin(), pi.end());
}

std::vector<Door> least_likely_doors(const Prior& pi) {
  const Rational lo = *std::min_element(pi.begin(), pi.end());
  std::vector<Door> out;
  for (Door d : all_doors()) {
    if (pi[d.index()] == lo) out.push_back(d);
  }
  return out;
}

std::vector<ConiePureStrategy> exclusion_rules(const MixedMonte& q) {
  std::vector<ConiePureStrategy> out;
  for (Door t : all_doors()) {
    const auto others = other_doors(t);
    // Switching at the smaller offer after a match loses when that offer occurs.
    if (!q[MontePureStrategy(t, others[0]).index()].is_zero()) {
      out.push_back({t, Action::kSwitch, Action::kHold});
    }
    if (!q[MontePureStrategy(t, others[1]).index()].is_zero()) {
      out.push_back({t, Action::kHold, Action::kSwitch});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index() < b.index(); });
  return out;
}

Rational posterior_switch_win(const BehavioralHost& h, Door pick, Door offer) {
  if (pick == offer) throw Error(ErrorCode::kInvalidArgument, "offer must differ from pick");
  // Only θ = offer (forced offer) and θ = pick (match) reach this information set.
  const Rational switch_wins = h.pi[offer.index()];
  const Rational reach = switch_wins + h.pi[pick.index()] * h.offer_probability(pick, pick, offer);
  if (reach.is_zero()) {
    throw Error(ErrorCode::kUnreachable, "information set " + InfoSet(pick, offer).code() + " is unreachable");
  }
  return switch_wins / reach;
}

EqualizerSolution solve_equalizing(const RationalMatrix& square) {
  const Eigen::Index n = square.rows();
  if (square.cols() != n) throw Error(ErrorCode::kInvalidArgument, "equalizing needs a square game");

  // Row player: p^T M e_j = v for every column j, sum p = 1.
  auto equalize = [n](const RationalMatrix& payoffs) {
    RationalMatrix a = RationalMatrix::Zero(n + 1, n + 1);
    RationalVector b = RationalVector::Zero(n + 1);
    a.topLeftCorner(n, n) = payoffs.transpose();
    a.topRightCorner(n, 1).setConstant(Rational(-1));
    a.bottomLeftCorner(1, n).setConstant(Rational(1));
    b(n) = Rational(1);
    auto sol = solve_unique(a, b);
    if (!sol) throw Error(ErrorCode::kInvalidArgument, "equalizing system is singular");
    for (Eigen::Index i = 0; i < n; ++i) {
      if ((*sol)(i).sign() < 0) throw Error(ErrorCode::kInvalidArgument, "equalizing strategy is not a distribution");
    }
    return *sol;
  };

  const RationalVector rows = equalize(square);
  const RationalVector cols = equalize(square.transpose());
  if (rows(n) != cols(n)) throw Error(ErrorCode::kInvalidArgument, "equalizing values disagree");
  return {rows(n), rows.head(n), cols.head(n)};
}

SolveResult solve_zero_sum(const PayoffMatrix& m) {
  ReductionTrace trace = eliminate_dominated(m);
  const RationalMatrix reduced = trace.terminal.cast<Rational>();
  const EqualizerSolution eq = solve_equalizing(reduced);

  MixedConie::Weights p = MixedConie::Weights::Constant(Rational(0));
  for (std::size_t i = 0; i < trace.rows.size(); ++i) p(trace.rows[i].index()) = eq.row_strategy(i);
  MixedMonte::Weights q = MixedMonte::Weights::Constant(Rational(0));
  for (std::size_t j = 0; j < trace.columns.size(); ++j) q(trace.columns[j].index()) = eq.column_strategy(j);

  SolveResult out{eq.value, MixedConie(p), MixedMonte(q), {}, {}, std::move(trace), eq.row_strategy,
                  eq.column_strategy};
  const auto c = m.as_rational();
  const RationalRow<kMonteCount> guarantees = p * c;
  const RationalVector concessions = c * q.transpose();
  out.conie_guarantees.assign(guarantees.data(), guarantees.data() + kMonteCount);
  out.monte_concessions.assign(concessions.data(), concessions.data() + kConieCount);

  if (guarantees.minCoeff() != out.value || concessions.maxCoeff() != out.value) {
    throw std::logic_error("lifted strategies fail the minimax certificate");
  }
  return out;
}

const Rational& zero_sum_value() {
  static const Rational v = solve_zero_sum().value;
  return v;
}

bool is_minimax_monte(const MixedMonte& q) { return bayes_best_response(q).value == zero_sum_value(); }

bool is_minimax_conie(const MixedConie& p) {
  const RationalRow<kMonteCount> guarantees = p.weights() * conie_payoff_matrix().as_rational();
  return guarantees.minCoeff() == zero_sum_value();
}

HostPayoffMatrix antagonistic_host() { return -conie_payoff_matrix().as_rational(); }
HostPayoffMatrix sympathetic_host() { return conie_payoff_matrix().as_rational(); }
HostPayoffMatrix indifferent_host() { return HostPayoffMatrix::Constant(Rational(0)); }

MonteBestResponse best_response_monte(const MixedConie& p, const HostPayoffMatrix& h) {
  const RationalRow<kMonteCount> values = p.weights() * h;
  MonteBestResponse out{values.maxCoeff(), {}};
  for (const auto& s : enumerate_monte()) {
    if (values(s.index()) == out.value) out.strategies.push_back(s);
  }
  return out;
}

NashProfile make_nash_profile(const MixedConie& p, const MixedMonte& q, const HostPayoffMatrix& h,
                              const PayoffMatrix& m) {
  const BayesResult conie = bayes_best_response(q, m);
  const MonteBestResponse monte = best_response_monte(p, h);
  return {p,
          q,
          expected_payoff(p, q, m),
          bilinear(p.weights(), h, q.weights()),
          conie.value,
          monte.value,
          conie.best_responses,
          monte.strategies};
}

bool is_nash(const MixedConie& p, const MixedMonte& q, const HostPayoffMatrix& h, const PayoffMatrix& m) {
  return make_nash_profile(p, q, h, m).certified();
}

namespace {

std::string prior_condition_text(const std::vector<Door>& low) {
  auto pi = [](Door d) { return "pi_" + std::to_string(d.value()); };
  std::string out;
  if (low.size() == 3) return "pi_1 = pi_2 = pi_3 = 1/3";
  if (low.size() == 2) {
    const Door high = third_door(low[0], low[1]);
    out = pi(low[0]) + " = " + pi(low[1]) + " < " + pi(high);
  } else {
    const auto others = other_doors(low[0]);
    out = "0 < " + pi(low[0]) + " < min(" + pi(others[0]) + ", " + pi(others[1]) + ")";
  }
  return out + ", all pi > 0";
}

// Fully supported host strategy whose prize marginal is minimized exactly on `low`.
MixedMonte representative_host(const std::vector<Door>& low) {
  Prior pi;
  const auto k = static_cast<long>(low.size());
  const Rational lo = k == 3 ? Rational(1, 3) : (k == 2 ? Rational(1, 4) : Rational(1, 5));
  const Rational hi = k == 3 ? Rational(1, 3) : (Rational(1) - lo * Rational(k)) / Rational(3 - k);
  for (Door d : all_doors()) {
    pi[d.index()] = std::find(low.begin(), low.end(), d) != low.end() ? lo : hi;
  }
  return host_to_mixed(BehavioralHost(pi, {Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
}

}  // namespace

std::vector<FullySupportedFamily> fully_supported_equilibria(const HostPayoffMatrix& h, const PayoffMatrix& m) {
  std::vector<FullySupportedFamily> out;
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::vector<Door> low;
    for (Door d : all_doors()) {
      if (mask & (1u << d.index())) low.push_back(d);
    }

    // Vertices of {p >= 0 on low, sum p = 1, p-mixture of x·ss rows of h constant}:
    // the nonnegative isolated solutions over every sub-support.
    std::vector<std::array<Rational, 3>> vertices;
    for (unsigned sub = 1; sub < 8; ++sub) {
      if ((sub & mask) != sub) continue;
      std::vector<Door> doors;
      for (Door d : all_doors()) {
        if (sub & (1u << d.index())) doors.push_back(d);
      }
      const auto k = static_cast<Eigen::Index>(doors.size());
      RationalMatrix a = RationalMatrix::Zero(kMonteCount + 1, k + 1);
      RationalVector b = RationalVector::Zero(kMonteCount + 1);
      for (Eigen::Index i = 0; i < k; ++i) {
        a.block(0, i, kMonteCount, 1) = h.row(always_switch(doors[i]).index()).transpose();
        a(kMonteCount, i) = Rational(1);
      }
      a.block(0, k, kMonteCount, 1).setConstant(Rational(-1));
      b(kMonteCount) = Rational(1);
      const auto sol = solve_unique(a, b);
      if (!sol) continue;
      std::array<Rational, 3> w{Rational(0), Rational(0), Rational(0)};
      bool nonnegative = true;
      for (Eigen::Index i = 0; i < k; ++i) {
        nonnegative = nonnegative && (*sol)(i).sign() >= 0;
        w[doors[i].index()] = (*sol)(i);
      }
      if (nonnegative && std::find(vertices.begin(), vertices.end(), w) == vertices.end()) vertices.push_back(w);
    }
    if (vertices.empty()) continue;

    std::array<Rational, 3> centroid{Rational(0), Rational(0), Rational(0)};
    for (const auto& v : vertices) {
      for (int i = 0; i < 3; ++i) centroid[i] += v[i] / Rational(static_cast<long>(vertices.size()));
    }
    MixedConie::Weights p = MixedConie::Weights::Constant(Rational(0));
    for (Door d : all_doors()) p(always_switch(d).index()) = centroid[d.index()];

    FullySupportedFamily family{static_cast<int>(low.size()), low, vertices, prior_condition_text(low),
                                make_nash_profile(MixedConie(p), representative_host(low), h, m)};
    if (!family.representative.certified()) {
      throw std::logic_error("fully supported representative is not an equilibrium");
    }
    out.push_back(std::move(family));
  }
  return out;
}

namespace {

template <class Weights>
bool lex_less(const Weights& a, const Weights& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

bool profile_less(const NashProfile& a, const NashProfile& b) {
  if (a.p.weights() != b.p.weights()) return lex_less(a.p.weights(), b.p.weights());
  return lex_less(a.q.weights(), b.q.weights());
}

bool same_profile(const NashProfile& a, const NashProfile& b) { return a.p == b.p && a.q == b.q; }

std::vector<int> mask_indices(unsigned mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

// Mixture over `own` indices making the opponent indifferent across `other`:
// sum_i w_i payoff(i, j) = v for j in other, sum w = 1. `payoff` is oriented
// with own strategies on rows.
template <int N>
std::optional<RationalRow<N>> indifference(const RationalMatrix& payoff, const std::vector<int>& own,
                                           const std::vector<int>& other) {
  const auto k = static_cast<Eigen::Index>(own.size());
  const auto e = static_cast<Eigen::Index>(other.size());
  RationalMatrix a = RationalMatrix::Zero(e + 1, k + 1);
  RationalVector b = RationalVector::Zero(e + 1);
  for (Eigen::Index j = 0; j < e; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) a(j, i) = payoff(own[i], other[j]);
    a(j, k) = Rational(-1);
  }
  a.block(e, 0, 1, k).setConstant(Rational(1));
  b(e) = Rational(1);
  const auto sol = solve_unique(a, b);
  if (!sol) return std::nullopt;
  RationalRow<N> w = RationalRow<N>::Constant(Rational(0));
  for (Eigen::Index i = 0; i < k; ++i) {
    if ((*sol)(i).sign() < 0) return std::nullopt;
    w(own[i]) = (*sol)(i);
  }
  return w;
}

}  // namespace

std::vector<NashProfile> enumerate_nash_supports(const HostPayoffMatrix& h, const PayoffMatrix& m,
                                                 SupportEnumerationOptions options) {
  const RationalMatrix conie = m.as_rational();
  const RationalMatrix host = h;
  const RationalMatrix host_t = host.transpose();
  const RationalMatrix conie_t = conie.transpose();

  constexpr unsigned kRowMasks = 1u << kConieCount;
  constexpr unsigned kColMasks = 1u << kMonteCount;

  auto sweep = [&](unsigned first_row_mask, unsigned stride) {
    std::vector<NashProfile> found;
    for (unsigned rmask = first_row_mask; rmask < kRowMasks; rmask += stride) {
      const auto rows = mask_indices(rmask);
      for (unsigned cmask = 1; cmask < kColMasks; ++cmask) {
        // The contestant's system has |cols|+1 equations in |rows|+1 unknowns
        // and the host's the reverse; both are uniquely solvable only when
        // the supports have equal size.
        if (std::popcount(rmask) != std::popcount(cmask)) continue;
        const auto cols = mask_indices(cmask);
        const auto p = indifference<kConieCount>(host, rows, cols);
        if (!p) continue;
        const auto q = indifference<kMonteCount>(conie_t, cols, rows);
        if (!q) continue;
        NashProfile profile = make_nash_profile(MixedConie(*p), MixedMonte(*q), h, m);
        if (profile.certified()) found.push_back(std::move(profile));
      }
    }
    return found;
  };

  const unsigned workers = std::max(1u, options.workers);
  std::vector<NashProfile> all;
  if (workers == 1) {
    all = sweep(1, 1);
  } else {
    std::vector<std::vector<NashProfile>> parts(workers);
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] { parts[w] = sweep(1 + w, workers); });
    }
    pool.clear();
    for (auto& part : parts) all.insert(all.end(), part.begin(), part.end());
  }

  std::sort(all.begin(), all.end(), profile_less);
  all.erase(std::unique(all.begin(), all.end(), same_profile), all.end());
  return all;
}

}  // namespace monty
