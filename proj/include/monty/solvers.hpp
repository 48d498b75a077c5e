#pragma once

// Exact decision analysis on the contestant's payoff matrix: Bayesian best
// responses against a known host, the zero-sum solution, and Nash equilibria
// of general-sum variants where the host has his own payoff matrix.

#include <array>
#include <string>
#include <vector>

#include "monty/game.hpp"
#include "monty/payoff_matrix.hpp"
#include "monty/rational.hpp"

namespace monty {

using Prior = std::array<Rational, 3>;

/// Host randomizing per decision: prize door θ ~ pi, and on a match the
/// smaller of the two other doors is offered with probability lambda[θ].
struct BehavioralHost {
  Prior pi;
  std::array<Rational, 3> lambda;

  BehavioralHost(Prior pi, std::array<Rational, 3> lambda);

  static BehavioralHost uniform(const Rational& lambda = Rational(1, 2));
  /// Uniform prize, always reveals the higher door when free to choose.
  static BehavioralHost crawl();

  /// Probability of offering `offer` after the contestant picks `pick`, given θ.
  Rational offer_probability(Door theta, Door pick, Door offer) const;
};

/// Throws invalid-distribution unless p is nonnegative and sums to 1.
void validate_prior(const Prior& p);

/// Realization-equivalent mixed host strategy: weight of (θ, smaller offer)
/// is pi[θ] lambda[θ], weight of (θ, larger offer) is pi[θ] (1 - lambda[θ]).
MixedMonte host_to_mixed(const BehavioralHost& h);

/// Inverse of host_to_mixed; lambda is set to 1/2 where pi[θ] = 0.
BehavioralHost mixed_to_host(const MixedMonte& q);

struct BayesResult {
  Rational value;
  std::vector<ConiePureStrategy> best_responses;  // canonical order, full argmax set
};

BayesResult bayes_best_response(const MixedMonte& q, const PayoffMatrix& m = conie_payoff_matrix());

/// Win probability of "pick the least likely door, then always switch": 1 - min pi.
Rational bayes_value_formula(const Prior& pi);

/// Doors attaining min pi, ascending.
std::vector<Door> least_likely_doors(const Prior& pi);

/// Context-dependent pure strategies that cannot be Bayesian against q.
std::vector<ConiePureStrategy> exclusion_rules(const MixedMonte& q);

/// P(θ = offer | pick, offer) under host h. Throws unreachable when the
/// information set has probability zero.
Rational posterior_switch_win(const BehavioralHost& h, Door pick, Door offer);

struct SolveResult {
  Rational value;
  MixedConie conie_minimax;
  MixedMonte monte_minimax;
  /// conie_minimax against each pure host strategy (canonical order).
  std::vector<Rational> conie_guarantees;
  /// Each pure contestant strategy against monte_minimax (canonical order).
  std::vector<Rational> monte_concessions;
  ReductionTrace reduction;
  RationalVector reduced_conie;
  RationalVector reduced_monte;
};

struct EqualizerSolution {
  Rational value;
  RationalVector row_strategy;
  RationalVector column_strategy;
};

/// Equalizing strategies of a square game, from the indifference systems.
/// Throws when either system is singular or yields a negative weight.
EqualizerSolution solve_equalizing(const RationalMatrix& square);

/// Reduces by dominance, equalizes the reduced game and lifts the result back
/// to the full strategy sets. The certificate is checked before returning.
SolveResult solve_zero_sum(const PayoffMatrix& m = conie_payoff_matrix());

/// Cached value of the zero-sum game on the canonical matrix.
const Rational& zero_sum_value();

bool is_minimax_monte(const MixedMonte& q);
bool is_minimax_conie(const MixedConie& p);

using HostPayoffMatrix = Eigen::Matrix<Rational, kConieCount, kMonteCount>;

HostPayoffMatrix antagonistic_host();  // -C
HostPayoffMatrix sympathetic_host();   //  C
HostPayoffMatrix indifferent_host();   //  0

struct MonteBestResponse {
  Rational value;
  std::vector<MontePureStrategy> strategies;
};

MonteBestResponse best_response_monte(const MixedConie& p, const HostPayoffMatrix& h);

bool is_nash(const MixedConie& p, const MixedMonte& q, const HostPayoffMatrix& h,
             const PayoffMatrix& m = conie_payoff_matrix());

struct NashProfile {
  MixedConie p;
  MixedMonte q;
  Rational conie_payoff;
  Rational monte_payoff;
  /// Best-response evidence: the best attainable payoff for each side against
  /// the other's strategy, and the pure strategies attaining it.
  Rational conie_best_value;
  Rational monte_best_value;
  std::vector<ConiePureStrategy> conie_best_responses;
  std::vector<MontePureStrategy> monte_best_responses;

  bool certified() const { return conie_payoff == conie_best_value && monte_payoff == monte_best_value; }
};

NashProfile make_nash_profile(const MixedConie& p, const MixedMonte& q, const HostPayoffMatrix& h,
                              const PayoffMatrix& m = conie_payoff_matrix());

/// Family of equilibria whose host strategy is fully supported. The host's
/// prize marginal must have exactly `least_likely` as its set of minimizers
/// (all entries positive, every lambda strictly inside (0,1)); the contestant
/// mixes x·ss over x in `least_likely` with any weights in the polytope
/// spanned by `weight_vertices`.
struct FullySupportedFamily {
  int case_number;  // 1, 2 or 3: size of the least-likely set
  std::vector<Door> least_likely;
  std::vector<std::array<Rational, 3>> weight_vertices;  // over 1ss, 2ss, 3ss
  std::string prior_condition;
  NashProfile representative;
};

std::vector<FullySupportedFamily> fully_supported_equilibria(const HostPayoffMatrix& h,
                                                             const PayoffMatrix& m = conie_payoff_matrix());

struct SupportEnumerationOptions {
  unsigned workers = 1;
};

/// Exhaustive support enumeration over all nonempty row x column support
/// pairs. Only isolated solutions of each pair's indifference system are
/// reported; supports whose system is singular are skipped. Output is
/// deduplicated and sorted by (p, q).
std::vector<NashProfile> enumerate_nash_supports(const HostPayoffMatrix& h,
                                                 const PayoffMatrix& m = conie_payoff_matrix(),
                                                 SupportEnumerationOptions options = {});

}  // namespace monty
