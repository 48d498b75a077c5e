#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "monty/game.hpp"
#include "monty/payoff_matrix.hpp"
#include "monty/rational.hpp"
#include "monty/solvers.hpp"

namespace monty {

/// Contestant randomizing locally: pick ~ pick_dist, then at each information
/// set (canonical order *12,*13,*21,*23,*31,*32) switch with the given
/// probability.
struct BehavioralConie {
  Prior pick_dist;
  std::array<Rational, 6> switch_prob;

  BehavioralConie(Prior pick_dist, std::array<Rational, 6> switch_prob);

  static BehavioralConie pure(const ConiePureStrategy& c);
  /// Uniform pick, always switch.
  static BehavioralConie uniform_switcher();

  const Rational& switch_at(const InfoSet& s) const { return switch_prob[s.index()]; }
};

MixedConie behavioral_to_mixed_conie(const BehavioralConie& b);
MixedMonte behavioral_to_mixed_monte(const BehavioralHost& h);

/// Exact win probability of a behavioral pair, by walking the game tree.
Rational behavioral_win_probability(const BehavioralHost& h, const BehavioralConie& b);

/// Random source for simulation.
///
/// Stream derivation: the engine for (seed, stream) is std::mt19937_64 seeded
/// with splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15). Bounded integer
/// draws use rejection sampling on raw 64-bit outputs, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Inverse-CDF sampler for a finite rational distribution. All weights are
/// scaled to a common integer denominator, so the branch probabilities are
/// exactly the rational weights.
class RationalSampler {
 public:
  explicit RationalSampler(const std::vector<Rational>& weights);

  std::size_t operator()(Rng& rng) const;

 private:
  std::uint64_t denominator_ = 1;
  std::vector<std::uint64_t> cumulative_;
};

/// Precomputed samplers for one (host, contestant) pair.
class PlaySampler {
 public:
  PlaySampler(const BehavioralHost& h, const BehavioralConie& b);

  PlayRecord operator()(Rng& rng) const;

 private:
  RationalSampler theta_;
  RationalSampler pick_;
  std::array<RationalSampler, 3> smaller_offer_;  // per θ: [smaller, larger]
  std::array<RationalSampler, 6> switch_;         // per information set: [switch, hold]
};

PlayRecord sample_play(Rng& rng, const BehavioralHost& h, const BehavioralConie& b);

struct InfoSetTally {
  std::uint64_t visits = 0;
  std::uint64_t switch_wins = 0;  // visits where the prize was behind the offered door
  std::uint64_t hold_wins = 0;    // visits where the prize was behind the pick

  InfoSetTally& operator+=(const InfoSetTally& o);
  friend bool operator==(const InfoSetTally&, const InfoSetTally&) = default;
};

struct SimulationStats {
  std::uint64_t rounds = 0;
  std::uint64_t wins = 0;
  std::uint64_t seed = 0;
  std::array<InfoSetTally, 6> per_info_set{};

  double win_rate() const { return rounds == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(rounds); }
  void record(const PlayRecord& r);
  SimulationStats& operator+=(const SimulationStats& o);
  friend bool operator==(const SimulationStats&, const SimulationStats&) = default;
};

/// Rounds per independent substream. Chunk k draws from stream k, so results
/// do not depend on how chunks are spread across workers.
inline constexpr std::uint64_t kRoundsPerChunk = 4096;

SimulationStats simulate(const BehavioralHost& h, const BehavioralConie& b, std::uint64_t rounds,
                         std::uint64_t seed, unsigned workers = 1);

}  // namespace monty
