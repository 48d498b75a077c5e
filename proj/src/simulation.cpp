#include "monty/simulation.hpp"

#include <algorithm>
#include <limits>
#include <thread>

#include "monty/error.hpp"

namespace monty {

BehavioralConie::BehavioralConie(Prior pick_dist_in, std::array<Rational, 6> switch_prob_in)
    : pick_dist(std::move(pick_dist_in)), switch_prob(std::move(switch_prob_in)) {
  validate_prior(pick_dist);
  for (const auto& s : switch_prob) {
    if (s.sign() < 0 || s > Rational(1)) {
      throw Error(ErrorCode::kInvalidDistribution, "switch probability must lie in [0,1], got " + s.str());
    }
  }
}

BehavioralConie BehavioralConie::pure(const ConiePureStrategy& c) {
  Prior pick{Rational(0), Rational(0), Rational(0)};
  pick[c.pick.index()] = 1;
  std::array<Rational, 6> sw;
  for (const auto& s : enumerate_info_sets()) {
    // Only the information sets after this pick are ever reached.
    const Action a = s.pick == c.pick ? c.action_for(s.offer) : Action::kSwitch;
    sw[s.index()] = a == Action::kSwitch ? 1 : 0;
  }
  return {pick, sw};
}

BehavioralConie BehavioralConie::uniform_switcher() {
  const Rational third(1, 3);
  std::array<Rational, 6> sw;
  sw.fill(Rational(1));
  return {{third, third, third}, sw};
}

MixedConie behavioral_to_mixed_conie(const BehavioralConie& b) {
  auto prob = [&](Door pick, Door offer, Action a) {
    const Rational& s = b.switch_at(InfoSet(pick, offer));
    return a == Action::kSwitch ? s : Rational(1) - s;
  };
  MixedConie::Weights w;
  for (const auto& c : enumerate_conie()) {
    const auto others = other_doors(c.pick);
    w(c.index()) = b.pick_dist[c.pick.index()] * prob(c.pick, others[0], c.on_smaller_offer) *
                   prob(c.pick, others[1], c.on_larger_offer);
  }
  return MixedConie(w);
}

MixedMonte behavioral_to_mixed_monte(const BehavioralHost& h) { return host_to_mixed(h); }

Rational behavioral_win_probability(const BehavioralHost& h, const BehavioralConie& b) {
  Rational total(0);
  for (Door theta : all_doors()) {
    for (Door pick : all_doors()) {
      for (Door offer : other_doors(pick)) {
        const Rational reach = h.pi[theta.index()] * b.pick_dist[pick.index()] * h.offer_probability(theta, pick, offer);
        if (reach.is_zero()) continue;
        const Rational& s = b.switch_at(InfoSet(pick, offer));
        if (offer == theta) total += reach * s;
        if (pick == theta) total += reach * (Rational(1) - s);
      }
    }
  }
  return total;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL)) {}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "empty sampling range");
  // Largest multiple of bound representable; reject draws at or above it.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    ++draws_;
    if (x < limit) return x % bound;
  }
}

RationalSampler::RationalSampler(const std::vector<Rational>& weights) {
  mpz_class den = 1;
  for (const auto& w : weights) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.get().get_den_mpz_t());
  if (den > mpz_class("9223372036854775807")) {
    throw Error(ErrorCode::kInvalidDistribution, "probabilities need a common denominator below 2^63");
  }
  denominator_ = std::stoull(den.get_str());
  std::uint64_t running = 0;
  for (const auto& w : weights) {
    const mpz_class scaled = w.get().get_num() * (den / w.get().get_den());
    running += std::stoull(scaled.get_str());
    cumulative_.push_back(running);
  }
  if (running != denominator_) throw Error(ErrorCode::kInvalidDistribution, "sampler weights do not sum to 1");
}

std::size_t RationalSampler::operator()(Rng& rng) const {
  if (cumulative_.size() == 1) return 0;
  const std::uint64_t u = rng.below(denominator_);
  return static_cast<std::size_t>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
}

namespace {

RationalSampler coin(const Rational& p) { return RationalSampler({p, Rational(1) - p}); }

RationalSampler prior_sampler(const Prior& p) { return RationalSampler({p[0], p[1], p[2]}); }

}  // namespace

PlaySampler::PlaySampler(const BehavioralHost& h, const BehavioralConie& b)
    : theta_(prior_sampler(h.pi)),
      pick_(prior_sampler(b.pick_dist)),
      smaller_offer_{coin(h.lambda[0]), coin(h.lambda[1]), coin(h.lambda[2])},
      switch_{coin(b.switch_prob[0]), coin(b.switch_prob[1]), coin(b.switch_prob[2]),
              coin(b.switch_prob[3]), coin(b.switch_prob[4]), coin(b.switch_prob[5])} {}

PlayRecord PlaySampler::operator()(Rng& rng) const {
  const Door theta(static_cast<int>(theta_(rng)) + 1);
  const Door pick(static_cast<int>(pick_(rng)) + 1);
  Door offer = theta;
  if (pick == theta) offer = other_doors(theta)[smaller_offer_[theta.index()](rng)];
  const bool switches = switch_[InfoSet(pick, offer).index()](rng) == 0;
  return make_record(theta, pick, offer, switches ? Action::kSwitch : Action::kHold);
}

PlayRecord sample_play(Rng& rng, const BehavioralHost& h, const BehavioralConie& b) {
  return PlaySampler(h, b)(rng);
}

InfoSetTally& InfoSetTally::operator+=(const InfoSetTally& o) {
  visits += o.visits;
  switch_wins += o.switch_wins;
  hold_wins += o.hold_wins;
  return *this;
}

void SimulationStats::record(const PlayRecord& r) {
  ++rounds;
  if (r.win) ++wins;
  auto& t = per_info_set[InfoSet(r.pick, r.offer).index()];
  ++t.visits;
  if (r.theta == r.offer) ++t.switch_wins;
  if (r.theta == r.pick) ++t.hold_wins;
}

SimulationStats& SimulationStats::operator+=(const SimulationStats& o) {
  rounds += o.rounds;
  wins += o.wins;
  for (std::size_t i = 0; i < per_info_set.size(); ++i) per_info_set[i] += o.per_info_set[i];
  return *this;
}

SimulationStats simulate(const BehavioralHost& h, const BehavioralConie& b, std::uint64_t rounds,
                         std::uint64_t seed, unsigned workers) {
  if (rounds == 0) throw Error(ErrorCode::kInvalidArgument, "rounds must be at least 1");
  const PlaySampler sampler(h, b);
  const std::uint64_t chunks = (rounds + kRoundsPerChunk - 1) / kRoundsPerChunk;

  auto run_chunks = [&](std::uint64_t first, std::uint64_t stride) {
    SimulationStats s;
    for (std::uint64_t c = first; c < chunks; c += stride) {
      Rng rng(seed, c);
      const std::uint64_t n = std::min(kRoundsPerChunk, rounds - c * kRoundsPerChunk);
      for (std::uint64_t i = 0; i < n; ++i) s.record(sampler(rng));
    }
    return s;
  };

  SimulationStats total;
  workers = std::max(1u, workers);
  if (workers == 1) {
    total = run_chunks(0, 1);
  } else {
    std::vector<SimulationStats> parts(workers);
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back([&, w] { parts[w] = run_chunks(w, workers); });
    }
    for (const auto& p : parts) total += p;
  }
  total.seed = seed;
  return total;
}

}  // namespace monty
