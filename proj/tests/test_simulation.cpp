#include <gtest/gtest.h>

#include <cmath>

#include "monty/error.hpp"
#include "monty/simulation.hpp"
#include "test_support.hpp"

namespace monty {
namespace {

using testing::RationalGen;

ConiePureStrategy C(const char* code) { return ConiePureStrategy::parse(code); }

BehavioralHost pure_host(const MontePureStrategy& m) {
  Prior pi{0, 0, 0};
  pi[m.theta.index()] = 1;
  std::array<Rational, 3> lambda{Rational(1, 2), Rational(1, 2), Rational(1, 2)};
  lambda[m.theta.index()] = m.offers_smaller() ? 1 : 0;
  return {pi, lambda};
}

BehavioralConie random_conie(RationalGen& gen) {
  return {gen.prior(true), {gen.unit(), gen.unit(), gen.unit(), gen.unit(), gen.unit(), gen.unit()}};
}

double four_sigma(double p, double n) { return 4.0 * std::sqrt(p * (1.0 - p) / n); }

TEST(BehavioralToMixedConie, NamedStrategies) {
  // Pick 2, switch at *21, hold at *23.
  const BehavioralConie det({0, 1, 0}, {0, 0, 1, 0, 0, 0});
  EXPECT_EQ(behavioral_to_mixed_conie(det), point_mass(C("2sm")));
  EXPECT_EQ(behavioral_to_mixed_conie(BehavioralConie::uniform_switcher()), MixedConie::uniform_over({0, 4, 8}));
  const Rational t(1, 3), h(1, 2);
  const BehavioralConie coin({t, t, t}, {h, h, h, h, h, h});
  EXPECT_EQ(behavioral_to_mixed_conie(coin), MixedConie::uniform());
  for (const auto& c : enumerate_conie()) EXPECT_EQ(behavioral_to_mixed_conie(BehavioralConie::pure(c)), point_mass(c));
}

TEST(BehavioralToMixedMonte, NamedHosts) {
  EXPECT_EQ(behavioral_to_mixed_monte(BehavioralHost::crawl()), MixedMonte::uniform_over({0, 2, 4}));
  EXPECT_EQ(behavioral_to_mixed_monte(BehavioralHost({0, 1, 0}, {0, 0, 0})),
            point_mass(MontePureStrategy::parse("23")));
  EXPECT_EQ(behavioral_to_mixed_monte(BehavioralHost::uniform()), MixedMonte::uniform());
  for (const auto& m : enumerate_monte()) EXPECT_EQ(behavioral_to_mixed_monte(pure_host(m)), point_mass(m));
}

TEST(BehavioralConie, Validation) {
  const Rational t(1, 3);
  EXPECT_THROW(BehavioralConie({t, t, t}, {2, 0, 0, 0, 0, 0}), Error);
  EXPECT_THROW(BehavioralConie({t, t, 0}, {0, 0, 0, 0, 0, 0}), Error);
}

TEST(KuhnEquivalence, ContestantSideAgainstEveryPureHost) {
  RationalGen gen(31);
  for (int i = 0; i < 150; ++i) {
    const BehavioralConie b = random_conie(gen);
    const MixedConie p = behavioral_to_mixed_conie(b);
    EXPECT_EQ(p.weights().sum(), Rational(1));
    for (const auto& m : enumerate_monte()) {
      EXPECT_EQ(behavioral_win_probability(pure_host(m), b), expected_payoff(p, point_mass(m)));
    }
  }
}

TEST(KuhnEquivalence, HostSideAgainstEveryPureContestant) {
  RationalGen gen(32);
  for (int i = 0; i < 150; ++i) {
    const BehavioralHost h(gen.prior(true), {gen.unit(), gen.unit(), gen.unit()});
    const MixedMonte q = behavioral_to_mixed_monte(h);
    for (const auto& c : enumerate_conie()) {
      EXPECT_EQ(behavioral_win_probability(h, BehavioralConie::pure(c)), expected_payoff(point_mass(c), q));
      EXPECT_EQ(behavioral_win_probability(h, BehavioralConie::pure(c)),
                testing::oracle_win_probability(c.code(), h.pi, h.lambda));
    }
  }
}

TEST(Rng, DeterministicPerSeedAndStream) {
  Rng a(7, 0), b(7, 0), c(7, 1), d(8, 0);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs_c = differs_c || x != c.next();
    differs_d = differs_d || x != d.next();
  }
  EXPECT_TRUE(differs_c);
  EXPECT_TRUE(differs_d);
}

TEST(Rng, BelowStaysInRangeAndCoversIt) {
  Rng r(3);
  std::array<int, 7> hits{};
  for (int i = 0; i < 7000; ++i) {
    const auto x = r.below(7);
    ASSERT_LT(x, 7u);
    ++hits[x];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_THROW(r.below(0), Error);
}

TEST(RationalSampler, FrequenciesAndLimits) {
  const RationalSampler s({Rational(1, 2), Rational(3, 10), Rational(1, 5)});
  Rng r(5);
  std::array<int, 3> hits{};
  constexpr int kN = 100000;
  for (int i = 0; i < kN; ++i) ++hits[s(r)];
  const double expect[3] = {0.5, 0.3, 0.2};
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(hits[k] / double(kN), expect[k], four_sigma(expect[k], kN));
  // Zero-probability branches never fire.
  const RationalSampler z({0, 1, 0});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(z(r), 1u);
  EXPECT_THROW(RationalSampler({Rational::parse("1/18446744073709551629"),
                                Rational(1) - Rational::parse("1/18446744073709551629")}),
               Error);
}

TEST(SamplePlay, DegenerateProfilesReproducePurePlay) {
  Rng rng(1);
  for (const auto& m : enumerate_monte()) {
    for (const auto& c : enumerate_conie()) {
      const PlayRecord r = sample_play(rng, pure_host(m), BehavioralConie::pure(c));
      const PlayRecord e = play(m, c);
      EXPECT_EQ(r.theta, e.theta);
      EXPECT_EQ(r.pick, e.pick);
      EXPECT_EQ(r.offer, e.offer);
      EXPECT_EQ(r.final, e.final);
      EXPECT_EQ(r.win, e.win);
    }
  }
}

TEST(SamplePlay, ReplayIsIdenticalAndRecordsAreLegal) {
  RationalGen gen(33);
  for (int i = 0; i < 20; ++i) {
    const BehavioralHost h(gen.prior(true), {gen.unit(), gen.unit(), gen.unit()});
    const BehavioralConie b = random_conie(gen);
    Rng r1(99, i), r2(99, i);
    for (int k = 0; k < 200; ++k) {
      const PlayRecord a = sample_play(r1, h, b);
      const PlayRecord c = sample_play(r2, h, b);
      EXPECT_NO_THROW(a.validate());
      EXPECT_EQ(a.theta, c.theta);
      EXPECT_EQ(a.offer, c.offer);
      EXPECT_EQ(a.final, c.final);
    }
  }
}

TEST(Simulate, RejectsZeroRounds) {
  EXPECT_THROW(simulate(BehavioralHost::uniform(), BehavioralConie::uniform_switcher(), 0, 1), Error);
}

TEST(Simulate, SingleRoundOfAPureProfile) {
  const SimulationStats s = simulate(pure_host(MontePureStrategy::parse("12")), BehavioralConie::pure(C("1mm")), 1, 4);
  EXPECT_EQ(s.rounds, 1u);
  EXPECT_EQ(s.wins, 1u);
  EXPECT_EQ(s.seed, 4u);
}

TEST(Simulate, WorkerCountDoesNotChangeResults) {
  const auto h = BehavioralHost({Rational(1, 2), Rational(3, 10), Rational(1, 5)}, {Rational(1, 2), 0, 1});
  const auto b = BehavioralConie::uniform_switcher();
  const SimulationStats one = simulate(h, b, 20000, 17, 1);
  const SimulationStats four = simulate(h, b, 20000, 17, 4);
  EXPECT_EQ(one, four);
  EXPECT_EQ(one, simulate(h, b, 20000, 17, 1));
  EXPECT_NE(one.wins, simulate(h, b, 20000, 18, 1).wins);
}

struct Fixture {
  const char* name;
  BehavioralHost host;
  BehavioralConie conie;
  Rational exact;
};

std::vector<Fixture> fixtures() {
  const Rational t(1, 3), h(1, 2);
  return {
      {"crawl vs 1ss", BehavioralHost::crawl(), BehavioralConie::pure(C("1ss")), Rational(2, 3)},
      {"skewed vs 3ss", BehavioralHost({h, Rational(3, 10), Rational(1, 5)}, {h, h, h}), BehavioralConie::pure(C("3ss")),
       Rational(4, 5)},
      {"fair vs coin", BehavioralHost::uniform(), BehavioralConie({t, t, t}, {h, h, h, h, h, h}), Rational(1, 2)},
  };
}

TEST(Simulate, ConvergesWithinFourSigmaOfExactPayoff) {
  constexpr std::uint64_t kRounds = 100000;
  for (const auto& f : fixtures()) {
    const Rational exact = expected_payoff(behavioral_to_mixed_conie(f.conie), behavioral_to_mixed_monte(f.host));
    EXPECT_EQ(exact, f.exact) << f.name;
    const SimulationStats s = simulate(f.host, f.conie, kRounds, 1);
    EXPECT_EQ(s.rounds, kRounds);
    const double p = exact.to_double();
    EXPECT_NEAR(s.win_rate(), p, four_sigma(p, kRounds)) << f.name;
  }
}

TEST(Simulate, PerInformationSetPosteriorsConverge) {
  RationalGen gen(34);
  for (int i = 0; i < 5; ++i) {
    const BehavioralHost h(gen.prior(), {gen.unit(), gen.unit(), gen.unit()});
    const Rational t(1, 3);
    const SimulationStats s = simulate(h, BehavioralConie({t, t, t}, {1, 0, 1, 0, 1, 0}), 100000, 100 + i);
    for (const auto& set : enumerate_info_sets()) {
      const auto& tally = s.per_info_set[set.index()];
      EXPECT_EQ(tally.switch_wins + tally.hold_wins, tally.visits);
      if (tally.visits == 0) continue;
      const double p = posterior_switch_win(h, set.pick, set.offer).to_double();
      const double observed = double(tally.switch_wins) / double(tally.visits);
      EXPECT_NEAR(observed, p, four_sigma(p, double(tally.visits)) + 1e-12) << set.code();
    }
  }
}

}  // namespace
}  // namespace monty
