#include <gtest/gtest.h>

#include <map>
#include <set>

#include "monty/error.hpp"
#include "monty/game.hpp"
#include "test_support.hpp"

namespace monty {
namespace {

std::vector<std::string> codes(const auto& list) {
  std::vector<std::string> out;
  for (const auto& x : list) out.push_back(x.code());
  return out;
}

TEST(Door, RejectsOutOfRange) {
  EXPECT_THROW(Door(0), Error);
  EXPECT_THROW(Door(4), Error);
  EXPECT_EQ(Door(3).value(), 3);
}

TEST(EnumerateMonte, CanonicalOrder) {
  const auto& m = enumerate_monte();
  ASSERT_EQ(m.size(), 6u);
  EXPECT_EQ(codes(m), (std::vector<std::string>{"12", "13", "21", "23", "31", "32"}));
  EXPECT_EQ(m[0].theta, Door(1));
  EXPECT_EQ(m[0].offer_on_match, Door(2));
  EXPECT_EQ(m[3].code(), "23");
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_NE(m[i].theta, m[i].offer_on_match);
    EXPECT_EQ(m[i].index(), static_cast<int>(i));
  }
}

TEST(EnumerateMonte, PrizeDoorCannotBeOffered) {
  EXPECT_THROW(MontePureStrategy::parse("22"), Error);
  EXPECT_THROW(MontePureStrategy(Door(2), Door(2)), Error);
}

TEST(EnumerateConie, CanonicalOrder) {
  const auto& c = enumerate_conie();
  ASSERT_EQ(c.size(), 12u);
  EXPECT_EQ(codes(c), testing::fixture_rows());
  EXPECT_EQ(c[0].code(), "1ss");
  EXPECT_TRUE(c[0].always_switches());
  const auto two_sm = ConiePureStrategy::parse("2sm");
  EXPECT_EQ(two_sm.pick, Door(2));
  EXPECT_EQ(two_sm.on_smaller_offer, Action::kSwitch);
  EXPECT_EQ(two_sm.on_larger_offer, Action::kHold);
  EXPECT_EQ(two_sm.action_for(Door(1)), Action::kSwitch);
  EXPECT_EQ(two_sm.action_for(Door(3)), Action::kHold);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_EQ(c[i].index(), static_cast<int>(i));
}

TEST(StrategyCodes, RoundTripAndRejectGarbage) {
  for (const auto& m : enumerate_monte()) EXPECT_EQ(MontePureStrategy::parse(m.code()), m);
  for (const auto& c : enumerate_conie()) EXPECT_EQ(ConiePureStrategy::parse(c.code()), c);
  for (const char* bad : {"", "1", "123", "4s", "1x", "0ss", "1sx", "2s", "1ssm"}) {
    EXPECT_THROW(ConiePureStrategy::parse(bad), Error) << bad;
  }
  for (const char* bad : {"", "1", "123", "14", "a2"}) EXPECT_THROW(MontePureStrategy::parse(bad), Error) << bad;
}

TEST(InfoSets, SixPickOfferPairs) {
  const auto& s = enumerate_info_sets();
  ASSERT_EQ(s.size(), 6u);
  EXPECT_EQ(codes(s), (std::vector<std::string>{"*12", "*13", "*21", "*23", "*31", "*32"}));
  for (const auto& i : s) EXPECT_NE(i.pick, i.offer);
  EXPECT_EQ(s[2], InfoSet(Door(2), Door(1)));
}

TEST(GameTree, LeafCountsMatchMoveEnumeration) {
  // Oracle: count admissible θ,x,y,z sequences directly.
  int leaves = 0, winning = 0;
  for (int t = 1; t <= 3; ++t)
    for (int x = 1; x <= 3; ++x)
      for (int y = 1; y <= 3; ++y) {
        if (y == x) continue;
        if (x != t && y != t) continue;
        for (int z : {x, y}) {
          ++leaves;
          winning += z == t;
        }
      }
  EXPECT_EQ(leaves, 24);
  EXPECT_EQ(winning, 12);

  const GameTree tree = build_game_tree();
  EXPECT_EQ(static_cast<int>(tree.leaves.size()), leaves);
  EXPECT_EQ(tree.winning_leaf_count(), winning);
  EXPECT_EQ(tree.hide_layer.size(), 3u);
  EXPECT_EQ(tree.pick_layer.size(), 9u);
  EXPECT_EQ(tree.offer_layer.size(), 12u);
}

TEST(GameTree, NamedLeavesAndInformationSets) {
  const GameTree tree = build_game_tree();
  auto leaf = [&](const std::string& code) {
    for (const auto& l : tree.leaves) {
      if (l.code() == code) return l;
    }
    ADD_FAILURE() << "missing leaf " << code;
    return tree.leaves.front();
  };
  EXPECT_TRUE(leaf("1121").winning);
  EXPECT_FALSE(leaf("1122").winning);
  EXPECT_TRUE(leaf("2212").winning);

  const auto star21 = tree.positions_in(InfoSet(Door(2), Door(1)));
  std::set<std::string> names;
  for (const auto& p : star21) names.insert(p.code());
  EXPECT_EQ(names, (std::set<std::string>{"121", "221"}));

  // Each offer-layer position lies in exactly one information set; sets cover all 12.
  std::size_t covered = 0;
  for (const auto& s : enumerate_info_sets()) covered += tree.positions_in(s).size();
  EXPECT_EQ(covered, tree.offer_layer.size());
}

TEST(GameTree, MatchHasTwoOffersMismatchOne) {
  const GameTree tree = build_game_tree();
  for (const auto& [theta, pick] : tree.pick_layer) {
    int children = 0;
    for (const auto& p : tree.offer_layer) children += p.theta == theta && p.pick == pick;
    EXPECT_EQ(children, theta == pick ? 2 : 1);
  }
  // Match paths: hold wins. Mismatch paths: switch wins.
  for (const auto& l : tree.leaves) {
    const bool hold = l.final == l.pick;
    EXPECT_EQ(l.winning, l.theta == l.pick ? hold : !hold) << l.code();
  }
}

TEST(Play, NamedProfiles) {
  auto run = [](const char* m, const char* c) {
    return play(MontePureStrategy::parse(m), ConiePureStrategy::parse(c));
  };
  const PlayRecord a = run("12", "2sm");
  EXPECT_EQ(a.theta, Door(1));
  EXPECT_EQ(a.pick, Door(2));
  EXPECT_EQ(a.offer, Door(1));
  EXPECT_EQ(a.final, Door(1));
  EXPECT_EQ(a.revealed, Door(3));
  EXPECT_TRUE(a.win);

  const PlayRecord b = run("21", "2ms");
  EXPECT_EQ(std::vector<int>({b.theta.value(), b.pick.value(), b.offer.value(), b.final.value()}),
            std::vector<int>({2, 2, 1, 2}));
  EXPECT_TRUE(b.win);

  const PlayRecord c = run("13", "1mm");
  EXPECT_EQ(std::vector<int>({c.theta.value(), c.pick.value(), c.offer.value(), c.final.value()}),
            std::vector<int>({1, 1, 3, 1}));
  EXPECT_TRUE(c.win);
}

TEST(Payoff, NamedEntries) {
  auto pay = [](const char* m, const char* c) {
    return payoff(MontePureStrategy::parse(m), ConiePureStrategy::parse(c));
  };
  EXPECT_EQ(pay("12", "1ss"), 0);
  EXPECT_EQ(pay("21", "1ss"), 1);
  EXPECT_EQ(pay("31", "3mm"), 1);
}

TEST(Play, AllProfilesSatisfyRules) {
  for (const auto& m : enumerate_monte()) {
    for (const auto& c : enumerate_conie()) {
      const PlayRecord r = play(m, c);
      EXPECT_NO_THROW(r.validate()) << m.code() << " " << c.code();
      EXPECT_NE(r.revealed, m.theta);
      if (r.pick != r.theta) EXPECT_EQ(r.offer, r.theta);
    }
  }
}

TEST(Play, InformationSetConsistency) {
  // Same contestant plan reaching the same information set acts the same way,
  // whatever the host did to get there.
  for (const auto& c : enumerate_conie()) {
    std::map<int, Action> seen;
    for (const auto& m : enumerate_monte()) {
      const PlayRecord r = play(m, c);
      const int set = InfoSet(r.pick, r.offer).index();
      const auto [it, inserted] = seen.emplace(set, r.action());
      if (!inserted) EXPECT_EQ(it->second, r.action()) << c.code();
    }
  }
}

TEST(PlayRecord, ValidateCatchesViolations) {
  PlayRecord r = make_record(Door(1), Door(2), Door(1), Action::kSwitch);
  EXPECT_NO_THROW(r.validate());
  PlayRecord bad = r;
  bad.win = false;
  EXPECT_THROW(bad.validate(), Error);
  bad = r;
  bad.revealed = Door(1);
  EXPECT_THROW(bad.validate(), Error);
  // Mismatch without offering the prize.
  EXPECT_THROW(make_record(Door(1), Door(2), Door(3), Action::kHold).validate(), Error);
}

TEST(Action, Names) {
  EXPECT_EQ(parse_action_name("hold"), Action::kHold);
  EXPECT_EQ(parse_action_name("switch"), Action::kSwitch);
  EXPECT_THROW(parse_action_name("stay"), Error);
  EXPECT_EQ(action_name(Action::kSwitch), "switch");
}

}  // namespace
}  // namespace monty
