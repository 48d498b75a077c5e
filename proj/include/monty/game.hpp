#pragma once

// Extensive-form model of the three-door game between the host (Monte, who
// hides the prize and makes the switch offer) and the contestant (Conie, who
// picks a door and finally holds or switches).
//
// Canonical orderings are frozen here; every mixed-strategy vector elsewhere
// in the library is aligned to them.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace monty {

/// Door number in {1, 2, 3}.
class Door {
 public:
  constexpr Door() = default;
  explicit Door(int value);

  constexpr int value() const { return value_; }
  constexpr int index() const { return value_ - 1; }

  friend constexpr bool operator==(Door, Door) = default;
  friend constexpr auto operator<=>(Door, Door) = default;

 private:
  int value_ = 1;
};

inline const std::array<Door, 3>& all_doors() {
  static const std::array<Door, 3> doors{Door(1), Door(2), Door(3)};
  return doors;
}

/// The two doors other than `d`, in increasing order.
std::array<Door, 2> other_doors(Door d);

/// The unique door outside {a, b}; requires a != b.
Door third_door(Door a, Door b);

enum class Action : std::uint8_t { kHold, kSwitch };

char action_letter(Action a);  // 'm' for hold, 's' for switch
std::string_view action_name(Action a);  // "hold" / "switch"
Action parse_action_name(std::string_view text);

/// A pure host plan: the prize door and the door offered for switching when
/// the contestant's pick matches it. Code "θy", e.g. "12".
struct MontePureStrategy {
  Door theta;
  Door offer_on_match;

  MontePureStrategy(Door theta, Door offer_on_match);

  /// Door offered when the contestant picks `pick`.
  Door offer_for(Door pick) const { return pick == theta ? offer_on_match : theta; }
  bool offers_smaller() const { return offer_on_match == other_doors(theta)[0]; }

  std::string code() const;
  static MontePureStrategy parse(std::string_view code);
  /// Position in the canonical order [12, 13, 21, 23, 31, 32].
  int index() const;

  friend bool operator==(const MontePureStrategy&, const MontePureStrategy&) = default;
};

/// A pure contestant plan: the initial pick and the action taken at each of
/// the two possible offers, keyed by whether the offered door is the smaller
/// or larger of the two doors other than the pick. Code like "2sm".
struct ConiePureStrategy {
  Door pick;
  Action on_smaller_offer = Action::kSwitch;
  Action on_larger_offer = Action::kSwitch;

  Action action_for(Door offer) const {
    return offer == other_doors(pick)[0] ? on_smaller_offer : on_larger_offer;
  }
  bool always_switches() const {
    return on_smaller_offer == Action::kSwitch && on_larger_offer == Action::kSwitch;
  }
  bool context_dependent() const { return on_smaller_offer != on_larger_offer; }

  std::string code() const;
  static ConiePureStrategy parse(std::string_view code);
  /// Position in the canonical order 1ss,1ms,1sm,1mm,2ss,...,3mm.
  int index() const;

  friend bool operator==(const ConiePureStrategy&, const ConiePureStrategy&) = default;
};

ConiePureStrategy always_switch(Door pick);

/// Contestant's information at her second move: her pick and the offered door.
struct InfoSet {
  Door pick;
  Door offer;

  InfoSet(Door pick, Door offer);

  std::string code() const;  // "*21"
  int index() const;         // position in *12,*13,*21,*23,*31,*32

  friend bool operator==(const InfoSet&, const InfoSet&) = default;
};

struct PlayRecord {
  Door theta;
  Door pick;
  Door offer;
  Door final;
  Door revealed;
  bool win = false;

  Action action() const;
  /// Throws if any rule of the game is violated by this record.
  void validate() const;
};

/// Canonical orderings.
const std::vector<MontePureStrategy>& enumerate_monte();
const std::vector<ConiePureStrategy>& enumerate_conie();
const std::vector<InfoSet>& enumerate_info_sets();

inline constexpr int kMonteCount = 6;
inline constexpr int kConieCount = 12;

/// Deterministic course of play for a pure profile.
PlayRecord play(const MontePureStrategy& m, const ConiePureStrategy& c);

/// Builds a record from the four moves, deriving the revealed door and win.
PlayRecord make_record(Door theta, Door pick, Door offer, Action action);

int payoff(const MontePureStrategy& m, const ConiePureStrategy& c);

/// Layered game tree of move sequences θ, θx, θxy, θxyz.
struct GameTree {
  struct Leaf {
    Door theta;
    Door pick;
    Door offer;
    Door final;
    bool winning;
    std::string code() const;  // "1121"
  };
  struct DecisionPosition {
    Door theta;
    Door pick;
    Door offer;
    int info_set;  // index into enumerate_info_sets()
    std::string code() const;  // "121"
  };

  std::vector<Door> hide_layer;                         // θ
  std::vector<std::pair<Door, Door>> pick_layer;        // (θ, x)
  std::vector<DecisionPosition> offer_layer;            // (θ, x, y)
  std::vector<Leaf> leaves;                             // (θ, x, y, z)

  int winning_leaf_count() const;
  /// Offer-layer positions belonging to the given information set.
  std::vector<DecisionPosition> positions_in(const InfoSet& s) const;
};

GameTree build_game_tree();

}  // namespace monty
