#include "monty/game.hpp"

#include <algorithm>

#include "monty/error.hpp"

namespace monty {

Door::Door(int value) : value_(value) {
  if (value < 1 || value > 3) {
    throw Error(ErrorCode::kInvalidDoor, "door must be 1, 2 or 3, got " + std::to_string(value));
  }
}

std::array<Door, 2> other_doors(Door d) {
  switch (d.value()) {
    case 1: return {Door(2), Door(3)};
    case 2: return {Door(1), Door(3)};
    default: return {Door(1), Door(2)};
  }
}

Door third_door(Door a, Door b) {
  if (a == b) throw Error(ErrorCode::kInvalidArgument, "third_door needs two distinct doors");
  return Door(6 - a.value() - b.value());
}

char action_letter(Action a) { return a == Action::kHold ? 'm' : 's'; }

std::string_view action_name(Action a) { return a == Action::kHold ? "hold" : "switch"; }

Action parse_action_name(std::string_view text) {
  if (text == "hold" || text == "m") return Action::kHold;
  if (text == "switch" || text == "s") return Action::kSwitch;
  throw Error(ErrorCode::kParseError, "action must be \"hold\" or \"switch\"");
}

namespace {

Door parse_door_char(char c, std::string_view code) {
  if (c < '1' || c > '3') {
    throw Error(ErrorCode::kParseError, "bad door in strategy code \"" + std::string(code) + "\"");
  }
  return Door(c - '0');
}

Action parse_action_char(char c, std::string_view code) {
  if (c == 's') return Action::kSwitch;
  if (c == 'm') return Action::kHold;
  throw Error(ErrorCode::kParseError, "bad action in strategy code \"" + std::string(code) + "\"");
}

}  // namespace

MontePureStrategy::MontePureStrategy(Door theta, Door offer_on_match)
    : theta(theta), offer_on_match(offer_on_match) {
  if (theta == offer_on_match) {
    throw Error(ErrorCode::kInvalidArgument, "host cannot offer the prize door on a match");
  }
}

std::string MontePureStrategy::code() const {
  return {static_cast<char>('0' + theta.value()), static_cast<char>('0' + offer_on_match.value())};
}

MontePureStrategy MontePureStrategy::parse(std::string_view code) {
  if (code.size() != 2) {
    throw Error(ErrorCode::kParseError, "host strategy code must look like \"12\"");
  }
  const Door theta = parse_door_char(code[0], code);
  const Door offer = parse_door_char(code[1], code);
  if (theta == offer) {
    throw Error(ErrorCode::kParseError, "host strategy \"" + std::string(code) + "\" offers the prize door");
  }
  return {theta, offer};
}

int MontePureStrategy::index() const { return 2 * theta.index() + (offers_smaller() ? 0 : 1); }

std::string ConiePureStrategy::code() const {
  return {static_cast<char>('0' + pick.value()), action_letter(on_smaller_offer),
          action_letter(on_larger_offer)};
}

ConiePureStrategy ConiePureStrategy::parse(std::string_view code) {
  if (code.size() != 3) {
    throw Error(ErrorCode::kParseError, "contestant strategy code must look like \"2sm\"");
  }
  return {parse_door_char(code[0], code), parse_action_char(code[1], code),
          parse_action_char(code[2], code)};
}

int ConiePureStrategy::index() const {
  // ss, ms, sm, mm within each pick.
  const int smaller = on_smaller_offer == Action::kSwitch ? 0 : 1;
  const int larger = on_larger_offer == Action::kSwitch ? 0 : 2;
  return 4 * pick.index() + smaller + larger;
}

ConiePureStrategy always_switch(Door pick) { return {pick, Action::kSwitch, Action::kSwitch}; }

InfoSet::InfoSet(Door pick, Door offer) : pick(pick), offer(offer) {
  if (pick == offer) throw Error(ErrorCode::kInvalidArgument, "offer must differ from pick");
}

std::string InfoSet::code() const {
  return {'*', static_cast<char>('0' + pick.value()), static_cast<char>('0' + offer.value())};
}

int InfoSet::index() const { return 2 * pick.index() + (offer == other_doors(pick)[0] ? 0 : 1); }

Action PlayRecord::action() const { return final == pick ? Action::kHold : Action::kSwitch; }

void PlayRecord::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (offer == pick) fail("offer equals pick");
  if (revealed == pick || revealed == offer) fail("revealed door is the pick or the offer");
  if (revealed == theta) fail("host revealed the prize");
  if (final != pick && final != offer) fail("final choice outside {pick, offer}");
  if (pick != theta && offer != theta) fail("mismatch without offering the prize door");
  if (win != (final == theta)) fail("win flag inconsistent with final choice");
}

const std::vector<MontePureStrategy>& enumerate_monte() {
  static const std::vector<MontePureStrategy> list = [] {
    std::vector<MontePureStrategy> out;
    for (Door theta : all_doors()) {
      for (Door offer : other_doors(theta)) out.emplace_back(theta, offer);
    }
    return out;
  }();
  return list;
}

const std::vector<ConiePureStrategy>& enumerate_conie() {
  static const std::vector<ConiePureStrategy> list = [] {
    std::vector<ConiePureStrategy> out;
    for (Door pick : all_doors()) {
      for (Action larger : {Action::kSwitch, Action::kHold}) {
        for (Action smaller : {Action::kSwitch, Action::kHold}) {
          out.push_back({pick, smaller, larger});
        }
      }
    }
    return out;
  }();
  return list;
}

const std::vector<InfoSet>& enumerate_info_sets() {
  static const std::vector<InfoSet> list = [] {
    std::vector<InfoSet> out;
    for (Door pick : all_doors()) {
      for (Door offer : other_doors(pick)) out.emplace_back(pick, offer);
    }
    return out;
  }();
  return list;
}

PlayRecord make_record(Door theta, Door pick, Door offer, Action action) {
  PlayRecord r;
  r.theta = theta;
  r.pick = pick;
  r.offer = offer;
  r.final = action == Action::kHold ? pick : offer;
  r.revealed = third_door(pick, offer);
  r.win = r.final == theta;
  return r;
}

PlayRecord play(const MontePureStrategy& m, const ConiePureStrategy& c) {
  const Door offer = m.offer_for(c.pick);
  return make_record(m.theta, c.pick, offer, c.action_for(offer));
}

int payoff(const MontePureStrategy& m, const ConiePureStrategy& c) { return play(m, c).win ? 1 : 0; }

std::string GameTree::Leaf::code() const {
  return {static_cast<char>('0' + theta.value()), static_cast<char>('0' + pick.value()),
          static_cast<char>('0' + offer.value()), static_cast<char>('0' + final.value())};
}

std::string GameTree::DecisionPosition::code() const {
  return {static_cast<char>('0' + theta.value()), static_cast<char>('0' + pick.value()),
          static_cast<char>('0' + offer.value())};
}

int GameTree::winning_leaf_count() const {
  return static_cast<int>(std::count_if(leaves.begin(), leaves.end(), [](const Leaf& l) { return l.winning; }));
}

std::vector<GameTree::DecisionPosition> GameTree::positions_in(const InfoSet& s) const {
  std::vector<DecisionPosition> out;
  for (const auto& p : offer_layer) {
    if (p.info_set == s.index()) out.push_back(p);
  }
  return out;
}

GameTree build_game_tree() {
  GameTree tree;
  for (Door theta : all_doors()) {
    tree.hide_layer.push_back(theta);
    for (Door pick : all_doors()) {
      tree.pick_layer.emplace_back(theta, pick);
      std::vector<Door> offers;
      if (pick == theta) {
        const auto others = other_doors(pick);
        offers.assign(others.begin(), others.end());
      } else {
        offers.push_back(theta);
      }
      for (Door offer : offers) {
        tree.offer_layer.push_back({theta, pick, offer, InfoSet(pick, offer).index()});
        for (Door final : {pick, offer}) {
          tree.leaves.push_back({theta, pick, offer, final, final == theta});
        }
      }
    }
  }
  return tree;
}

}  // namespace monty
