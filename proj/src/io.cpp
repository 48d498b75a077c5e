#include "monty/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace monty::io {
namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto at = s.find(sep, start);
    out.push_back(trim(s.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

bool starts_with_brace(std::string_view text) {
  const auto at = text.find_first_not_of(" \t\r\n");
  return at != std::string_view::npos && text[at] == '{';
}

// Display width of UTF-8 text: one column per code point.
std::size_t width_of(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

// Left-aligned columns separated by `sep` spaces; numeric columns can be
// right-aligned by passing their indices.
std::string render_grid(const std::vector<std::vector<std::string>>& rows, int sep = 2,
                        const std::vector<std::size_t>& right = {}) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], width_of(r[j]));
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j > 0) line.append(static_cast<std::size_t>(sep), ' ');
      const std::size_t pad = width[j] - width_of(r[j]);
      const bool align_right = std::find(right.begin(), right.end(), j) != right.end();
      if (align_right) line.append(pad, ' ');
      line += r[j];
      if (!align_right && j + 1 < r.size()) line.append(pad, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line;
    out += '\n';
  }
  return out;
}

std::string braces(const std::vector<std::string>& items) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out + "}";
}

std::string tuple(const auto& values) {
  std::string out = "(";
  bool first = true;
  for (const auto& v : values) {
    out += (first ? "" : ", ") + v.str();
    first = false;
  }
  return out + ")";
}

std::vector<std::string> codes(const auto& list) {
  std::vector<std::string> out;
  for (const auto& x : list) out.push_back(x.code());
  return out;
}

std::vector<std::string> door_names(const std::vector<Door>& doors) {
  std::vector<std::string> out;
  for (Door d : doors) out.push_back(std::to_string(d.value()));
  return out;
}

Json door_list(const std::vector<Door>& doors) {
  Json out = Json::array();
  for (Door d : doors) out.push_back(d.value());
  return out;
}

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Whitespace-separated tokens with their source positions.
struct Token {
  std::string text;
  int line;
  int column;
};

struct Line {
  int number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text, int& end_line) {
  std::vector<Line> out;
  int number = 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line parsed{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      parsed.tokens.push_back({std::string(line.substr(start, i - start)), number, static_cast<int>(start) + 1});
    }
    if (!parsed.tokens.empty()) out.push_back(std::move(parsed));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
    ++number;
  }
  end_line = number;
  return out;
}

bool is_monte_code(const std::string& s) {
  try {
    MontePureStrategy::parse(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool looks_like_label(const std::string& s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

// 12 rows of 6 cells, labels checked against canonical order. Each cell is
// passed to `check` as soon as its row is read, so the first bad token is
// the one reported.
template <class Check>
std::vector<std::vector<Token>> parse_grid(std::string_view text, Check check) {
  int end_line = 1;
  std::vector<Line> lines = tokenize(text, end_line);
  std::size_t first = 0;
  if (!lines.empty() && lines[0].tokens.size() == kMonteCount &&
      std::all_of(lines[0].tokens.begin(), lines[0].tokens.end(), [](const Token& t) { return is_monte_code(t.text); })) {
    for (int j = 0; j < kMonteCount; ++j) {
      const Token& t = lines[0].tokens[j];
      if (t.text != enumerate_monte()[j].code()) {
        throw ParseError(t.line, t.column, "expected column " + enumerate_monte()[j].code() + ", found " + t.text);
      }
    }
    first = 1;
  }
  std::vector<std::vector<Token>> rows;
  for (std::size_t i = first; i < lines.size(); ++i) {
    std::vector<Token> cells = lines[i].tokens;
    if (rows.size() == kConieCount) {
      throw ParseError(cells.front().line, cells.front().column, "more than 12 rows");
    }
    if (looks_like_label(cells.front().text)) {
      const std::string expected = enumerate_conie()[rows.size()].code();
      if (cells.front().text != expected) {
        throw ParseError(cells.front().line, cells.front().column,
                         "expected row " + expected + ", found " + cells.front().text);
      }
      cells.erase(cells.begin());
    }
    if (cells.size() != kMonteCount) {
      const Token& at = cells.size() > kMonteCount ? cells[kMonteCount] : lines[i].tokens.back();
      throw ParseError(at.line, at.column, "expected 6 entries, found " + std::to_string(cells.size()));
    }
    for (const Token& t : cells) check(t);
    rows.push_back(std::move(cells));
  }
  if (rows.size() != kConieCount) {
    throw ParseError(end_line, 1, "expected 12 rows, found " + std::to_string(rows.size()));
  }
  return rows;
}

Rational parse_cell(const Token& t) {
  try {
    return Rational::parse(t.text);
  } catch (const Error&) {
    throw ParseError(t.line, t.column, "invalid rational '" + t.text + "'");
  }
}

void check_labels(const Json& j, const char* key, const std::vector<std::string>& expected) {
  if (!j.contains(key)) return;
  const Json& labels = j.at(key);
  if (!labels.is_array() || labels.size() != expected.size()) {
    throw Error(ErrorCode::kParseError, std::string(key) + ": expected " + std::to_string(expected.size()) + " labels");
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!labels[i].is_string() || labels[i].get<std::string>() != expected[i]) {
      throw Error(ErrorCode::kParseError, std::string(key) + ": labels must follow canonical order " + braces(expected));
    }
  }
}

const Json& entries_of(const Json& j) {
  const Json& e = j.is_object() && j.contains("entries") ? j.at("entries") : j;
  if (!e.is_array() || e.size() != kConieCount) {
    throw Error(ErrorCode::kParseError, "entries: expected 12 rows");
  }
  for (const auto& row : e) {
    if (!row.is_array() || row.size() != kMonteCount) {
      throw Error(ErrorCode::kParseError, "entries: expected 6 values per row");
    }
  }
  return e;
}

template <int N>
MixedStrategy<N> mixed_from_list(const std::vector<Rational>& values) {
  typename MixedStrategy<N>::Weights w;
  for (int i = 0; i < N; ++i) w(i) = values[i];
  return MixedStrategy<N>(w);
}

template <class Array>
Array array_from(const std::vector<Rational>& values) {
  Array out;
  std::copy(values.begin(), values.end(), out.begin());
  return out;
}

std::vector<Rational> json_rationals(const Json& j, std::size_t n, const std::string& what) {
  if (!j.is_array() || j.size() != n) {
    throw Error(ErrorCode::kParseError, what + ": expected a list of " + std::to_string(n) + " values");
  }
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v, what));
  return out;
}

BehavioralHost host_from_pure(const std::string& code) { return mixed_to_host(point_mass(MontePureStrategy::parse(code))); }

template <int N>
std::string mixture(const MixedStrategy<N>& s, const auto& labels) {
  const auto support = s.support();
  if (support.size() == 1) return labels[support.front()].code();
  std::string out;
  for (std::size_t i = 0; i < support.size(); ++i) {
    out += (i ? " + " : "") + s[support[i]].str() + " " + labels[support[i]].code();
  }
  return out;
}

std::string weight_cell(const Rational& r) { return r.is_zero() ? "0" : render_approx(r); }

}  // namespace

ParseError::ParseError(int line, int column, const std::string& detail)
    : Error(ErrorCode::kParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + detail),
      line_(line),
      column_(column),
      detail_(detail) {}

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  return {line, static_cast<int>(offset - line_start) + 1};
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is the 1-based index of the offending character.
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string detail = e.what();
    if (const auto colon = detail.rfind(": "); colon != std::string::npos) detail = detail.substr(colon + 2);
    throw ParseError(line, column, detail);
  }
}

Rational rational_from_json(const Json& j, const std::string& what) {
  try {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    // Shortest round-trip decimal, converted exactly.
    if (j.is_number_float()) return Rational::parse(j.dump());
  } catch (const Error&) {
  }
  throw Error(ErrorCode::kParseError, what + ": expected a rational such as \"2/3\", got " + j.dump());
}

std::vector<Rational> parse_rational_list(std::string_view text, std::size_t n, const std::string& what) {
  const auto parts = split(text, ',');
  if (parts.size() != n) {
    throw Error(ErrorCode::kParseError,
                what + ": expected " + std::to_string(n) + " values, found " + std::to_string(parts.size()));
  }
  std::vector<Rational> out;
  for (const auto& p : parts) {
    try {
      out.push_back(Rational::parse(p));
    } catch (const Error&) {
      throw Error(ErrorCode::kParseError, what + ": invalid rational '" + p + "'");
    }
  }
  return out;
}

Json to_json(const PayoffMatrix& m) {
  Json entries = Json::array();
  for (int i = 0; i < kConieCount; ++i) {
    Json row = Json::array();
    for (int j = 0; j < kMonteCount; ++j) row.push_back(m.entries()(i, j));
    entries.push_back(row);
  }
  return {{"rows", codes(enumerate_conie())}, {"columns", codes(enumerate_monte())}, {"entries", entries}};
}

PayoffMatrix matrix_from_json(const Json& j) {
  check_labels(j, "rows", codes(enumerate_conie()));
  check_labels(j, "columns", codes(enumerate_monte()));
  const Json& e = entries_of(j);
  ConieMatrix m;
  for (int i = 0; i < kConieCount; ++i) {
    for (int k = 0; k < kMonteCount; ++k) {
      const Json& v = e[i][k];
      if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
        throw Error(ErrorCode::kParseError, "entries: expected 0 or 1, got " + v.dump());
      }
      m(i, k) = v.get<int>();
    }
  }
  return PayoffMatrix(m);
}

std::string render_table(const PayoffMatrix& m) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{""};
  for (const auto& c : enumerate_monte()) header.push_back(c.code());
  rows.push_back(header);
  for (const auto& c : enumerate_conie()) {
    std::vector<std::string> r{c.code()};
    for (int j = 0; j < kMonteCount; ++j) r.push_back(std::to_string(m.entries()(c.index(), j)));
    rows.push_back(r);
  }
  return render_grid(rows, 1, {1, 2, 3, 4, 5, 6});
}

PayoffMatrix parse_matrix(std::string_view text) {
  if (starts_with_brace(text)) return matrix_from_json(parse_json(text));
  ConieMatrix m;
  const auto rows = parse_grid(text, [](const Token& t) {
    if (t.text != "0" && t.text != "1") throw ParseError(t.line, t.column, "expected 0 or 1, found " + t.text);
  });
  for (int i = 0; i < kConieCount; ++i) {
    for (int j = 0; j < kMonteCount; ++j) m(i, j) = rows[i][j].text == "1";
  }
  return PayoffMatrix(m);
}

Json to_json(const ReductionTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"kind", std::string(reduction_kind_name(s.kind))},
                     {"removed", s.removed},
                     {"justifiedBy", s.justified_by}});
  }
  Json terminal = Json::array();
  for (Eigen::Index i = 0; i < t.terminal.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < t.terminal.cols(); ++j) row.push_back(t.terminal(i, j));
    terminal.push_back(row);
  }
  return {{"steps", steps}, {"rows", codes(t.rows)}, {"columns", codes(t.columns)}, {"terminal", terminal}};
}

std::string render_table(const ReductionTrace& t) {
  std::vector<std::vector<std::string>> rows{{"step", "kind", "removed", "justified by"}};
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& s = t.steps[i];
    rows.push_back({std::to_string(i + 1), std::string(reduction_kind_name(s.kind)), s.removed, s.justified_by});
  }
  std::string out = render_grid(rows, 2, {0});
  out += "\nreduced matrix\n";
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{""};
  for (const auto& c : t.columns) header.push_back(c.code());
  grid.push_back(header);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    std::vector<std::string> r{t.rows[i].code()};
    for (Eigen::Index j = 0; j < t.terminal.cols(); ++j) r.push_back(std::to_string(t.terminal(i, j)));
    grid.push_back(r);
  }
  std::vector<std::size_t> right;
  for (std::size_t j = 1; j <= t.columns.size(); ++j) right.push_back(j);
  return out + render_grid(grid, 1, right);
}

HostPayoffMatrix parse_host_payoff(std::string_view text) {
  if (starts_with_brace(text)) return host_payoff_from_json(parse_json(text));
  HostPayoffMatrix h;
  const auto rows = parse_grid(text, [](const Token& t) { parse_cell(t); });
  for (int i = 0; i < kConieCount; ++i) {
    for (int j = 0; j < kMonteCount; ++j) h(i, j) = parse_cell(rows[i][j]);
  }
  return h;
}

HostPayoffMatrix host_payoff_preset(std::string_view name) {
  if (name == "antagonistic") return antagonistic_host();
  if (name == "sympathetic") return sympathetic_host();
  if (name == "indifferent") return indifferent_host();
  throw Error(ErrorCode::kInvalidArgument,
              "unknown host payoff preset '" + std::string(name) + "' (antagonistic, sympathetic, indifferent)");
}

HostPayoffMatrix host_payoff_from_json(const Json& j) {
  if (j.is_string()) return host_payoff_preset(j.get<std::string>());
  if (j.is_object() && j.contains("preset")) return host_payoff_preset(j.at("preset").get<std::string>());
  if (j.is_object() && j.contains("text")) return parse_host_payoff(j.at("text").get<std::string>());
  if (j.is_object()) {
    check_labels(j, "rows", codes(enumerate_conie()));
    check_labels(j, "columns", codes(enumerate_monte()));
  }
  const Json& e = entries_of(j);
  HostPayoffMatrix h;
  for (int i = 0; i < kConieCount; ++i) {
    for (int k = 0; k < kMonteCount; ++k) h(i, k) = rational_from_json(e[i][k], "entries");
  }
  return h;
}

Json to_json(const HostPayoffMatrix& h) {
  Json entries = Json::array();
  for (int i = 0; i < kConieCount; ++i) {
    Json row = Json::array();
    for (int j = 0; j < kMonteCount; ++j) row.push_back(h(i, j).str());
    entries.push_back(row);
  }
  return {{"rows", codes(enumerate_conie())}, {"columns", codes(enumerate_monte())}, {"entries", entries}};
}

Json to_json(const MixedConie& p) {
  Json support = Json::array();
  for (int i : p.support()) support.push_back(enumerate_conie()[i].code());
  return {{"weights", rational_list(p.weights())}, {"support", support}};
}

Json to_json(const MixedMonte& q) {
  Json support = Json::array();
  for (int i : q.support()) support.push_back(enumerate_monte()[i].code());
  return {{"weights", rational_list(q.weights())}, {"support", support}};
}

Json to_json(const BehavioralHost& h) { return {{"pi", rational_list(h.pi)}, {"lambda", rational_list(h.lambda)}}; }

Json to_json(const BehavioralConie& b) {
  return {{"pick", rational_list(b.pick_dist)}, {"switch", rational_list(b.switch_prob)}};
}

std::string render_support(const MixedConie& p) {
  std::vector<std::string> out;
  for (int i : p.support()) out.push_back(enumerate_conie()[i].code());
  return braces(out);
}

std::string render_support(const MixedMonte& q) {
  std::vector<std::string> out;
  for (int i : q.support()) out.push_back(enumerate_monte()[i].code());
  return braces(out);
}

BehavioralHost host_from_json(const Json& j) {
  if (j.is_string()) return parse_host_spec(j.get<std::string>());
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "host: expected an object or a string");
  if (j.contains("pure")) return host_from_pure(j.at("pure").get<std::string>());
  if (j.contains("mixed")) return mixed_to_host(mixed_from_list<kMonteCount>(json_rationals(j.at("mixed"), 6, "mixed")));
  if (!j.contains("pi")) throw Error(ErrorCode::kParseError, "host: expected \"pi\", \"mixed\" or \"pure\"");
  const auto pi = json_rationals(j.at("pi"), 3, "pi");
  std::vector<Rational> lambda(3, Rational(1, 2));
  if (j.contains("lambda")) lambda = json_rationals(j.at("lambda"), 3, "lambda");
  return {array_from<Prior>(pi), array_from<std::array<Rational, 3>>(lambda)};
}

BehavioralHost parse_host_spec(std::string_view spec) {
  std::string s = trim(spec);
  if (s == "crawl") return BehavioralHost::crawl();
  if (s == "uniform") return BehavioralHost::uniform();
  if (s.rfind("mixed:", 0) == 0) {
    return mixed_to_host(mixed_from_list<kMonteCount>(parse_rational_list(s.substr(6), 6, "mixed host")));
  }
  if (s.rfind("behavioral:", 0) == 0) s = s.substr(11);
  const auto parts = split(s, ';');
  if (parts.size() == 2) {
    return {array_from<Prior>(parse_rational_list(parts[0], 3, "pi")),
            array_from<std::array<Rational, 3>>(parse_rational_list(parts[1], 3, "lambda"))};
  }
  if (is_monte_code(s)) return host_from_pure(s);
  throw Error(ErrorCode::kParseError, "host spec '" + std::string(spec) +
                                          "': expected crawl, uniform, a code like 12, mixed:w1,...,w6 or pi;lambda");
}

BehavioralConie parse_conie_spec(std::string_view spec) {
  std::string s = trim(spec);
  if (s == "switcher") return BehavioralConie::uniform_switcher();
  if (s.rfind("behavioral:", 0) == 0) {
    const auto parts = split(s.substr(11), ';');
    if (parts.size() != 2) throw Error(ErrorCode::kParseError, "behavioral contestant: expected pick;switch");
    return {array_from<Prior>(parse_rational_list(parts[0], 3, "pick")),
            array_from<std::array<Rational, 6>>(parse_rational_list(parts[1], 6, "switch"))};
  }
  return BehavioralConie::pure(ConiePureStrategy::parse(s));
}

Json to_json(const SolveResult& r) {
  Json guarantees = Json::object();
  for (const auto& m : enumerate_monte()) guarantees[m.code()] = r.conie_guarantees[m.index()].str();
  Json concessions = Json::object();
  for (const auto& c : enumerate_conie()) concessions[c.code()] = r.monte_concessions[c.index()].str();
  return {{"value", r.value.str()},
          {"conieMinimax", to_json(r.conie_minimax)},
          {"monteMinimax", to_json(r.monte_minimax)},
          {"conieGuarantees", guarantees},
          {"monteConcessions", concessions},
          {"reduction", to_json(r.reduction)},
          {"reducedGame",
           {{"rows", codes(r.reduction.rows)},
            {"columns", codes(r.reduction.columns)},
            {"conie", rational_list(r.reduced_conie)},
            {"monte", rational_list(r.reduced_monte)}}}};
}

std::string render_table(const SolveResult& r) {
  std::ostringstream out;
  out << "value = " << render_approx(r.value) << "\n";
  out << "conie minimax support = " << render_support(r.conie_minimax) << "\n";
  out << "monte minimax support = " << render_support(r.monte_minimax) << "\n\n";
  std::vector<std::vector<std::string>> conie{{"conie", "weight", "payoff vs monte minimax"}};
  for (const auto& c : enumerate_conie()) {
    conie.push_back({c.code(), weight_cell(r.conie_minimax[c.index()]), render_approx(r.monte_concessions[c.index()])});
  }
  out << render_grid(conie) << "\n";
  std::vector<std::vector<std::string>> monte{{"monte", "weight", "conie minimax payoff"}};
  for (const auto& m : enumerate_monte()) {
    monte.push_back({m.code(), weight_cell(r.monte_minimax[m.index()]), render_approx(r.conie_guarantees[m.index()])});
  }
  out << render_grid(monte) << "\n";
  out << render_table(r.reduction);
  return out.str();
}

BayesReport make_bayes_report(const BehavioralHost& h) {
  const MixedMonte q = host_to_mixed(h);
  BayesReport r{h, bayes_best_response(q), bayes_value_formula(h.pi), least_likely_doors(h.pi), exclusion_rules(q), {}};
  for (const auto& s : enumerate_info_sets()) {
    try {
      r.posteriors[s.index()] = posterior_switch_win(h, s.pick, s.offer);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnreachable) throw;
    }
  }
  return r;
}

Json to_json(const BayesReport& r) {
  Json posteriors = Json::object();
  for (const auto& s : enumerate_info_sets()) {
    const auto& p = r.posteriors[s.index()];
    posteriors[s.code()] = p ? Json(p->str()) : Json(nullptr);
  }
  return {{"host", to_json(r.host)},
          {"value", r.result.value.str()},
          {"formulaValue", r.formula_value.str()},
          {"leastLikely", door_list(r.least_likely)},
          {"bestResponses", codes(r.result.best_responses)},
          {"excluded", codes(r.excluded)},
          {"posteriorSwitchWin", posteriors}};
}

std::string render_table(const BayesReport& r) {
  std::ostringstream out;
  out << "pi = " << tuple(r.host.pi) << "\n";
  out << "lambda = " << tuple(r.host.lambda) << "\n";
  out << "value = " << render_approx(r.result.value) << "\n";
  out << "1 - min pi = " << render_approx(r.formula_value) << "\n";
  out << "least likely doors = " << braces(door_names(r.least_likely)) << "\n";
  out << "best responses = " << braces(codes(r.result.best_responses)) << "\n";
  out << "excluded context-dependent plans = " << braces(codes(r.excluded)) << "\n\n";
  std::vector<std::vector<std::string>> rows{{"info set", "switch wins"}};
  for (const auto& s : enumerate_info_sets()) {
    const auto& p = r.posteriors[s.index()];
    rows.push_back({s.code(), p ? render_approx(*p) : "unreachable"});
  }
  out << render_grid(rows);
  return out.str();
}

Json to_json(const NashProfile& n) {
  return {{"p", to_json(n.p)},
          {"q", to_json(n.q)},
          {"coniePayoff", n.conie_payoff.str()},
          {"montePayoff", n.monte_payoff.str()},
          {"conieBestValue", n.conie_best_value.str()},
          {"monteBestValue", n.monte_best_value.str()},
          {"conieBestResponses", codes(n.conie_best_responses)},
          {"monteBestResponses", codes(n.monte_best_responses)},
          {"certified", n.certified()}};
}

Json to_json(const FullySupportedFamily& f) {
  Json vertices = Json::array();
  for (const auto& v : f.weight_vertices) vertices.push_back(rational_list(v));
  return {{"case", f.case_number},
          {"leastLikely", door_list(f.least_likely)},
          {"weightVertices", vertices},
          {"priorCondition", f.prior_condition},
          {"representative", to_json(f.representative)}};
}

Json to_json(const NashReport& r) {
  Json families = Json::array();
  for (const auto& f : r.families) families.push_back(to_json(f));
  Json out{{"fullySupported", families}};
  if (r.equilibria) {
    Json list = Json::array();
    for (const auto& n : *r.equilibria) list.push_back(to_json(n));
    out["equilibria"] = list;
  }
  return out;
}

std::string render_table(const NashReport& r) {
  std::ostringstream out;
  out << "fully supported host equilibria: " << r.families.size() << " famil" << (r.families.size() == 1 ? "y" : "ies")
      << "\n";
  for (const auto& f : r.families) {
    out << "\ncase " << f.case_number << ", least likely doors " << braces(door_names(f.least_likely)) << "\n";
    out << "  prior: " << f.prior_condition << "\n";
    out << "  x.ss weight vertices:";
    for (const auto& v : f.weight_vertices) out << " " << tuple(v);
    out << "\n";
    out << "  representative: conie " << mixture(f.representative.p, enumerate_conie()) << "; host "
        << mixture(f.representative.q, enumerate_monte()) << "\n";
    out << "  payoffs: conie " << render_approx(f.representative.conie_payoff) << ", host "
        << render_approx(f.representative.monte_payoff) << "\n";
  }
  if (r.equilibria) {
    out << "\nsupport enumeration: " << r.equilibria->size() << " equilibri" << (r.equilibria->size() == 1 ? "um" : "a")
        << "\n";
    std::vector<std::vector<std::string>> rows{{"#", "conie", "host", "conie payoff", "host payoff"}};
    for (std::size_t i = 0; i < r.equilibria->size(); ++i) {
      const auto& n = (*r.equilibria)[i];
      rows.push_back({std::to_string(i + 1), mixture(n.p, enumerate_conie()), mixture(n.q, enumerate_monte()),
                      n.conie_payoff.str(), n.monte_payoff.str()});
    }
    out << render_grid(rows, 2, {0});
  }
  return out.str();
}

SimulationReport make_simulation_report(const BehavioralHost& h, const BehavioralConie& b, std::uint64_t rounds,
                                        std::uint64_t seed, unsigned workers) {
  return {h, b, simulate(h, b, rounds, seed, workers), behavioral_win_probability(h, b)};
}

Json to_json(const SimulationStats& s) {
  Json sets = Json::array();
  for (const auto& i : enumerate_info_sets()) {
    const auto& t = s.per_info_set[i.index()];
    sets.push_back({{"infoSet", i.code()}, {"visits", t.visits}, {"switchWins", t.switch_wins}, {"holdWins", t.hold_wins}});
  }
  return {{"rounds", s.rounds}, {"wins", s.wins}, {"winRate", s.win_rate()}, {"seed", s.seed}, {"perInfoSet", sets}};
}

Json to_json(const SimulationReport& r) {
  Json out = to_json(r.stats);
  const double p = r.exact.to_double();
  out["exact"] = r.exact.str();
  out["standardError"] = std::sqrt(p * (1 - p) / static_cast<double>(r.stats.rounds));
  out["host"] = to_json(r.host);
  out["conie"] = to_json(r.conie);
  return out;
}

std::string render_table(const SimulationReport& r) {
  std::ostringstream out;
  const double p = r.exact.to_double();
  const double se = std::sqrt(p * (1 - p) / static_cast<double>(r.stats.rounds));
  out << "host pi = " << tuple(r.host.pi) << ", lambda = " << tuple(r.host.lambda) << "\n";
  out << "conie pick = " << tuple(r.conie.pick_dist) << ", switch = " << tuple(r.conie.switch_prob) << "\n";
  out << "seed = " << r.stats.seed << "\n";
  out << "rounds = " << r.stats.rounds << "\n";
  out << "wins = " << r.stats.wins << "\n";
  out << "empirical = " << fixed(r.stats.win_rate()) << "\n";
  out << "exact = " << render_approx(r.exact) << "\n";
  out << "standard error = " << fixed(se) << "\n\n";
  std::vector<std::vector<std::string>> rows{{"info set", "visits", "switch wins", "hold wins"}};
  for (const auto& s : enumerate_info_sets()) {
    const auto& t = r.stats.per_info_set[s.index()];
    rows.push_back({s.code(), std::to_string(t.visits), std::to_string(t.switch_wins), std::to_string(t.hold_wins)});
  }
  out << render_grid(rows, 2, {1, 2, 3});
  return out.str();
}

Json error_json(const Error& e) {
  Json body{{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
  if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
    body["line"] = p->line();
    body["column"] = p->column();
  }
  return {{"error", body}};
}

}  // namespace monty::io
