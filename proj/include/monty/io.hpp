#pragma once

// Text and JSON renderings of matrices, strategies and solver reports, and
// the parsers for host payoff files and command-line strategy specs.
// Structured output carries rationals as exact "a/b" strings; human tables
// append a decimal approximation.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "monty/error.hpp"
#include "monty/payoff_matrix.hpp"
#include "monty/simulation.hpp"
#include "monty/solvers.hpp"

namespace monty::io {

using Json = nlohmann::ordered_json;

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& detail);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  int line_;
  int column_;
  std::string detail_;
};

/// 1-based line and column of a byte offset into text.
std::pair<int, int> line_column(std::string_view text, std::size_t offset);

/// Parses text as JSON, reporting syntax errors with line and column.
Json parse_json(std::string_view text);

Rational rational_from_json(const Json& j, const std::string& what);
Json rational_list(const auto& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

/// "a/b,c/d,..." with exactly n entries.
std::vector<Rational> parse_rational_list(std::string_view text, std::size_t n, const std::string& what);

// Payoff matrix.
Json to_json(const PayoffMatrix& m);
PayoffMatrix matrix_from_json(const Json& j);
std::string render_table(const PayoffMatrix& m);
/// Reads either rendering back: JSON if the first non-blank character is '{'.
PayoffMatrix parse_matrix(std::string_view text);

Json to_json(const ReductionTrace& t);
std::string render_table(const ReductionTrace& t);

// Host payoff matrices: 12 rows of 6 rationals. The text form allows '#'
// comments, an optional header of column codes and an optional row code in
// front of each row; labels, when present, must follow canonical order.
HostPayoffMatrix parse_host_payoff(std::string_view text);
HostPayoffMatrix host_payoff_from_json(const Json& j);
/// "antagonistic", "sympathetic" or "indifferent".
HostPayoffMatrix host_payoff_preset(std::string_view name);
Json to_json(const HostPayoffMatrix& h);

// Strategies.
Json to_json(const MixedConie& p);
Json to_json(const MixedMonte& q);
Json to_json(const BehavioralHost& h);
Json to_json(const BehavioralConie& b);
std::string render_support(const MixedConie& p);
std::string render_support(const MixedMonte& q);

/// Host model from JSON: a preset name or pure code as a string, or an object
/// with "pi"/"lambda", "mixed" (six weights) or "pure".
BehavioralHost host_from_json(const Json& j);

/// Command-line host spec: "crawl", "uniform", a pure code such as "12",
/// "mixed:w1,...,w6", or "[behavioral:]pi1,pi2,pi3;l1,l2,l3".
BehavioralHost parse_host_spec(std::string_view spec);
/// Command-line contestant spec: a pure code such as "2sm", "switcher"
/// (uniform pick, always switch) or "behavioral:pick1,pick2,pick3;s1,...,s6"
/// with switch probabilities in information-set order *12,...,*32.
BehavioralConie parse_conie_spec(std::string_view spec);

// Solver reports.
Json to_json(const SolveResult& r);
std::string render_table(const SolveResult& r);

struct BayesReport {
  BehavioralHost host;
  BayesResult result;
  Rational formula_value;
  std::vector<Door> least_likely;
  std::vector<ConiePureStrategy> excluded;
  /// Switching win probability per information set; empty when unreachable.
  std::array<std::optional<Rational>, 6> posteriors;
};

BayesReport make_bayes_report(const BehavioralHost& h);
Json to_json(const BayesReport& r);
std::string render_table(const BayesReport& r);

Json to_json(const NashProfile& n);
Json to_json(const FullySupportedFamily& f);

struct NashReport {
  std::vector<FullySupportedFamily> families;
  std::optional<std::vector<NashProfile>> equilibria;  // absent when only families were requested
};

Json to_json(const NashReport& r);
std::string render_table(const NashReport& r);

struct SimulationReport {
  BehavioralHost host;
  BehavioralConie conie;
  SimulationStats stats;
  Rational exact;
};

SimulationReport make_simulation_report(const BehavioralHost& h, const BehavioralConie& b, std::uint64_t rounds,
                                        std::uint64_t seed, unsigned workers = 1);
Json to_json(const SimulationStats& s);
Json to_json(const SimulationReport& r);
std::string render_table(const SimulationReport& r);

/// JSON error body: {"error": {"code", "message"[, "line", "column"]}}.
Json error_json(const Error& e);

}  // namespace monty::io
