#include <gtest/gtest.h>

#include "monty/io.hpp"
#include "test_support.hpp"

namespace monty {
namespace {

using io::Json;

// H-file text for the contestant-friendly host, with or without header and labels.
std::string fixture_h_text(bool header, bool labels) {
  std::string text = "# contestant-friendly host\n";
  if (header) text += "     12 13 21 23 31 32\n";
  for (std::size_t i = 0; i < 12; ++i) {
    if (labels) text += testing::fixture_rows()[i] + " ";
    for (int j = 0; j < 6; ++j) text += " " + std::to_string(testing::fixture_matrix()[i][j]);
    text += "\n";
  }
  return text;
}

template <class F>
io::ParseError expect_parse_error(F f) {
  try {
    f();
  } catch (const io::ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error";
  return io::ParseError(0, 0, "");
}

TEST(LineColumn, CountsFromOne) {
  EXPECT_EQ(io::line_column("abc", 0), std::make_pair(1, 1));
  EXPECT_EQ(io::line_column("ab\ncd", 3), std::make_pair(2, 1));
  EXPECT_EQ(io::line_column("ab\ncd", 4), std::make_pair(2, 2));
}

TEST(ParseJson, ReportsLineAndColumn) {
  const auto e = expect_parse_error([] { io::parse_json("{\n  \"h\": [1, 2,\n  ]\n}"); });
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 3);
  EXPECT_EQ(e.code(), ErrorCode::kParseError);
  const Json body = io::error_json(e);
  EXPECT_EQ(body["error"]["code"], "parse-error");
  EXPECT_EQ(body["error"]["line"], 3);
}

TEST(RationalFromJson, StringsIntegersAndDecimals) {
  EXPECT_EQ(io::rational_from_json(Json("2/3"), "x"), Rational(2, 3));
  EXPECT_EQ(io::rational_from_json(Json(-4), "x"), Rational(-4));
  EXPECT_EQ(io::rational_from_json(Json(0.3), "x"), Rational(3, 10));
  EXPECT_THROW(io::rational_from_json(Json(true), "x"), Error);
  EXPECT_THROW(io::rational_from_json(Json("1/0"), "x"), Error);
}

TEST(ParseRationalList, CountAndSyntax) {
  EXPECT_EQ(io::parse_rational_list("1/2, 0.3,1/5", 3, "pi"),
            (std::vector<Rational>{Rational(1, 2), Rational(3, 10), Rational(1, 5)}));
  EXPECT_THROW(io::parse_rational_list("1/2,1/2", 3, "pi"), Error);
  EXPECT_THROW(io::parse_rational_list("1/2,a,1/2", 3, "pi"), Error);
}

TEST(MatrixIo, StructuredAndTableRoundTrip) {
  const PayoffMatrix& m = conie_payoff_matrix();
  EXPECT_EQ(io::matrix_from_json(io::parse_json(io::to_json(m).dump())), m);
  EXPECT_EQ(io::parse_matrix(io::to_json(m).dump(2)), m);
  EXPECT_EQ(io::parse_matrix(io::render_table(m)), m);
  const std::string table = io::render_table(m);
  EXPECT_EQ(table.substr(0, table.find('\n')), "    12 13 21 23 31 32");
}

TEST(MatrixIo, RejectsRelabelledOrNonBinaryInput) {
  Json j = io::to_json(conie_payoff_matrix());
  std::swap(j["columns"][0], j["columns"][1]);
  EXPECT_THROW(io::matrix_from_json(j), Error);
  j = io::to_json(conie_payoff_matrix());
  j["entries"][0][0] = 2;
  EXPECT_THROW(io::matrix_from_json(j), Error);
  std::string text = io::render_table(conie_payoff_matrix());
  text[text.find("1ms") + 5] = '7';
  const auto e = expect_parse_error([&] { io::parse_matrix(text); });
  EXPECT_EQ(e.line(), 3);
  EXPECT_EQ(e.column(), 6);
}

TEST(HostPayoffFile, AcceptsOptionalHeaderAndLabels) {
  const HostPayoffMatrix expected = sympathetic_host();
  for (bool header : {false, true}) {
    for (bool labels : {false, true}) {
      EXPECT_EQ(io::parse_host_payoff(fixture_h_text(header, labels)), expected) << header << labels;
    }
  }
  EXPECT_EQ(io::parse_host_payoff(io::to_json(expected).dump()), expected);
  EXPECT_EQ(io::host_payoff_from_json(Json("antagonistic")), antagonistic_host());
  EXPECT_EQ(io::host_payoff_from_json(Json{{"preset", "indifferent"}}), indifferent_host());
}

TEST(HostPayoffFile, RationalEntries) {
  std::string text;
  for (int i = 0; i < 12; ++i) text += "1/3 -2 0.5 0 0 7/4\n";
  const HostPayoffMatrix h = io::parse_host_payoff(text);
  EXPECT_EQ(h(11, 0), Rational(1, 3));
  EXPECT_EQ(h(5, 1), Rational(-2));
  EXPECT_EQ(h(0, 2), Rational(1, 2));
  EXPECT_EQ(h(3, 5), Rational(7, 4));
}

TEST(HostPayoffFile, ErrorsCarryPositions) {
  // Bad token on the third data line (file line 4 after the comment).
  std::string text = fixture_h_text(false, false);
  std::size_t at = 0;
  for (int n = 0; n < 3; ++n) at = text.find('\n', at) + 1;
  text.replace(at + 3, 1, "z");
  auto e = expect_parse_error([&] { io::parse_host_payoff(text); });
  EXPECT_EQ(e.line(), 4);
  EXPECT_EQ(e.column(), 4);

  e = expect_parse_error([] { io::parse_host_payoff("1 2 3 4 5 6\n1 2 3 4 5\n"); });
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.column(), 9);

  e = expect_parse_error([] { io::parse_host_payoff("1 2 3 4 5 6\n"); });
  EXPECT_EQ(e.line(), 2);
  EXPECT_EQ(e.detail(), "expected 12 rows, found 1");

  e = expect_parse_error([] { io::parse_host_payoff("2ss 1 2 3 4 5 6\n"); });
  EXPECT_EQ(e.line(), 1);
  EXPECT_EQ(e.column(), 1);

  e = expect_parse_error([] { io::parse_host_payoff("12 13 21 23 32 31\n"); });
  EXPECT_EQ(e.column(), 13);
}

TEST(HostSpec, AllForms) {
  EXPECT_EQ(host_to_mixed(io::parse_host_spec("crawl")), host_to_mixed(BehavioralHost::crawl()));
  EXPECT_EQ(host_to_mixed(io::parse_host_spec("uniform")), MixedMonte::uniform());
  for (const auto& m : enumerate_monte()) {
    EXPECT_EQ(host_to_mixed(io::parse_host_spec(m.code())), point_mass(m));
  }
  const BehavioralHost h = io::parse_host_spec("behavioral:1/2,3/10,1/5;1/2,0,1");
  EXPECT_EQ(h.pi[1], Rational(3, 10));
  EXPECT_EQ(h.lambda[2], Rational(1));
  EXPECT_EQ(host_to_mixed(io::parse_host_spec("1/2,3/10,1/5;1/2,0,1")), host_to_mixed(h));
  const MixedMonte q = host_to_mixed(io::parse_host_spec("mixed:1/4,0,1/4,1/4,1/8,1/8"));
  EXPECT_EQ(q[0], Rational(1, 4));
  EXPECT_EQ(q[5], Rational(1, 8));
  EXPECT_THROW(io::parse_host_spec("22"), Error);
  EXPECT_THROW(io::parse_host_spec("0.3,0.3,0.3;1,1,1"), Error);
  EXPECT_THROW(io::parse_host_spec("nonsense"), Error);
}

TEST(HostJson, AllForms) {
  EXPECT_EQ(host_to_mixed(io::host_from_json(Json{{"pi", {"1/3", "1/3", "1/3"}}, {"lambda", {1, 1, 1}}})),
            host_to_mixed(BehavioralHost::crawl()));
  EXPECT_EQ(host_to_mixed(io::host_from_json(Json{{"pure", "21"}})), point_mass(MontePureStrategy::parse("21")));
  EXPECT_EQ(host_to_mixed(io::host_from_json(Json{{"mixed", {"1/6", "1/6", "1/6", "1/6", "1/6", "1/6"}}})),
            MixedMonte::uniform());
  EXPECT_EQ(host_to_mixed(io::host_from_json(Json("crawl"))), host_to_mixed(BehavioralHost::crawl()));
  try {
    io::host_from_json(Json{{"pi", {0.3, 0.3, 0.3}}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidDistribution);
  }
}

TEST(ConieSpec, AllForms) {
  EXPECT_EQ(behavioral_to_mixed_conie(io::parse_conie_spec("2sm")), point_mass(ConiePureStrategy::parse("2sm")));
  EXPECT_EQ(behavioral_to_mixed_conie(io::parse_conie_spec("switcher")), MixedConie::uniform_over({0, 4, 8}));
  const BehavioralConie b = io::parse_conie_spec("behavioral:0,1,0;0,0,1,0,0,0");
  EXPECT_EQ(behavioral_to_mixed_conie(b), point_mass(ConiePureStrategy::parse("2sm")));
  EXPECT_THROW(io::parse_conie_spec("behavioral:1,0,0"), Error);
  EXPECT_THROW(io::parse_conie_spec("4ss"), Error);
}

TEST(Reports, ZeroSumStructured) {
  const Json j = io::to_json(solve_zero_sum());
  EXPECT_EQ(j["value"], "2/3");
  EXPECT_EQ(j["conieMinimax"]["support"], Json({"1ss", "2ss", "3ss"}));
  EXPECT_EQ(j["conieMinimax"]["weights"][0], "1/3");
  EXPECT_EQ(j["reduction"]["terminal"], Json({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_EQ(j["conieGuarantees"]["32"], "2/3");
}

TEST(Reports, BayesCrawlAndSkewed) {
  const auto crawl = io::make_bayes_report(BehavioralHost::crawl());
  EXPECT_EQ(io::to_json(crawl)["bestResponses"], Json({"1ss", "1ms", "2ss", "2ms", "3ss", "3ms"}));
  EXPECT_EQ(*crawl.posteriors[1], Rational(1));
  const auto skewed = io::make_bayes_report(io::parse_host_spec("1/2,3/10,1/5;1/2,1/2,1/2"));
  EXPECT_EQ(skewed.result.value, Rational(4, 5));
  EXPECT_EQ(io::to_json(skewed)["bestResponses"], Json({"3ss"}));
  // A point-mass prior leaves information sets unreachable.
  const auto pure = io::make_bayes_report(io::parse_host_spec("12"));
  EXPECT_FALSE(pure.posteriors[1].has_value());
  EXPECT_EQ(*pure.posteriors[2], Rational(1));
  EXPECT_TRUE(io::to_json(pure)["posteriorSwitchWin"]["*13"].is_null());
}

TEST(Reports, SimulationCarriesExactValue) {
  const auto r = io::make_simulation_report(BehavioralHost::crawl(), io::parse_conie_spec("1ss"), 1000, 7);
  const Json j = io::to_json(r);
  EXPECT_EQ(j["exact"], "2/3");
  EXPECT_EQ(j["rounds"], 1000);
  EXPECT_EQ(j["perInfoSet"].size(), 6u);
}

}  // namespace
}  // namespace monty
