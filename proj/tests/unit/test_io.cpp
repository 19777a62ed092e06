#include <gtest/gtest.h>

#include <sstream>

#include "birkhoff/io.hpp"

using namespace birkhoff;

namespace {
Rational q(long p, long d = 1) { return Rational(Integer(p), Integer(d)); }
}  // namespace

TEST(ZeroPatternText, ParsesOneBasedCells) {
  auto z = parse_zero_pattern("1,1; 2,3", 3);
  EXPECT_EQ(z.cells(), (std::vector<DirectedEdge>{{0, 0}, {1, 2}}));
  EXPECT_EQ(format_zero_pattern(z), "1,1;2,3");
  EXPECT_TRUE(parse_zero_pattern("", 3).empty());
}

TEST(ZeroPatternText, RejectsMalformedInput) {
  EXPECT_THROW(parse_zero_pattern("0,1", 3), InvalidInput);
  EXPECT_THROW(parse_zero_pattern("1,4", 3), InvalidInput);
  EXPECT_THROW(parse_zero_pattern("1;2", 3), InvalidInput);
  EXPECT_THROW(parse_zero_pattern("1,x", 3), InvalidInput);
  EXPECT_THROW(parse_zero_pattern("1,1;1,1", 3), InvalidInput);
}

TEST(CryPattern, CellsBelowTheSubdiagonal) {
  EXPECT_EQ(format_zero_pattern(ZeroPattern::cry(4)), "3,1;4,1;4,2");
  EXPECT_TRUE(ZeroPattern::cry(2).empty());
}

TEST(LinearFormJson, ParsesRationalStrings) {
  std::istringstream in(R"({"n": 2, "y": [["1/2", "0"], [3, "-4/6"]]})");
  auto y = read_linear_form(in);
  EXPECT_EQ(y.coefficients()(0, 0), q(1, 2));
  EXPECT_EQ(y.coefficients()(1, 0), q(3));
  EXPECT_EQ(y.coefficients()(1, 1), q(-2, 3));
}

TEST(LinearFormJson, RejectsBadShapes) {
  auto parse = [](const char* text) {
    std::istringstream in(text);
    return read_linear_form(in);
  };
  EXPECT_THROW(parse(R"({"n": 2, "y": [["1", "0"]]})"), InvalidInput);
  EXPECT_THROW(parse(R"({"n": 2, "y": [["1", "0"], ["1"]]})"), InvalidInput);
  EXPECT_THROW(parse(R"({"n": 2, "y": [[0.5, "0"], ["1", "1"]]})"), InvalidInput);
  EXPECT_THROW(parse(R"({"y": []})"), InvalidInput);
  EXPECT_THROW(parse("not json"), InvalidInput);
  EXPECT_THROW(parse(R"({"n": 2, "y": [["0", "0"], ["0", "0"]]})"), InvalidInput);
}

TEST(Latex, Polynomial) {
  EXPECT_EQ(latex_polynomial(Polynomial({q(1), q(11, 6), q(1), q(-1, 6)})),
            "1 + \\frac{11}{6} t + t^{2} - \\frac{1}{6} t^{3}");
  EXPECT_EQ(latex_polynomial(Polynomial({q(0)})), "0");
}

TEST(Latex, GeneratingFunctionOfB2) {
  const std::string s = latex_mgf(birkhoff_terms(2, 0));
  EXPECT_NE(s.find("z_{1,1}^{t}z_{2,2}^{t} \\frac{1}{1 - z_{1,2}z_{2,1}z_{1,1}^{-1}z_{2,2}^{-1}}"), std::string::npos);
  EXPECT_THROW(latex_mgf(birkhoff_terms(4, 0)), InvalidInput);
}

TEST(TermJson, RejectsBadEntries) {
  EXPECT_THROW(term_from_json(Json::parse(R"({"sign":2,"vertex":[1,2],"rays":[]})")), InvalidInput);
  EXPECT_THROW(term_from_json(Json::parse(R"({"sign":1,"vertex":[1,1],"rays":[]})")), InvalidInput);
  EXPECT_THROW(term_from_json(Json::parse(R"({"sign":1,"vertex":[1,2],"rays":[[2,0,0,0]]})")), InvalidInput);
  EXPECT_THROW(term_from_json(Json::parse(R"({"vertex":[1,2]})")), InvalidInput);
}
