#include <gtest/gtest.h>

#include "support.hpp"

namespace jetline {
namespace {

using testing::Q;

LaurentPoly terms(std::initializer_list<std::pair<int, Scalar>> ts) {
  LaurentPoly p(Q());
  for (const auto& [e, c] : ts) p.add_term(e, c);
  return p;
}

TEST(ParsePoly, Examples) {
  EXPECT_EQ(parse_poly("t^-3"), terms({{-3, Scalar(Q(), 1)}}));
  EXPECT_EQ(parse_poly("3/2*t - t^2 + 1"), terms({{0, Scalar(Q(), 1)}, {1, Scalar(Q(), 3, 2)}, {2, Scalar(Q(), -1)}}));
  EXPECT_EQ(parse_poly("(1+t)*(1-t)"), terms({{0, Scalar(Q(), 1)}, {2, Scalar(Q(), -1)}}));
}

TEST(ParsePoly, Precedence) {
  EXPECT_EQ(parse_poly("-t^2"), terms({{2, Scalar(Q(), -1)}}));
  EXPECT_EQ(parse_poly("2*t^2*3"), terms({{2, Scalar(Q(), 6)}}));
  EXPECT_EQ(parse_poly("1 - t - t"), terms({{0, Scalar(Q(), 1)}, {1, Scalar(Q(), -2)}}));
  EXPECT_EQ(parse_poly("(2*t)^-2"), terms({{-2, Scalar(Q(), 1, 4)}}));
  EXPECT_EQ(parse_poly("--t"), parse_poly("t"));
}

TEST(ParsePoly, ReducesModP) {
  const Field f7 = Field::prime(7);
  EXPECT_EQ(parse_poly("8*t + 1/2", f7), LaurentPoly::monomial(f7, 1, 1) + LaurentPoly::constant(f7, 4));
  EXPECT_THROW(parse_poly("1/7", f7), DivisionByZero);
}

TEST(ParsePoly, ErrorsCarryPosition) {
  try {
    parse_poly("1 + \n  t*");
    FAIL() << "expected ParseError";
  } catch (const ParseError& err) {
    EXPECT_EQ(err.line(), 2);
    EXPECT_EQ(err.column(), 5);
    EXPECT_NE(err.witness().find("'('"), std::string::npos);
  }
  EXPECT_THROW(parse_poly("t +"), ParseError);
  EXPECT_THROW(parse_poly("y"), ParseError);
  EXPECT_THROW(parse_poly("(1+t)^-1"), ParseError);
  EXPECT_THROW(parse_poly("t)"), ParseError);
  EXPECT_THROW(parse_poly("1/0"), DivisionByZero);
}

TEST(ParsePoly, RoundTripsRandomPolynomials) {
  for (const Field& f : testing::both_fields()) {
    Rng rng(91);
    for (int trial = 0; trial < 200; ++trial) {
      const LaurentPoly p = random_laurent(f, rng, -6, 6);
      ASSERT_EQ(parse_poly(p.to_string(), f), p) << p.to_string();
    }
  }
}

TEST(ParseMatrix, LiteralAndBundleShorthand) {
  const LaurentMatrix m = parse_laurent_matrix("[[t^-1, 0], [0, t^-3]]", Q());
  EXPECT_EQ(m, TransitionBundle::split(Q(), {1, 3}).transition());
  EXPECT_EQ(parse_bundle_matrix("O(1) + O(3)", Q()), m);
  EXPECT_EQ(parse_bundle_matrix("O(-2)", Q()), TransitionBundle::line(Q(), -2).transition());
  EXPECT_EQ(parse_bundle_matrix("[[t^-1,0],[0,t^-3]]", Q()), m);
  EXPECT_THROW(parse_laurent_matrix("[[1, 2], [3]]", Q()), ParseError);
  EXPECT_THROW(parse_bundle_matrix("O(1) + ", Q()), ParseError);
}

TEST(ParseMultiPoly, Variables) {
  const MultiPoly p = parse_multipoly("x1^2*x3 - 2*x2", Q(), 3);
  EXPECT_EQ(p.to_string(), "x1^2*x3 - 2*x2");
  EXPECT_THROW(parse_multipoly("x4", Q(), 3), ParseError);
  EXPECT_THROW(parse_multipoly("x1^-1", Q(), 1), ParseError);
  EXPECT_EQ(count_x_variables("[[1, x12], [x3, 0]]"), 12u);
  EXPECT_EQ(parse_poly_matrix("[[1, x1], [0, 0]]", Q(), 1)(0, 1), MultiPoly::variable(Q(), 1, 0));
}

TEST(ParseField, Tags) {
  EXPECT_TRUE(parse_field("q").is_rational());
  EXPECT_EQ(parse_field("fp:5").characteristic(), 5u);
  EXPECT_THROW(parse_field("fp:4"), PrimalityError);
  EXPECT_THROW(parse_field("r"), ParseError);
}

TEST(Json, ScalarEncoding) {
  EXPECT_EQ(to_json(Scalar(Q(), 3)), Json(3));
  EXPECT_EQ(to_json(Scalar(Q(), -3, 4)), Json("-3/4"));
  EXPECT_EQ(to_json(Scalar(Field::prime(5), -1)), Json(4));
  EXPECT_EQ(scalar_from_json(Json("-3/4"), Q()), Scalar(Q(), -3, 4));
  EXPECT_THROW(scalar_from_json(Json("abc"), Q()), ParseError);
  EXPECT_THROW(scalar_from_json(Json(1.5), Q()), ParseError);
}

TEST(Json, PolynomialEncoding) {
  const LaurentPoly p = parse_poly("3/2*t - t^2 + 1");
  EXPECT_EQ(to_json(p).dump(), R"({"0":1,"1":"3/2","2":-1})");
}

TEST(Json, RoundTrips) {
  for (const Field& f : testing::both_fields()) {
    Rng rng(92);
    for (int trial = 0; trial < 100; ++trial) {
      const LaurentPoly p = random_laurent(f, rng, -4, 4);
      ASSERT_EQ(laurent_from_json(Json::parse(to_json(p).dump()), f), p);
      const MultiPoly m = random_multipoly(f, 2, rng, 3);
      ASSERT_EQ(multipoly_from_json(Json::parse(to_json(m).dump()), f, 2), m);
    }
    const LaurentMatrix m = jet_structure_matrix(3, Side::left, JetDerivationSpec::rank3(1), f);
    EXPECT_EQ(laurent_matrix_from_json(Json::parse(to_json(m).dump()), f), m);
  }
}

}  // namespace
}  // namespace jetline
