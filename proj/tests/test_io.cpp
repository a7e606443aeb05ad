#include "oracles.hpp"
#include "vvmf/io.hpp"

#include <doctest.h>

using namespace vvmf;

TEST_CASE("discriminant form JSON") {
  Json j = to_json(DiscForm::from_gram({{2}}));
  CHECK(j["level"] == 4);
  CHECK(j["order"] == 2);
  CHECK(j["signature"] == 1);
  CHECK(j["gram"] == Json::parse("[[2]]"));
  DiscForm back = discform_from_json(j);
  CHECK(back.order() == 2);
  CHECK(back.level() == 4);
  Json direct = Json::parse(R"({"orders": [5], "qdiag": ["4/5"]})");
  DiscForm z5 = discform_from_json(direct);
  CHECK(z5.order() == 5);
  CHECK(z5.level() == 5);
  CHECK(dump(to_json(z5)) == dump(to_json(discform_from_json(to_json(z5)))));
}

TEST_CASE("cyclotomic and matrix round trips") {
  CycNum z = CycNum::zeta(12, 5) * Rat(3, 7) + CycNum(2);
  CHECK(cycnum_from_json(to_json(z)) == z);
  CHECK(cycnum_from_json(Json("-5/6")) == CycNum(Rat(-5, 6)));
  WeilRep w(DiscForm::from_gram({{2, 1}, {1, 2}}));
  RepMatrix s = w.rho(meta_S());
  CHECK(repmatrix_from_json(to_json(s)) == s);
  Json approx = to_json(s, true);
  CHECK(approx.contains("entries_approx"));
  MetaElem g{Mat2{2, 1, 7, 4}, -1};
  MetaElem h = meta_from_json(to_json(g));
  CHECK(h.m == g.m);
  CHECK(h.sign == -1);
}

TEST_CASE("expansion round trip is exact and deterministic") {
  auto a = std::make_shared<const DiscForm>(DiscForm::from_gram({{2, 1}, {1, 2}}));
  FourierExpansion f = theta_series(a, 8);
  Json j = to_json(f);
  FourierExpansion g = expansion_from_json(j);
  CHECK(g == f);
  CHECK(dump(to_json(g)) == dump(j));
  CHECK(dump(to_json(theta_series(a, 8))) == dump(j));
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(discform_from_json(Json::parse(R"({"orders": [5]})")), ParseError);
  CHECK_THROWS_AS(gram_from_json(Json::parse(R"({"gram": 3})")), ParseError);
  CHECK_THROWS_AS(cycnum_from_json(Json::parse(R"({"modulus": 0, "coeffs": []})")), ParseError);
  CHECK_THROWS_AS(cycnum_from_json(Json("1/x")), ParseError);
  CHECK_THROWS_AS(mat2_from_json(Json::parse("[[1,2,3],[4,5,6]]")), ParseError);
  CHECK_THROWS_AS(meta_from_json(Json::parse(R"({"m": [[1,0],[0,1]], "sign": 2})")), ParseError);
  CHECK_THROWS_AS(expansion_from_json(Json::parse(R"({"gram": [[2]], "weight": "1/2", "prec": "3"})")), ParseError);
  CHECK_THROWS_AS(expansion_from_json(Json::parse(
                      R"({"gram": [[2]], "weight": "1/2", "prec": "3", "coeffs": [{"lambda": [0, 1], "n": "1", "c": "1"}]})")),
                  ParseError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("word syntax") {
  Word w = parse_word("S T^3 S^-1 Z^2");
  REQUIRE(w.size() == 4);
  CHECK(w[0].kind == TokenKind::S);
  CHECK(w[1].kind == TokenKind::T);
  CHECK(w[1].exp == 3);
  CHECK(w[2].kind == TokenKind::Sinv);
  CHECK(w[3].kind == TokenKind::Z);
  CHECK(w[3].exp == 2);
  CHECK(parse_word("T^-2,S").size() == 2);
  CHECK(parse_word("").empty());
  CHECK_THROWS_AS(parse_word("X"), ParseError);
  CHECK_THROWS_AS(parse_word("T^a"), ParseError);
  CHECK_THROWS_AS(parse_word("T3"), ParseError);
}
