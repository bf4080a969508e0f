#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rieszkit/examples.hpp"
#include "rieszkit/specfile.hpp"

using namespace rieszkit;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(RIESZKIT_FIXTURES) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParseError parse_error(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << text);
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("fixtures build the reference operators") {
  auto fremlin = parse_spec(slurp("fremlin.spec"));
  CHECK(fremlin.build() == fremlin_operator());
  CHECK(fremlin.directives.size() == 5);
  CHECK(fremlin.directives[0] == Directive{"check", {"order_bounded", "T"}});
  CHECK(fremlin.directives[2] == Directive{"positive-part", {"T"}});

  auto pd = parse_spec(slurp("pair_difference.spec"));
  auto t = pd.build("T");
  auto ek = SpaceDesc::e_k();
  auto grid = SpaceDesc::finite_grid();
  for (std::int64_t n = 1; n <= 3; ++n)
    for (std::int64_t m = 1; m <= 8; ++m)
      CHECK(t.apply(Element::atom(ek, {n, m})) == pair_difference_operator().apply(Element::atom(ek, {n, m})));
  CHECK(t.apply(Element::atom(ek, {2, 3})) == Element::atom(grid, {2, 2}));

  auto m = parse_spec(slurp("matrix.spec"));
  CHECK(m.build() == Operator::from_matrix({{1, -2}, {-3, 4}}));
  CHECK(parse_spec(slurp("limit_rank_one.spec")).build() == limit_rank_one());
}

TEST_CASE("printing round-trips") {
  for (const char* name : {"fremlin.spec", "pair_difference.spec", "matrix.spec", "limit_rank_one.spec"}) {
    CAPTURE(name);
    auto spec = parse_spec(slurp(name));
    auto printed = print_spec(spec);
    CHECK(parse_spec(printed) == spec);
    CHECK(print_spec(parse_spec(printed)) == printed);
  }
  auto spec = parse_spec(
      "space E = l0inf\noperator T : E -> E {\n  atom 2 -> 1/2 e(1) - e(3) + 2 one\n"
      "  atoms n > 3 -> stencil { 2*n + 1 @ e(2n-1), -1/3 @ e(n) }\n  unit -> one\n}\n");
  CHECK(print_spec(parse_spec(print_spec(spec))) == print_spec(spec));
  auto t = spec.build();
  CHECK(t.image_of_atom({0, 4}) ==
        Element::tail_seq({0, 0, 0, make_scalar(-1, 3), 0, 0, 9}, 0));
}

TEST_CASE("diagnostics") {
  auto cut = parse_error("space E = l0inf\noperator T : E -> ");
  CHECK(cut.line == 2);
  CHECK(cut.column == 19);
  CHECK(std::string(cut.what()).find("unexpected end of input") != std::string::npos);

  auto sq = parse_error("space E = l0inf\noperator T : E -> E {\n  atoms n > 0 -> stencil { 1 @ e(n^2) }\n}\n");
  CHECK(std::string(sq.what()).find("non-affine index form") != std::string::npos);
  CHECK(sq.line == 3);
  auto sq2 = parse_error("space E = l0inf\noperator T : E -> E {\n  atoms n > 0 -> stencil { n*n @ e(n) }\n}\n");
  CHECK(std::string(sq2.what()).find("non-affine") != std::string::npos);

  auto kind = parse_error("space E = banach");
  CHECK(std::string(kind.what()).find("unknown space kind") != std::string::npos);
  CHECK(kind.column == 11);
  CHECK(kind.expected.count("l0inf") == 1);

  CHECK(parse_error("operator T : X -> X { }").column == 14);
  CHECK(parse_error("space E = l0inf\ncheck order_bounded T").line == 2);
  CHECK(parse_error("space E = l0inf $").column == 17);

  // semantic errors surface when building
  auto bad = parse_spec("space E = l0inf\nspace F = CK\noperator T : E -> F { atom 1 -> e(1) }");
  CHECK_THROWS_AS(bad.build(), Error);
}

TEST_CASE("the parser never crashes on mangled input") {
  std::string base = slurp("pair_difference.spec") + slurp("fremlin.spec");
  std::mt19937_64 rng(99);
  const std::string alphabet = "(){}[],:;@|+-*/=>^<0123456789 nkrowegu\n#$";
  int rejected = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string text = base;
    for (int k = 0; k < 4; ++k) {
      std::size_t at = rng() % text.size();
      switch (rng() % 3) {
        case 0:
          text.erase(at, 1 + rng() % 3);
          break;
        case 1:
          text.insert(at, 1, alphabet[rng() % alphabet.size()]);
          break;
        default:
          text = text.substr(0, at);
      }
      if (text.empty()) text = "x";
    }
    try {
      auto spec = parse_spec(text);
      if (!spec.operators.empty()) spec.build();
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(rejected > 0);
}
