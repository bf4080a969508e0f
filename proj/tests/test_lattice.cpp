#include "doctest.h"
#include "generators.hpp"
#include "rieszkit/element.hpp"
#include "rieszkit/pattern.hpp"

using namespace rieszkit;

namespace {

Scalar q(std::int64_t p, std::int64_t d = 1) { return make_scalar(p, d); }

Element gamma_indicator(std::int64_t i) { return Element::atom(SpaceDesc::fin_dev(), {0, i}); }

}  // namespace

TEST_CASE("scalars parse and render canonically") {
  CHECK(to_string(parse_scalar("6/4")) == "3/2");
  CHECK(to_string(parse_scalar("-2")) == "-2");
  CHECK(parse_scalar("1.25") == q(5, 4));
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("x"), Error);
}

TEST_CASE("sup2 and inf2 on eventually constant sequences") {
  auto x = Element::tail_seq({1, -2}, 0);
  auto y = Element::tail_seq({0, 0}, 0);
  CHECK(sup2(x, y) == Element::tail_seq({1}, 0));
  CHECK(inf2(x, y) == Element::tail_seq({0, -2}, 0));
  CHECK(sup2(x, x) == x);
  CHECK_THROWS_AS(sup2(x, Element::zero(SpaceDesc::fin_dev())), SpaceMismatch);
}

TEST_CASE("sup2 of indicator functions on C(K)") {
  auto x = sup2(gamma_indicator(1), gamma_indicator(2));
  // pointwise oracle over the touched tokens, an untouched token and the ambient value
  for (std::int64_t i : {1, 2}) CHECK(x.value_at({0, i}) == 1);
  CHECK(x.value_at({0, 3}) == 0);
  CHECK(x.value_at({5, 1}) == 0);
  CHECK(x.dev().ambient == 0);
  CHECK(x.dev().values.size() == 2);
}

TEST_CASE("positive, negative part and modulus") {
  auto x = Element::tail_seq({1, -2}, -1);
  CHECK(pos(x) == Element::tail_seq({1}, 0));
  CHECK(neg(x) == Element::tail_seq({0, 2}, 1));
  CHECK(pos(Element::zero(SpaceDesc::tail_seq())).is_zero());

  auto f = Element::fin_dev({{{0, 1}, q(-3)}}, 2);
  auto a = abs(f);
  CHECK(a.value_at({0, 1}) == 3);
  CHECK(a.value_at({0, 9}) == 2);
  CHECK(a.dev().ambient == 2);
}

TEST_CASE("disjointness") {
  auto e1 = Element::atom(SpaceDesc::tail_seq(), {0, 1});
  auto e2 = Element::atom(SpaceDesc::tail_seq(), {0, 2});
  CHECK(is_disjoint(e1, e2));
  CHECK_FALSE(is_disjoint(e1, e1));
  CHECK(is_disjoint(gamma_indicator(1), 5 * gamma_indicator(2)));
  CHECK_FALSE(is_disjoint(Element::unit(SpaceDesc::fin_dev()), gamma_indicator(7)));
}

TEST_CASE("coordinate functionals") {
  auto x = Element::tail_seq({1, -2}, 5);
  CHECK(coordinate_functional({0, 2}, x) == -2);
  CHECK(coordinate_functional({0, 7}, x) == 5);
  for (std::int64_t i = 1; i <= 3; ++i)
    for (std::int64_t j = 1; j <= 3; ++j)
      CHECK(coordinate_functional({0, i}, Element::atom(SpaceDesc::tail_seq(), {0, j})) == (i == j ? 1 : 0));
  CHECK_THROWS_AS(coordinate_functional({0, 0}, x), InvalidIndex);
  CHECK_THROWS_AS(coordinate_functional({0, 5}, Element::fin_dim({1, 2})), InvalidIndex);
}

TEST_CASE("canonical forms") {
  auto x = Element::tail_seq({3, 5, 5}, 5);
  CHECK(x.line().prefix.size() == 1);
  auto d = Element::fin_dev({{{0, 1}, q(2)}, {{0, 2}, q(1)}}, 2);
  CHECK(d.dev().values.size() == 1);
  CHECK_THROWS_AS(Element::row_block(SpaceDesc::finite_grid(), {Line{{1}, 1}}, 0), PreconditionError);
  auto ek = Element::row_block(SpaceDesc::e_k(), {Line{{}, 0}, Line{{1}, 1}}, 0);
  CHECK(ek.grid().rows.size() == 2);
  CHECK(Element::row_block(SpaceDesc::e_k(), {Line{{}, 0}}, 0).grid().rows.empty());
  CHECK_THROWS_AS(Element::row_unit(SpaceDesc::finite_grid(), 1), InvalidIndex);
}

TEST_CASE("lattice laws hold exactly on random elements of every kind") {
  testing::Gen gen(7);
  for (const auto& space : testing::all_space_kinds()) {
    CAPTURE(space.name());
    for (int trial = 0; trial < 100; ++trial) {
      auto x = gen.element(space), y = gen.element(space), z = gen.element(space);
      CHECK(sup2(x, y) == sup2(y, x));
      CHECK(inf2(x, y) == inf2(y, x));
      CHECK(sup2(sup2(x, y), z) == sup2(x, sup2(y, z)));
      CHECK(inf2(inf2(x, y), z) == inf2(x, inf2(y, z)));
      CHECK(sup2(x, inf2(x, y)) == x);
      CHECK(inf2(x, sup2(x, y)) == x);
      CHECK(inf2(x, sup2(y, z)) == sup2(inf2(x, y), inf2(x, z)));
      CHECK(x == pos(x) - neg(x));
      CHECK(abs(x) == pos(x) + neg(x));
      CHECK(inf2(pos(x), neg(x)).is_zero());
      CHECK(Element(x.space(), x.payload()) == x);
    }
  }
}

TEST_CASE("completion elements embed elements and decide membership") {
  testing::Gen gen(11);
  for (const auto& space : testing::all_space_kinds()) {
    for (int trial = 0; trial < 30; ++trial) {
      auto x = gen.element(space);
      CompletionElement c(x);
      CHECK(c.is_member());
      CHECK(c.to_element() == x);
    }
  }
  CompletionElement alternating(SpaceDesc::tail_seq(), LinePattern{{5}, {1, 0, 1, 0}});
  CHECK_FALSE(alternating.is_member());
  CHECK(std::get<LinePattern>(alternating.payload()).period.size() == 2);
  CHECK(alternating.value_at({0, 1}) == 5);
  CHECK(alternating.value_at({0, 2}) == 1);
  CHECK(alternating.value_at({0, 3}) == 0);

  auto row = CompletionElement::in_row(SpaceDesc::finite_grid(), 2, LinePattern::constant(1));
  CHECK_FALSE(row.is_member());
  CHECK(CompletionElement::in_row(SpaceDesc::e_k(), 2, LinePattern::constant(1)).is_member());
}
