#include "doctest.h"
#include "generators.hpp"
#include "rieszkit/convergence.hpp"
#include "rieszkit/examples.hpp"

using namespace rieszkit;

namespace {

const SpaceDesc L0 = SpaceDesc::tail_seq();
const SpaceDesc CK = SpaceDesc::fin_dev();

Element tok(std::int64_t i) { return Element::atom(CK, {0, i}); }

}  // namespace

TEST_CASE("decompose into generators") {
  auto terms = decompose(Element::tail_seq({3, 5}, 5));
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].first == Generator::of_atom({0, 1}));
  CHECK(terms[0].second == -2);
  CHECK(terms[1].first == Generator::unit());
  CHECK(terms[1].second == 5);

  auto e4 = decompose(Element::atom(L0, {0, 4}));
  REQUIRE(e4.size() == 1);
  CHECK(e4[0].first == Generator::of_atom({0, 4}));

  auto rb = decompose(Element::row_block(SpaceDesc::e_k(), {Line{{1, 0}, 0}}, 0));
  REQUIRE(rb.size() == 1);
  CHECK(rb[0].first == Generator::of_atom({1, 1}));
  CHECK(rb[0].second == 1);

  testing::Gen gen(21);
  for (const auto& space : testing::all_space_kinds())
    for (int i = 0; i < 50; ++i) {
      auto x = gen.element(space);
      CHECK(recompose(space, decompose(x)) == x);
    }
}

TEST_CASE("apply on the Fremlin operator") {
  auto t = fremlin_operator();
  CHECK(t.apply(Element::unit(L0)).is_zero());
  CHECK(t.apply(Element::atom(L0, {0, 3})) == tok(3) - tok(2));
  CHECK(t.apply(Element::atom(L0, {0, 1})) == tok(1));
  auto z = Operator::zero(L0, CK);
  CHECK(z.apply(Element::tail_seq({1, 2}, 7)).is_zero());
}

TEST_CASE("rank-one operators") {
  auto x = Element::tail_seq({3, 5}, 5);
  auto e1 = Element::atom(L0, {0, 1});
  CHECK(rank_one(Functional::coordinate(L0, {0, 1}), e1).apply(x) == 3 * e1);
  CHECK(rank_one(Functional::coordinate(L0, {0, 1}), Element::zero(L0)).is_zero());
  CHECK(rank_one(Functional::limit(L0), Element::unit(L0)).apply(x) == 5 * Element::unit(L0));

  testing::Gen gen(4);
  Functional f;
  f.domain = L0;
  f.atoms = {{{0, 1}, 1}, {{0, 3}, 2}};
  f.unit = 4;
  REQUIRE(f.is_positive());
  auto r = rank_one(f, Element::tail_seq({1}, 2));
  CHECK(is_positive(r));
  for (int i = 0; i < 50; ++i) CHECK(r.apply(abs(gen.element(L0))).is_positive());
  f.unit = 2;
  CHECK_FALSE(f.is_positive());
  CHECK_FALSE(is_positive(rank_one(f, Element::unit(L0))));
}

TEST_CASE("partial sums in closed form") {
  auto s = partial_sum_seq(fremlin_operator());
  for (std::int64_t n = 1; n <= 12; ++n) CHECK(s.at(n) == tok(n));
  for (const auto& p : s.pieces()) CHECK(p.shape == SeqPiece::Shape::Moving);

  auto id = partial_sum_seq(Operator::identity(L0));
  CHECK(id.at(4) == Element::tail_seq({1, 1, 1, 1}, 0));
  CHECK(partial_sum_seq(Operator::zero(L0, L0)).at(5).is_zero());

  std::mt19937_64 rng(8);
  for (const auto& cod : {L0, CK, SpaceDesc::e_k()}) {
    for (int i = 0; i < 30; ++i) {
      auto t = random_operator(rng, {L0, cod});
      auto ps = partial_sum_seq(t);
      Element literal = Element::zero(cod);
      for (std::int64_t n = 1; n <= 20; ++n) {
        literal = literal + t.apply(Element::atom(L0, {0, n}));
        CHECK(ps.at(n) == literal);
      }
    }
  }
}

TEST_CASE("order boundedness") {
  auto r = order_bounded_test(fremlin_operator());
  CHECK(r.bounded);
  CHECK(r.bound == 2 * Element::unit(CK));

  Operator growing(L0, L0);
  TailStencil s;
  s.terms = {{StencilTerm{0, 1, 0, 1, 0}}};  // T(e_n) = n e_1
  growing.set_stencil(s);
  CHECK(growing.apply(Element::atom(L0, {0, 5})) == 5 * Element::atom(L0, {0, 1}));
  CHECK_FALSE(order_bounded_test(growing).bounded);
  CHECK_THROWS_AS(partial_sum_seq(growing), PreconditionError);

  auto z = order_bounded_test(Operator::zero(L0, L0));
  CHECK(z.bounded);
  CHECK(z.bound.is_zero());

  auto pd = order_bounded_test(pair_difference_operator());
  CHECK(pd.bounded);
  CHECK(pd.scale == 2);
}

TEST_CASE("linearity and operator arithmetic") {
  std::mt19937_64 rng(17);
  testing::Gen gen(18);
  struct Pair {
    SpaceDesc e, f;
  };
  for (const auto& [e, f] : std::vector<Pair>{{L0, L0}, {L0, CK}, {SpaceDesc::e_k(), SpaceDesc::e_k()},
                                              {SpaceDesc::fin_dim(3), SpaceDesc::fin_dim(2)}}) {
    CAPTURE(e.name());
    for (int i = 0; i < 25; ++i) {
      auto s = random_operator(rng, {e, f});
      auto t = random_operator(rng, {e, f});
      auto x = gen.element(e), y = gen.element(e);
      auto a = gen.scalar(), b = gen.scalar();
      CHECK(t.apply(a * x + b * y) == a * t.apply(x) + b * t.apply(y));
      if (e.kind == SpaceKind::RowBlock && s.stencil().threshold != t.stencil().threshold && !s.stencil().empty() &&
          !t.stencil().empty()) {
        CHECK_THROWS_AS(s + t, UnsupportedHypothesis);
        continue;
      }
      CHECK((s + t).apply(x) == s.apply(x) + t.apply(x));
      CHECK((a * t).apply(x) == a * t.apply(x));
      CHECK((t - t).is_zero());
      CHECK(s + t == t + s);
    }
  }
}

TEST_CASE("functionals and composition") {
  auto t = fremlin_operator();
  auto f = compose(Functional::coordinate(CK, {0, 3}), t);
  // (lambda_{gamma_3} o T)(e_3) = 1, (e_4) = -1, everything else 0
  CHECK(f.atoms.size() == 2);
  CHECK(f.atoms[{0, 3}] == 1);
  CHECK(f.atoms[{0, 4}] == -1);
  CHECK(f.unit == 0);

  std::mt19937_64 rng(2);
  testing::Gen gen(3);
  for (int i = 0; i < 40; ++i) {
    auto op = random_operator(rng, {SpaceDesc::e_k(), SpaceDesc::e_k()});
    AtomIndex j{gen.integer(1, 3), gen.integer(1, 4)};
    auto g = compose(Functional::coordinate(SpaceDesc::e_k(), j), op);
    auto x = gen.element(SpaceDesc::e_k());
    CHECK(g(x) == op.apply(x).value_at(j));
  }
}

TEST_CASE("positivity of random operators") {
  std::mt19937_64 rng(5);
  testing::Gen gen(6);
  for (const auto& [e, f] : std::vector<std::pair<SpaceDesc, SpaceDesc>>{
           {L0, L0}, {L0, CK}, {SpaceDesc::e_k(), SpaceDesc::e_k()}, {SpaceDesc::e_k(), SpaceDesc::finite_grid()}}) {
    for (int i = 0; i < 25; ++i) {
      auto t = random_operator(rng, {e, f, true});
      CHECK(is_positive(t));
      for (int k = 0; k < 10; ++k) CHECK(t.apply(abs(gen.element(e))).is_positive());
    }
  }
  CHECK_FALSE(is_positive(fremlin_operator()));
  CHECK(is_positive(Operator::identity(L0)));
  CHECK(is_positive(Operator::identity(SpaceDesc::e_k())));
}
