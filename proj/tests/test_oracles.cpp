#include "doctest.h"
#include "generators.hpp"
#include "rieszkit/examples.hpp"
#include "rieszkit/oracles.hpp"
#include "rieszkit/order_calculus.hpp"

using namespace rieszkit;

namespace {

const SpaceDesc L0 = SpaceDesc::tail_seq();
const SpaceDesc CK = SpaceDesc::fin_dev();

Operator functional(std::vector<Scalar> a, Scalar s) {
  Operator f(L0, SpaceDesc::fin_dim(1));
  for (std::size_t i = 0; i < a.size(); ++i) f.set_atom_image({0, std::int64_t(i) + 1}, Element::fin_dim({a[i]}));
  f.set_unit_image(Element::fin_dim({s}));
  return f;
}

}  // namespace

TEST_CASE("matrix positive part") {
  CHECK(matrix_positive_part({{1, -2}, {-3, 4}}) == Matrix{{1, 0}, {0, 4}});
  CHECK(matrix_positive_part({{0, 0}}) == Matrix{{0, 0}});
  CHECK(matrix_positive_part({{1, 2}, {3, 4}}) == Matrix{{1, 2}, {3, 4}});
  CHECK(to_matrix(Operator::from_matrix({{1, -2}, {-3, 4}})) == Matrix{{1, -2}, {-3, 4}});
}

TEST_CASE("grid interval sup") {
  auto f = functional({1, -2}, 3);
  auto one = Element::unit(L0);
  CHECK(grid_interval_sup(f, one, 0) == CompletionElement(Element::fin_dim({5})));
  for (int d = 0; d <= 3; ++d) CHECK(grid_interval_sup(f, one, d) == rk_value(f, one));

  std::mt19937_64 rng(3);
  testing::Gen gen(4);
  for (int i = 0; i < 10; ++i) {
    auto t = random_operator(rng, {L0, L0, true});
    auto x = abs(gen.element(L0));
    CHECK(grid_interval_sup(t, x, 1) == CompletionElement(t.apply(x)));
  }
  for (int i = 0; i < 10; ++i) {
    auto t = random_operator(rng, {L0, L0});
    auto x = abs(gen.element(L0));
    auto lo = grid_interval_sup(t, x, 0);
    auto hi = grid_interval_sup(t, x, 2);
    CHECK(leq(lo, hi));
    CHECK(leq(hi, rk_value(t, x)));
  }
}

TEST_CASE("majorant growth probe") {
  auto t = pair_difference_operator();
  CHECK(majorant_growth_probe(t, 1) == 1);
  auto table = majorant_growth_table(t, 8);
  for (int n = 1; n <= 8; ++n) {
    CHECK(table.mu[n - 1] * 2 >= n);
    if (n > 1) CHECK(table.mu[n - 1] >= table.mu[n - 2]);
  }
  CHECK(majorant_growth_probe(Operator::zero(SpaceDesc::e_k(), SpaceDesc::finite_grid()), 4) == 0);
  CHECK_THROWS_AS(majorant_growth_probe(fremlin_operator(), 2), PreconditionError);
}

TEST_CASE("brute-force dominating search") {
  // 1_{gamma_n}
  ElementSeq fremlin(CK, {}, Element::zero(CK), {SeqPiece::moving(0, 1, 1, 0)});
  auto none = bruteforce_dominating_search(fremlin, 6);
  CHECK_FALSE(none.found);
  CHECK(none.candidates > 1000);

  auto e1 = Element::atom(L0, {0, 1});
  ElementSeq harmonic(L0, {}, Element::zero(L0), {SeqPiece::fixed({0, 1}, 0, 1)});
  CHECK(harmonic.at(4) == make_scalar(1, 4) * e1);
  auto found = bruteforce_dominating_search(harmonic, 6);
  CHECK(found.found);
  CHECK(found.family == "b_n = e1/n");

  auto zero = bruteforce_dominating_search(ElementSeq::constant(Element::zero(L0)), 6);
  CHECK(zero.found);
  CHECK(zero.family == "b_n = 0");
}
