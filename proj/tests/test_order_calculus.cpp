#include "doctest.h"
#include "generators.hpp"
#include "rieszkit/examples.hpp"
#include "rieszkit/order_calculus.hpp"

using namespace rieszkit;

namespace {

const SpaceDesc L0 = SpaceDesc::tail_seq();
const SpaceDesc CK = SpaceDesc::fin_dev();
const SpaceDesc EK = SpaceDesc::e_k();
const SpaceDesc GRID = SpaceDesc::finite_grid();

}  // namespace

TEST_CASE("Riesz-Kantorovich values of the Fremlin operator") {
  auto t = fremlin_operator();
  CHECK(rk_value(t, Element::atom(L0, {0, 1})) == CompletionElement(Element::atom(CK, {0, 1})));
  CHECK(rk_value(t, Element::atom(L0, {0, 4})) == CompletionElement(Element::atom(CK, {0, 4})));
  auto top = rk_value(t, Element::unit(L0));
  CHECK_FALSE(top.is_member());
  CHECK(top.value_at({0, 7}) == 1);
  CHECK(top.ambient() == 0);
  CHECK_THROWS_AS(rk_value(t, -1 * Element::unit(L0)), PreconditionError);

  auto pp = positive_part(t);
  CHECK_FALSE(pp.in_F);
  CHECK(pp.verdict.find("does not exist") != std::string::npos);
}

TEST_CASE("positive part of a functional") {
  // f = e_1^* - 2 e_2^* + 3 lim, as an operator into R
  auto r1 = SpaceDesc::fin_dim(1);
  Operator f(L0, r1);
  f.set_atom_image({0, 1}, Element::fin_dim({1}));
  f.set_atom_image({0, 2}, Element::fin_dim({-2}));
  f.set_unit_image(Element::fin_dim({3}));
  auto pp = positive_part(f);
  CHECK(pp.in_F);
  CHECK(pp.candidate.unit == CompletionElement(Element::fin_dim({5})));
  CHECK(pp.candidate.image(Generator::of_atom({0, 2})).is_zero());
}

TEST_CASE("positive part of a matrix") {
  auto m = Operator::from_matrix({{1, -2}, {-3, 4}});
  auto pp = positive_part(m);
  REQUIRE(pp.in_F);
  CHECK(*pp.candidate.to_operator() == Operator::from_matrix({{1, 0}, {0, 4}}));
}

TEST_CASE("positive part of the pair-difference operator") {
  auto t = pair_difference_operator();
  auto pp = positive_part(t);
  CHECK_FALSE(pp.in_F);
  for (std::int64_t n : {1, 2, 9}) {
    auto img = pp.candidate.image_of_row_unit(n);
    CHECK_FALSE(img.is_member());
    for (std::int64_t m = 1; m <= 6; ++m) {
      CHECK(img.value_at({n, m}) == 1);
      CHECK(img.value_at({n + 1, m}) == 0);
    }
  }
  CHECK(pp.verdict.find("does not exist") != std::string::npos);
}

TEST_CASE("positive part dominates T and 0") {
  std::mt19937_64 rng(31);
  testing::Gen gen(32);
  for (const auto& [e, f] : std::vector<std::pair<SpaceDesc, SpaceDesc>>{
           {L0, L0}, {L0, CK}, {EK, EK}, {EK, GRID}, {SpaceDesc::fin_dim(3), SpaceDesc::fin_dim(2)}}) {
    CAPTURE(e.name());
    CAPTURE(f.name());
    for (int i = 0; i < 20; ++i) {
      auto t = random_operator(rng, {e, f});
      std::optional<PositivePartResult> maybe;
      try {
        maybe = positive_part(t);
      } catch (const UnsupportedHypothesis&) {
        CHECK(t.row_local());
        continue;
      }
      const auto& pp = *maybe;
      CHECK(is_positive(pp.candidate));
      CHECK(is_positive(pp.candidate - CompletionOperator::embed(t)));
      for (int k = 0; k < 5; ++k) {
        auto x = abs(gen.element(e));
        CHECK(leq(CompletionElement(t.apply(x)), pp.candidate.apply(x)));
      }
      // positive operators are their own positive part
      auto p = random_operator(rng, {e, f, true});
      auto pp2 = positive_part(p);
      CHECK(pp2.in_F);
      CHECK(pp2.candidate == CompletionOperator::embed(p));
    }
  }
}

TEST_CASE("order continuity") {
  auto fr = order_continuity_test(fremlin_operator());
  CHECK(fr.order_continuous);
  CHECK(verify_order_continuity(fr, 8));
  CHECK(order_continuity_test(Operator::identity(L0)).order_continuous);
  auto lim = order_continuity_test(limit_rank_one());
  CHECK_FALSE(lim.order_continuous);
  REQUIRE(lim.certificates.size() == 1);
  CHECK(lim.certificates[0].second.verdict == Verdict::Diverges);
  CHECK(verify_order_continuity(lim, 8));

  CHECK(order_continuity_test(pair_difference_operator()).order_continuous);
  CHECK(order_continuity_test(Operator::identity(EK)).order_continuous);
  CHECK(order_continuity_test(Operator::from_matrix({{1, 2}})).order_continuous);
}

TEST_CASE("order continuous projection") {
  CHECK(oc_projection(limit_rank_one()) == CompletionOperator::embed(Operator::zero(L0, L0)));
  CHECK(oc_projection(fremlin_operator()) == CompletionOperator::embed(fremlin_operator()));
  CHECK(oc_projection(Operator::identity(L0)) == CompletionOperator::embed(Operator::identity(L0)));
  CHECK(oc_projection(Operator::identity(EK)) == CompletionOperator::embed(Operator::identity(EK)));

  std::mt19937_64 rng(41);
  for (const auto& [e, f] : std::vector<std::pair<SpaceDesc, SpaceDesc>>{{L0, L0}, {L0, CK}, {EK, EK}, {EK, GRID}}) {
    for (int i = 0; i < 20; ++i) {
      auto t = random_operator(rng, {e, f});
      auto p = oc_projection(t);
      CHECK(oc_projection(p) == p);
      bool fixed = p == CompletionOperator::embed(t);
      CHECK(fixed == order_continuity_test(t).order_continuous);
      auto q = random_operator(rng, {e, f, true});
      CHECK(is_positive(oc_projection(q)));
      CHECK(is_positive(CompletionOperator::embed(q) - oc_projection(q)));
    }
  }
}

TEST_CASE("pervasive witnesses") {
  auto e1 = Element::atom(L0, {0, 1});
  auto id = pervasive_witness(Operator::identity(L0));
  CHECK(id.verified);
  CHECK(id.r.apply(e1) == e1);

  auto lim = pervasive_witness(rank_one(Functional::limit(L0), Element::unit(L0)));
  CHECK(lim.verified);
  CHECK(lim.route.find("rank one") != std::string::npos);

  auto ek = pervasive_witness(Operator::identity(EK));
  CHECK(ek.verified);
  CHECK(ek.route == "atomic codomain");

  CHECK_THROWS_AS(pervasive_witness(fremlin_operator()), PreconditionError);
  CHECK_THROWS_AS(pervasive_witness(Operator::zero(L0, L0)), PreconditionError);

  std::mt19937_64 rng(51);
  for (const auto& [e, f] : std::vector<std::pair<SpaceDesc, SpaceDesc>>{
           {L0, L0}, {L0, CK}, {EK, EK}, {EK, GRID}, {SpaceDesc::fin_dim(2), SpaceDesc::fin_dim(3)}}) {
    for (int i = 0; i < 20; ++i) {
      auto t = random_operator(rng, {e, f, true});
      if (t.is_zero()) continue;
      auto w = pervasive_witness(t);
      CHECK(w.verified);
      CHECK(verify_witness(w, t));
    }
  }
}

TEST_CASE("classification of space pairs") {
  auto fd = classify_pair(SpaceDesc::fin_dim(2), SpaceDesc::fin_dim(3));
  for (const char* key : {"pervasive", "riesz_kantorovich", "oc_band", "riesz_space"}) CHECK(fd.holds(key));

  auto fr = classify_pair(L0, CK);
  CHECK(fr.pervasive);
  CHECK_FALSE(fr.holds("riesz_space"));
  CHECK(fr.holds("order_continuity_by_partial_sums"));

  auto pd = classify_pair(EK, GRID);
  CHECK_FALSE(pd.e_atomic_small_codim);
  CHECK(pd.f_atomic);
  CHECK(pd.pervasive);
  CHECK_FALSE(pd.holds("riesz_space"));

  auto rc = classify_pair(SpaceDesc::fin_dim(2), SpaceDesc::convergent());
  CHECK(rc.holds("riesz_space"));
  bool flagged = false;
  for (const auto& c : rc.conclusions)
    if (c.key == "riesz_space") flagged = c.reconstructed;
  CHECK(flagged);
}
