#include "doctest.h"
#include "generators.hpp"
#include "rieszkit/convergence.hpp"

using namespace rieszkit;

namespace {

const SpaceDesc L0 = SpaceDesc::tail_seq();
const SpaceDesc CK = SpaceDesc::fin_dev();

// sum_{k<=n} e_k
ElementSeq partial_units(const SpaceDesc& space = L0, std::int64_t row = 0) {
  return ElementSeq(space, {}, Element::zero(space), {SeqPiece::run(row, 1, 1, 0, 1)});
}

ElementSeq random_seq(testing::Gen& gen, const SpaceDesc& space) {
  std::vector<SeqPiece> pieces;
  auto count = gen.integer(0, 3);
  auto row = [&] { return space.kind == SpaceKind::RowBlock ? gen.integer(1, 2) : space.kind == SpaceKind::FinDev ? gen.integer(0, 1) : 0; };
  for (std::int64_t i = 0; i < count; ++i) {
    switch (gen.integer(0, 2)) {
      case 0:
        pieces.push_back(SeqPiece::fixed({row(), gen.integer(1, 4)}, gen.scalar(), gen.coin() ? gen.scalar() : Scalar(0)));
        break;
      case 1: {
        auto p = SeqPiece::moving(row(), gen.scalar(), gen.integer(1, 2), gen.integer(0, 2), gen.integer(1, 2), gen.integer(0, 1));
        p.gated = gen.coin();
        pieces.push_back(p);
        break;
      }
      default:
        pieces.push_back(SeqPiece::run(row(), gen.scalar(), gen.integer(1, 2), gen.integer(-1, 1), 2, gen.integer(1, 2)));
    }
  }
  std::vector<Element> early;
  for (std::int64_t i = gen.integer(0, 2); i > 0; --i) early.push_back(gen.element(space));
  return ElementSeq(space, early, gen.element(space), pieces);
}

}  // namespace

TEST_CASE("evaluation of symbolic sequences") {
  auto s = partial_units();
  CHECK(s.at(3) == Element::tail_seq({1, 1, 1}, 0));
  auto gamma = ElementSeq(CK, {}, Element::zero(CK), {SeqPiece::moving(0, 1, 1, 0)});
  CHECK(gamma.at(4) == Element::atom(CK, {0, 4}));
  auto decay = ElementSeq(L0, {}, Element::zero(L0), {SeqPiece::fixed({0, 1}, 0, 1)});
  CHECK(decay.at(4).value_at({0, 1}) == make_scalar(1, 4));
  CHECK_THROWS_AS(ElementSeq(L0, {}, Element::zero(L0), {SeqPiece::moving(0, 1, 0, 1)}), PreconditionError);
  CHECK_THROWS_AS(ElementSeq(SpaceDesc::fin_dim(2), {}, Element::fin_dim({0, 0}), {SeqPiece::moving(0, 1, 1, 0)}),
                  PreconditionError);
}

TEST_CASE("1 - sum_{k<=n} e_k decreases to 0 in l0^inf") {
  auto b = ElementSeq(L0, {}, Element::unit(L0), {SeqPiece::run(0, -1, 1, 0, 1)});
  auto cert = decide_monotone_limit(b);
  CHECK(cert.verdict == Verdict::Converges);
  std::string why;
  CHECK_MESSAGE(verify_monotone_certificate(cert, b, 16, &why), why);
}

TEST_CASE("the Fremlin family does not decrease to 0 in C(K)") {
  // b_n = 1 - sum_{k<n} 1_{gamma_k}
  auto b = ElementSeq(CK, {}, Element::unit(CK), {SeqPiece::run(0, -1, 1, -1, 2)});
  CHECK(b.at(1) == Element::unit(CK));
  CHECK(b.at(3).value_at({0, 2}) == 0);
  auto cert = decide_monotone_limit(b);
  REQUIRE(cert.verdict == Verdict::Diverges);
  REQUIRE(cert.minorant);
  CHECK(cert.ambient_witness);
  CHECK(*cert.minorant == make_scalar(1, 2) * Element::atom(CK, {1, 1}));
  std::string why;
  CHECK_MESSAGE(verify_monotone_certificate(cert, b, 16, &why), why);
}

TEST_CASE("moving indicators converge to 0 in C(K) through a cofinite net") {
  auto s = ElementSeq(CK, {}, Element::zero(CK), {SeqPiece::moving(0, 1, 1, 0)});
  auto cert = decide_order_convergence(s, Element::zero(CK));
  REQUIRE(cert.verdict == Verdict::Converges);
  REQUIRE(cert.family);
  CHECK(cert.family->kind == DominatingFamily::Kind::CofiniteNet);
  CHECK(cert.order_bound == 1);
  std::string why;
  CHECK_MESSAGE(verify_certificate(cert, s, Element::zero(CK), 12, &why), why);
  CHECK_THROWS_AS(decide_monotone_limit(s), PreconditionError);

  auto wrong = decide_order_convergence(s, Element::unit(CK));
  CHECK(wrong.verdict == Verdict::Diverges);
  CHECK(verify_certificate(wrong, s, Element::unit(CK), 12));
}

TEST_CASE("partial sums of units converge to 1 in l0^inf and in c") {
  for (const auto& space : {L0, SpaceDesc::convergent()}) {
    auto s = partial_units(space);
    auto cert = decide_order_convergence(s, Element::unit(space));
    REQUIRE(cert.verdict == Verdict::Converges);
    CHECK(cert.family->kind == DominatingFamily::Kind::Sequence);
    std::string why;
    CHECK_MESSAGE(verify_certificate(cert, s, Element::unit(space), 20, &why), why);
    auto zero = decide_order_convergence(s, Element::zero(space));
    CHECK(zero.verdict == Verdict::Diverges);
    CHECK(zero.observed == 1);
  }
}

TEST_CASE("row sequences in E_K and l0^inf(NxN)") {
  auto ek = SpaceDesc::e_k();
  auto s = partial_units(ek, 2);
  auto cert = decide_order_convergence(s, Element::row_unit(ek, 2));
  REQUIRE(cert.verdict == Verdict::Converges);
  CHECK(cert.family->kind == DominatingFamily::Kind::Sequence);
  CHECK(verify_certificate(cert, s, Element::row_unit(ek, 2), 12));

  auto grid = SpaceDesc::finite_grid();
  auto m = ElementSeq(grid, {}, Element::zero(grid), {SeqPiece::moving(1, 1, 1, 0)});
  auto net = decide_order_convergence(m, Element::zero(grid));
  REQUIRE(net.verdict == Verdict::Converges);
  CHECK(net.family->kind == DominatingFamily::Kind::CofiniteNet);
  CHECK(verify_certificate(net, m, Element::zero(grid), 12));
  // a full row never enters l0^inf(NxN)
  CHECK(decide_order_convergence(partial_units(grid, 1), Element::zero(grid)).verdict == Verdict::Diverges);
}

TEST_CASE("relatively uniform Cauchy decisions") {
  auto s = partial_units();
  auto r = decide_uniform_cauchy(s);
  CHECK_FALSE(r.cauchy);
  CHECK(r.jump == 1);

  auto d = ElementSeq(L0, {}, Element::zero(L0), {SeqPiece::fixed({0, 1}, 0, 1)});
  auto ok = decide_uniform_cauchy(d);
  CHECK(ok.cauchy);
  CHECK(ok.regulator == Element::atom(L0, {0, 1}));
  for (std::int64_t n = 2; n < 8; ++n)
    for (std::int64_t k = n; k < 8; ++k) CHECK(leq(abs(d.at(n) - d.at(k)), Scalar(1, n) * ok.regulator));

  auto gated = SeqPiece::moving(0, 1, 1, 0, 2, 0);
  gated.gated = true;
  CHECK_FALSE(decide_uniform_cauchy(ElementSeq(L0, {}, Element::zero(L0), {gated})).cauchy);
}

TEST_CASE("telescoping preserves every term") {
  // sum_{k<=n} e_k - sum_{k<=n} e_{k+1} = e_1 - e_{n+1}
  auto s = ElementSeq(L0, {}, Element::zero(L0), {SeqPiece::run(0, 1, 1, 0, 1), SeqPiece::run(0, -1, 1, 1, 1)});
  auto t = s.telescoped();
  for (const auto& p : t.pieces()) CHECK(p.shape != SeqPiece::Shape::Run);
  for (std::int64_t n = 1; n <= 30; ++n) CHECK(t.at(n) == s.at(n));

  testing::Gen gen(3);
  for (const auto& space : {L0, CK, SpaceDesc::e_k(), SpaceDesc::finite_grid()}) {
    for (int trial = 0; trial < 30; ++trial) {
      auto x = random_seq(gen, space);
      auto y = x.telescoped();
      for (std::int64_t n = 1; n <= 25; ++n) CHECK(y.at(n) == x.at(n));
    }
  }
}

TEST_CASE("coordinates settle at the limit pattern") {
  testing::Gen gen(5);
  for (const auto& space : {L0, CK, SpaceDesc::e_k(), SpaceDesc::finite_grid()}) {
    CAPTURE(space.name());
    for (int trial = 0; trial < 40; ++trial) {
      auto x = random_seq(gen, space);
      auto lim = x.limit();
      auto decay = x.decay_columns();
      for (std::int64_t row : {std::int64_t{0}, std::int64_t{1}, std::int64_t{2}}) {
        if (space.kind == SpaceKind::TailSeq && row != 0) continue;
        if (space.kind == SpaceKind::RowBlock && row == 0) continue;
        for (std::int64_t col = 1; col <= 8; ++col) {
          AtomIndex c{row, col};
          std::int64_t n = x.settle_time(col);
          Scalar v = x.at(n).value_at(c);
          if (auto d = decay.find(c); d != decay.end()) v -= d->second / Scalar(n);
          CHECK(v == lim.value_at(c));
        }
      }
    }
  }
}

TEST_CASE("certificates verify on random convergent sequences") {
  testing::Gen gen(9);
  for (const auto& space : {L0, CK, SpaceDesc::e_k(), SpaceDesc::finite_grid()}) {
    CAPTURE(space.name());
    for (int trial = 0; trial < 25; ++trial) {
      auto x = random_seq(gen, space);
      auto lim = x.limit().as_element();
      if (!lim) continue;
      auto cert = decide_order_convergence(x, *lim);
      CHECK(cert.verdict == Verdict::Converges);
      std::string why;
      CHECK_MESSAGE(verify_certificate(cert, x, *lim, 6, &why), why);
    }
  }
}
