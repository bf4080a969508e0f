#include "rieszkit/examples.hpp"

namespace rieszkit {

Operator fremlin_operator() {
  auto ck = SpaceDesc::fin_dev();
  Operator t(SpaceDesc::tail_seq(), ck);
  t.set_atom_image({0, 1}, Element::atom(ck, {0, 1}));
  TailStencil s;
  s.threshold = 1;
  s.terms = {{StencilTerm{1, 0, 1, 0, 0}, StencilTerm{-1, 0, 1, -1, 0}}};
  t.set_stencil(s);
  t.set_unit_image(Element::zero(ck));
  return t;
}

Operator pair_difference_operator() {
  Operator t(SpaceDesc::e_k(), SpaceDesc::finite_grid());
  TailStencil s;
  s.modulus = 2;
  // m = 2k: -e_(n,k); m = 2k+1: +e_(n,k+1)
  s.terms = {{StencilTerm{-1, 0, 1, 0, 0}}, {StencilTerm{1, 0, 1, 1, 0}}};
  t.set_stencil(s);
  return t;
}

Operator limit_rank_one() {
  auto l0 = SpaceDesc::tail_seq();
  return rank_one(Functional::limit(l0), Element::atom(l0, {0, 1}));
}

namespace {

struct Dice {
  std::mt19937_64& rng;
  std::int64_t integer(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); }
  Scalar scalar(bool nonneg) {
    auto num = integer(nonneg ? 0 : -4, 4);
    return make_scalar(num, integer(1, 2));
  }
  Line line(bool nonneg, std::int64_t len) {
    Line l;
    l.tail = integer(0, 2) == 0 ? scalar(nonneg) : Scalar(0);
    for (std::int64_t i = integer(0, len); i > 0; --i) l.prefix.push_back(scalar(nonneg));
    return l;
  }
  Element element(const SpaceDesc& space, bool nonneg) {
    switch (space.kind) {
      case SpaceKind::FinDim: {
        std::vector<Scalar> v;
        for (int i = 0; i < space.dim; ++i) v.push_back(scalar(nonneg));
        return Element(space, FinVec{v});
      }
      case SpaceKind::TailSeq:
        return Element(space, line(nonneg, 3));
      case SpaceKind::FinDev: {
        DevMap d;
        d.ambient = integer(0, 2) == 0 ? scalar(nonneg) : Scalar(0);
        for (std::int64_t i = integer(0, 3); i > 0; --i) d.values[{integer(0, 1), integer(1, 4)}] = scalar(nonneg);
        return Element(space, d);
      }
      case SpaceKind::RowBlock: {
        RowGrid g;
        g.tail = integer(0, 2) == 0 ? scalar(nonneg) : Scalar(0);
        for (std::int64_t r = integer(0, 2); r > 0; --r) {
          Line l = line(nonneg, 3);
          if (!space.free_rows) l.tail = g.tail;
          g.rows.push_back(l);
        }
        return Element(space, g);
      }
    }
    return Element::zero(space);
  }
};

std::int64_t out_row(Dice& d, const SpaceDesc& codomain, bool row_local) {
  if (row_local) return 0;
  if (codomain.kind == SpaceKind::FinDev) return d.integer(0, 1);
  if (codomain.kind == SpaceKind::RowBlock) return d.integer(1, 2);
  return 0;
}

TailStencil random_stencil(Dice& d, const SpaceDesc& codomain, bool row_local, bool positive) {
  TailStencil s;
  s.threshold = d.integer(0, 2);
  s.modulus = d.integer(1, 2);
  s.terms.assign(s.modulus, {});
  for (std::int64_t r = 0; r < s.modulus; ++r) {
    std::int64_t k_min = floor_div(s.threshold - r, s.modulus) + 1;
    for (std::int64_t i = d.integer(0, 2); i > 0; --i) {
      StencilTerm t;
      t.coef = d.scalar(positive);
      t.slope = d.integer(1, 2);
      t.offset = 1 - t.slope * k_min + d.integer(0, 2);
      t.row = out_row(d, codomain, row_local);
      s.terms[r].push_back(t);
    }
  }
  return s;
}

}  // namespace

Operator random_operator(std::mt19937_64& rng, const RandomOperatorOptions& opts) {
  Dice d{rng};
  const SpaceDesc& dom = opts.domain;
  const SpaceDesc& cod = opts.codomain;
  bool pos = opts.positive;
  Operator t(dom, cod);
  if (dom.kind == SpaceKind::FinDim) {
    for (int j = 1; j <= dom.dim; ++j) t.set_atom_image({0, j}, d.element(cod, pos));
    return t;
  }
  bool row_local = dom.kind == SpaceKind::RowBlock;
  // a positive operator needs a row template to dominate generic rows, which only E_K codomains allow
  bool templated = cod.kind == SpaceKind::RowBlock && cod.free_rows;
  if (!row_local || (cod.kind == SpaceKind::RowBlock && (!pos || !dom.has_row_units() || templated)))
    t.set_stencil(random_stencil(d, cod, row_local, pos));
  for (std::int64_t i = d.integer(0, opts.max_explicit); i > 0; --i) {
    AtomIndex a{row_local ? d.integer(1, 2) : 0, d.integer(1, 4)};
    t.set_atom_image(a, d.element(cod, pos));
  }
  if (!pos) {
    if (dom.has_row_units()) {
      for (std::int64_t r = d.integer(0, 2); r > 0; --r) t.set_row_unit_image(d.integer(1, 2), d.element(cod, false));
      if (cod.kind == SpaceKind::RowBlock && d.integer(0, 1) == 1) {
        Line l = d.line(false, 2);
        if (!cod.free_rows) l.tail = 0;
        t.set_row_unit_template(l);
      }
    }
    t.set_unit_image(d.element(cod, false));
    return t;
  }
  // positive: every unit-type image dominates the atom sums below it
  Element one = Element::unit(cod);
  Scalar total = 0;
  if (dom.has_row_units()) {
    for (std::int64_t n = 1; n <= t.explicit_rows(); ++n) {
      Scalar c = row_atom_sum(t, n, &identity_part).sup_norm() + d.integer(0, 2);
      t.set_row_unit_image(n, c * one + d.element(cod, true));
      total += t.image_of_row_unit(n).sup_norm();
    }
    if (cod.kind == SpaceKind::RowBlock && cod.free_rows) {
      Scalar sup = 0;
      LinePattern gp = generic_row_atom_sum(t, &identity_part);
      for (const auto& v : gp.prefix) sup = max_of(sup, v);
      for (const auto& v : gp.period) sup = max_of(sup, v);
      t.set_row_unit_template(Line{{}, sup + d.integer(0, 1)});
      total += sup + 1;
    }
    t.set_unit_image((total + d.integer(0, 2)) * one + d.element(cod, true));
    return t;
  }
  Scalar c = atom_sum(t, &identity_part).sup_norm() + d.integer(0, 2);
  t.set_unit_image(c * one + d.element(cod, true));
  return t;
}

}  // namespace rieszkit
