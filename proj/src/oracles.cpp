#include "rieszkit/oracles.hpp"

#include <algorithm>
#include <functional>

namespace rieszkit {

Matrix matrix_positive_part(const Matrix& m) {
  Matrix out = m;
  for (auto& row : out)
    for (auto& v : row) v = pos_part(v);
  return out;
}

Matrix to_matrix(const Operator& t) {
  if (t.domain().kind != SpaceKind::FinDim || t.codomain().kind != SpaceKind::FinDim)
    throw UnsupportedHypothesis("matrices are only defined between R^n spaces");
  Matrix out(t.codomain().dim, std::vector<Scalar>(t.domain().dim));
  for (int j = 1; j <= t.domain().dim; ++j) {
    Element img = t.image_of_atom({0, j});
    for (int i = 1; i <= t.codomain().dim; ++i) out[i - 1][j - 1] = img.value_at({0, i});
  }
  return out;
}

// ---------------------------------------------------------------------------

CompletionElement grid_interval_sup(const Operator& t, const Element& x, int depth, int level) {
  require_same_space(t.domain(), x.space(), "grid argument");
  if (!x.is_positive()) throw PreconditionError("grid_interval_sup needs x >= 0");
  const SpaceDesc& dom = t.domain();

  // x split into pieces that move independently: y = sum c_i piece_i
  std::vector<Element> pieces;
  if (dom.kind == SpaceKind::FinDim) {
    for (int i = 1; i <= dom.dim; ++i) pieces.push_back(x.value_at({0, i}) * Element::atom(dom, {0, i}));
  } else if (dom.kind == SpaceKind::TailSeq) {
    std::int64_t n = level;
    if (n <= 0) n = std::max<std::int64_t>({static_cast<std::int64_t>(x.line().prefix.size()), t.explicit_reach(),
                                             t.stencil().threshold}) + 1;
    n = std::max<std::int64_t>(n, static_cast<std::int64_t>(x.line().prefix.size()));
    Element rest = x;
    for (std::int64_t i = 1; i <= n; ++i) {
      Element p = x.value_at({0, i}) * Element::atom(dom, {0, i});
      pieces.push_back(p);
      rest = rest - p;
    }
    pieces.push_back(rest);
  } else {
    throw UnsupportedHypothesis("grid oracle covers R^n and l0^inf domains");
  }

  std::vector<Element> images;
  for (const auto& p : pieces) images.push_back(t.apply(p));

  // full dyadic grid while it stays small; otherwise its vertices, which carry the same maximum
  std::int64_t steps = std::int64_t(1) << depth;
  double size = 1;
  for (std::size_t i = 0; i < images.size(); ++i) size *= double(steps + 1);
  std::vector<Scalar> axis;
  if (size <= 65536) {
    for (std::int64_t j = 0; j <= steps; ++j) axis.push_back(make_scalar(j, steps));
  } else {
    axis = {Scalar(0), Scalar(1)};
  }

  Element best = Element::zero(t.codomain());
  std::vector<std::size_t> idx(images.size(), 0);
  while (true) {
    Element y = Element::zero(t.codomain());
    for (std::size_t i = 0; i < images.size(); ++i)
      if (axis[idx[i]] != 0) y = y + axis[idx[i]] * images[i];
    best = sup2(best, y);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == axis.size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return best;
}

// ---------------------------------------------------------------------------

Scalar majorant_growth_probe(const Operator& t, int level) {
  if (!t.domain().has_row_units() || t.codomain() != SpaceDesc::finite_grid())
    throw PreconditionError("the growth probe runs on operators E_K -> l0^inf(NxN)");
  if (level < 1) throw PreconditionError("level must be >= 1");
  const std::int64_t n_rows = level;
  const std::int64_t window = 2 * n_rows + 2;

  std::int64_t q = t.stencil().modulus, omax = 0;
  for (const auto& cls : t.stencil().terms)
    for (const auto& term : cls) omax = std::max<std::int64_t>(omax, term.offset < 0 ? -term.offset : term.offset);
  std::int64_t k_big = q * (window + omax + 2) + t.stencil().threshold + t.explicit_reach();

  auto in_grid = [&](const AtomIndex& c) { return c.row <= n_rows && c.col <= n_rows; };

  // S(ru_n) for the least majorant: pos parts of atom images summed, plus the
  // positive part of whatever T(ru_n) adds beyond the atoms
  std::map<AtomIndex, Scalar> unit_grid;
  Scalar unit_far = 0;
  Element rows_total = Element::zero(t.codomain());
  for (std::int64_t n = 1; n <= n_rows; ++n) {
    std::map<AtomIndex, Scalar> acc;
    Scalar tail = 0;
    Element plain = Element::zero(t.codomain());
    for (std::int64_t k = 1; k <= k_big; ++k) {
      Element img = t.image_of_atom({n, k});
      plain = plain + img;
      Element p = pos(img);
      for (const auto& c : p.support()) acc[c] += p.value_at(c);
      tail += p.background();
    }
    Element ru = t.image_of_row_unit(n);
    rows_total = rows_total + ru;
    Element extra = pos(ru - plain);
    for (const auto& c : extra.support()) acc[c] += extra.value_at(c);
    tail += extra.background();

    // l0^inf(NxN) ties every far coordinate to one tail value, so S(ru_n) has
    // tail at least its largest far entry
    Scalar far = tail;
    for (const auto& [c, v] : acc) {
      if (in_grid(c)) {
        unit_grid[c] += v;
      } else if (c.col <= window) {
        far = max_of(far, v + tail);
      }
    }
    unit_far += far;
  }
  Element extra = pos(t.unit_image() - rows_total);
  for (std::int64_t r = 1; r <= n_rows; ++r)
    for (std::int64_t c = 1; c <= n_rows; ++c) unit_grid[{r, c}] += extra.value_at({r, c});
  unit_far += extra.background();

  Scalar mu = unit_far;
  for (const auto& [c, v] : unit_grid) mu = max_of(mu, v);
  return mu;
}

ProbeResult majorant_growth_table(const Operator& t, int max_level) {
  ProbeResult out;
  for (int n = 1; n <= max_level; ++n) out.mu.push_back(majorant_growth_probe(t, n));
  out.notes.push_back("level N keeps rows 1..N of E_K and the N x N corner of the codomain plus its common tail");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Generator> search_pool(const SpaceDesc& s) {
  std::vector<Generator> g;
  switch (s.kind) {
    case SpaceKind::FinDim:
      for (int i = 1; i <= std::min(s.dim, 4); ++i) g.push_back(Generator::of_atom({0, i}));
      break;
    case SpaceKind::TailSeq:
    case SpaceKind::FinDev:
      for (int i = 1; i <= 3; ++i) g.push_back(Generator::of_atom({0, i}));
      g.push_back(Generator::unit());
      break;
    case SpaceKind::RowBlock:
      g.push_back(Generator::of_atom({1, 1}));
      g.push_back(Generator::of_atom({1, 2}));
      g.push_back(Generator::of_atom({2, 1}));
      if (s.has_row_units()) g.push_back(Generator::of_row_unit(1));
      g.push_back(Generator::unit());
      break;
  }
  return g;
}

}  // namespace

SearchResult bruteforce_dominating_search(const ElementSeq& xs, int bound, int check_terms) {
  SearchResult out;
  out.checked_terms = check_terms;
  auto limit = xs.limit().as_element();
  if (!limit) {
    out.family = "coordinatewise limit is outside the space";
    return out;
  }
  const SpaceDesc& s = xs.space();
  std::vector<Element> gaps;
  for (int n = 1; n <= check_terms; ++n) gaps.push_back(abs(xs.at(n) - *limit));

  struct Item {
    std::string label;
    std::vector<Element> values;  // at n = 1..check_terms
  };
  std::vector<Item> pool;
  for (const auto& g : search_pool(s)) {
    Element base = generator_element(s, g);
    Item harmonic{g.to_string(s) + "/n", {}}, geometric{g.to_string(s) + "/2^n", {}};
    for (int n = 1; n <= check_terms; ++n) {
      harmonic.values.push_back(make_scalar(1, n) * base);
      geometric.values.push_back(make_scalar(1, std::int64_t(1) << std::min(n, 62)) * base);
    }
    pool.push_back(std::move(harmonic));
    pool.push_back(std::move(geometric));
  }

  // every candidate is a sum of positive decreasing-to-zero terms, so only domination needs checking
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, const std::vector<Element>&)> visit = [&](std::size_t from,
                                                                           const std::vector<Element>& b) {
    ++out.candidates;
    bool ok = true;
    for (int n = 0; n < check_terms && ok; ++n) ok = leq(gaps[n], b[n]);
    if (ok) {
      out.found = true;
      std::string f;
      for (auto i : chosen) f += (f.empty() ? "" : " + ") + pool[i].label;
      out.family = "b_n = " + (f.empty() ? std::string("0") : f);
      return true;
    }
    if (chosen.size() == static_cast<std::size_t>(bound)) return false;
    for (std::size_t i = from; i < pool.size(); ++i) {
      std::vector<Element> next = b;
      for (int n = 0; n < check_terms; ++n) next[n] = next[n] + pool[i].values[n];
      chosen.push_back(i);
      if (visit(i, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  visit(0, std::vector<Element>(check_terms, Element::zero(s)));
  if (!out.found) out.family = "no family of size <= " + std::to_string(bound) + " dominates";
  return out;
}

}  // namespace rieszkit
