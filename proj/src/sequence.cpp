#include "rieszkit/sequence.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace rieszkit {

namespace {

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

bool is_dynamic(const SeqPiece& p) { return p.shape != SeqPiece::Shape::Fixed; }

// Largest column index the base element spells out explicitly.
std::int64_t base_extent(const Element& x) {
  switch (x.space().kind) {
    case SpaceKind::FinDim:
      return x.space().dim;
    case SpaceKind::TailSeq:
      return static_cast<std::int64_t>(x.line().prefix.size());
    case SpaceKind::FinDev: {
      std::int64_t m = 0;
      for (const auto& [index, v] : x.dev().values) m = std::max(m, index.col);
      return m;
    }
    case SpaceKind::RowBlock: {
      std::int64_t m = static_cast<std::int64_t>(x.grid().rows.size());
      for (const auto& row : x.grid().rows) m = std::max(m, static_cast<std::int64_t>(row.prefix.size()));
      return m;
    }
  }
  return 0;
}

std::string coef_text(const Scalar& c) {
  if (c == 1) return "";
  if (c == -1) return "-";
  return to_string(c) + "*";
}

}  // namespace

SeqPiece SeqPiece::fixed(const AtomIndex& at, const Scalar& coef, const Scalar& decay) {
  SeqPiece p;
  p.shape = Shape::Fixed;
  p.coef = coef;
  p.decay = decay;
  p.row = at.row;
  p.offset = at.col;
  return p;
}

SeqPiece SeqPiece::moving(std::int64_t row, const Scalar& coef, std::int64_t slope, std::int64_t offset,
                          std::int64_t modulus, std::int64_t residue, std::int64_t k_lo) {
  SeqPiece p;
  p.shape = Shape::Moving;
  p.coef = coef;
  p.row = row;
  p.slope = slope;
  p.offset = offset;
  p.modulus = modulus;
  p.residue = residue;
  p.k_lo = k_lo;
  return p;
}

SeqPiece SeqPiece::run(std::int64_t row, const Scalar& coef, std::int64_t slope, std::int64_t offset,
                       std::int64_t k_lo, std::int64_t modulus, std::int64_t residue) {
  SeqPiece p = moving(row, coef, slope, offset, modulus, residue, k_lo);
  p.shape = Shape::Run;
  return p;
}

bool SeqPiece::active(std::int64_t n) const {
  switch (shape) {
    case Shape::Fixed:
      return true;
    case Shape::Moving:
      return step(n) >= k_lo && (!gated || floor_mod(n - residue, modulus) == 0);
    case Shape::Run:
      return step(n) >= k_lo;
  }
  return false;
}

std::string SeqPiece::to_string(const SpaceDesc& space) const {
  std::ostringstream out;
  std::string k = modulus == 1 && residue == 0 ? std::string("n")
                                               : "floor((n-" + std::to_string(residue) + ")/" + std::to_string(modulus) + ")";
  std::string col = (slope == 1 ? std::string() : std::to_string(slope) + "*") + "k" +
                    (offset == 0 ? std::string() : (offset > 0 ? "+" : "") + std::to_string(offset));
  std::string where = space.kind == SpaceKind::TailSeq || space.kind == SpaceKind::FinDim
                          ? col
                          : "(" + std::to_string(row) + "," + col + ")";
  switch (shape) {
    case Shape::Fixed:
      out << coef_text(coef) << "e" << rieszkit::to_string(AtomIndex{row, offset}, space);
      if (decay != 0) out << " + (" << rieszkit::to_string(decay) << "/n)e" << rieszkit::to_string(AtomIndex{row, offset}, space);
      break;
    case Shape::Moving:
      out << coef_text(coef) << "e[" << where << "] at k=" << k << (k_lo != 1 ? " >= " + std::to_string(k_lo) : "");
      if (gated) out << " when n=" << residue << " mod " << modulus;
      break;
    case Shape::Run:
      out << coef_text(coef) << "sum_{k=" << k_lo << ".." << k << "} e[" << where << "]";
      break;
  }
  return out.str();
}

ElementSeq::ElementSeq(SpaceDesc space, std::vector<Element> early, Element base, std::vector<SeqPiece> pieces)
    : space_(space), early_(std::move(early)), base_(std::move(base)), pieces_(std::move(pieces)) {
  for (const auto& x : early_) require_same_space(space_, x.space(), "sequence term");
  require_same_space(space_, base_.space(), "sequence base");
  for (auto& p : pieces_) {
    if (p.modulus < 1) throw PreconditionError("sequence piece modulus must be >= 1");
    p.residue = floor_mod(p.residue, p.modulus);
    if (p.decay != 0 && p.shape != SeqPiece::Shape::Fixed) throw PreconditionError("decay is only allowed on fixed atoms");
    if (p.shape == SeqPiece::Shape::Fixed) {
      check_atom_index(space_, {p.row, p.offset});
      continue;
    }
    if (space_.kind == SpaceKind::FinDim) throw PreconditionError("moving atoms cannot live in R^n");
    if (p.slope < 1) throw PreconditionError("moving atoms need a column slope >= 1");
    check_atom_index(space_, {p.row, p.slope * p.k_lo + p.offset});
  }
}

ElementSeq ElementSeq::constant(const Element& x) { return ElementSeq(x.space(), {}, x, {}); }

Element ElementSeq::at(std::int64_t n) const {
  if (n < 1) throw InvalidIndex("sequence index must be >= 1");
  if (n < start()) return early_[n - 1];
  std::map<AtomIndex, Scalar> deltas;
  for (const auto& p : pieces_) {
    if (!p.active(n)) continue;
    switch (p.shape) {
      case SeqPiece::Shape::Fixed:
        deltas[{p.row, p.offset}] += p.coef + p.decay / Scalar(n);
        break;
      case SeqPiece::Shape::Moving:
        deltas[{p.row, p.slope * p.step(n) + p.offset}] += p.coef;
        break;
      case SeqPiece::Shape::Run:
        for (std::int64_t k = p.k_lo, last = p.step(n); k <= last; ++k) deltas[{p.row, p.slope * k + p.offset}] += p.coef;
        break;
    }
  }
  return add_many(base_, deltas);
}

std::int64_t ElementSeq::period() const {
  std::int64_t moduli = 1, slopes = 1;
  for (const auto& p : pieces_) {
    if (!is_dynamic(p)) continue;
    moduli = std::lcm(moduli, p.modulus);
    slopes = std::lcm(slopes, p.slope);
  }
  return moduli * slopes;
}

std::int64_t ElementSeq::settle_rate() const {
  std::int64_t q = 1;
  for (const auto& p : pieces_)
    if (is_dynamic(p)) q = std::max(q, p.modulus);
  return q;
}

std::int64_t ElementSeq::settle_offset() const {
  std::int64_t o = 0, r = 0;
  for (const auto& p : pieces_) {
    if (!is_dynamic(p)) continue;
    o = std::max(o, abs64(p.offset));
    r = std::max(r, p.residue);
  }
  return start() + settle_rate() * (o + 2) + r;
}

std::int64_t ElementSeq::settle_time(std::int64_t col) const { return settle_offset() + settle_rate() * col; }

std::int64_t ElementSeq::horizon() const {
  std::int64_t q = settle_rate(), s = 1;
  std::int64_t h = std::max(start(), base_extent(base_));
  for (const auto& p : pieces_) {
    h = std::max({h, abs64(p.offset), p.residue, abs64(p.row)});
    if (is_dynamic(p)) {
      s = std::max(s, p.slope);
      h = std::max(h, p.slope * abs64(p.k_lo));
    }
  }
  return settle_offset() + q * q * (2 * h + 2 * s + 4) + q;
}

CompletionElement ElementSeq::limit() const {
  auto line_limit = [&](std::int64_t row, std::int64_t extent, const std::function<Scalar(std::int64_t)>& base_at) {
    std::int64_t reach = extent, period = 1;
    for (const auto& p : pieces_) {
      if (p.row != row || p.shape == SeqPiece::Shape::Moving) continue;
      if (p.shape == SeqPiece::Shape::Fixed) {
        reach = std::max(reach, p.offset);
      } else {
        reach = std::max(reach, p.slope * p.k_lo + p.offset);
        period = std::lcm(period, p.slope);
      }
    }
    auto value = [&](std::int64_t c) {
      Scalar v = base_at(c);
      for (const auto& p : pieces_) {
        if (p.row != row) continue;
        if (p.shape == SeqPiece::Shape::Fixed && p.offset == c) v += p.coef;
        if (p.shape == SeqPiece::Shape::Run && c >= p.slope * p.k_lo + p.offset && floor_mod(c - p.offset, p.slope) == 0)
          v += p.coef;
      }
      return v;
    };
    LinePattern out;
    out.prefix.clear();
    out.period.clear();
    for (std::int64_t c = 1; c <= reach; ++c) out.prefix.push_back(value(c));
    for (std::int64_t c = reach + 1; c <= reach + period; ++c) out.period.push_back(value(c));
    out.canonicalize();
    return out;
  };

  switch (space_.kind) {
    case SpaceKind::FinDim: {
      FinVec v = base_.fin();
      for (const auto& p : pieces_) v.values[p.offset - 1] += p.coef;
      return CompletionElement(space_, v);
    }
    case SpaceKind::TailSeq:
      return CompletionElement(space_, line_limit(0, base_extent(base_), [&](std::int64_t c) { return base_.line().at(c); }));
    case SpaceKind::FinDev: {
      DevPattern d;
      d.ambient = base_.dev().ambient;
      std::set<std::int64_t> families;
      for (const auto& [index, v] : base_.dev().values) families.insert(index.row);
      for (const auto& p : pieces_) families.insert(p.row);
      for (auto f : families) {
        std::int64_t extent = 0;
        for (const auto& [index, v] : base_.dev().values)
          if (index.row == f) extent = std::max(extent, index.col);
        d.families[f] = line_limit(f, extent, [&](std::int64_t c) { return base_.value_at({f, c}); });
      }
      return CompletionElement(space_, d);
    }
    case SpaceKind::RowBlock: {
      RowPattern g;
      g.generic = LinePattern::constant(base_.grid().tail);
      std::int64_t rows = static_cast<std::int64_t>(base_.grid().rows.size());
      for (const auto& p : pieces_) rows = std::max(rows, p.row);
      for (std::int64_t r = 1; r <= rows; ++r) {
        std::int64_t extent = r <= static_cast<std::int64_t>(base_.grid().rows.size())
                                  ? static_cast<std::int64_t>(base_.grid().rows[r - 1].prefix.size())
                                  : 0;
        g.rows.push_back(line_limit(r, extent, [&](std::int64_t c) { return base_.value_at({r, c}); }));
      }
      return CompletionElement(space_, g);
    }
  }
  throw PreconditionError("unknown space kind");
}

std::map<AtomIndex, Scalar> ElementSeq::decay_columns() const {
  std::map<AtomIndex, Scalar> out;
  for (const auto& p : pieces_)
    if (p.shape == SeqPiece::Shape::Fixed && p.decay != 0) out[{p.row, p.offset}] += p.decay;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

bool ElementSeq::has_moving_parts() const { return std::any_of(pieces_.begin(), pieces_.end(), is_dynamic); }

std::vector<std::int64_t> ElementSeq::piece_rows() const {
  std::set<std::int64_t> rows;
  for (const auto& p : pieces_) rows.insert(p.row);
  return {rows.begin(), rows.end()};
}

ElementSeq ElementSeq::operator-(const Element& x) const {
  std::vector<Element> early;
  for (const auto& e : early_) early.push_back(e - x);
  return ElementSeq(space_, std::move(early), base_ - x, pieces_);
}

ElementSeq ElementSeq::scaled(const Scalar& c) const {
  std::vector<Element> early;
  for (const auto& e : early_) early.push_back(c * e);
  auto pieces = pieces_;
  for (auto& p : pieces) {
    p.coef *= c;
    p.decay *= c;
  }
  std::erase_if(pieces, [](const SeqPiece& p) { return p.coef == 0 && p.decay == 0; });
  return ElementSeq(space_, std::move(early), c * base_, std::move(pieces));
}

ElementSeq ElementSeq::telescoped() const {
  std::vector<Element> early = early_;
  Element base = base_;
  std::vector<SeqPiece> pieces;
  std::int64_t new_start = start();

  // fixed atoms without decay fold into the base
  for (const auto& p : pieces_) {
    if (p.shape == SeqPiece::Shape::Fixed) {
      base = add_at(base, {p.row, p.offset}, p.coef);
      if (p.decay != 0) pieces.push_back(SeqPiece::fixed({p.row, p.offset}, 0, p.decay));
    } else {
      pieces.push_back(p);
    }
  }

  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < pieces.size() && !merged; ++i) {
      for (std::size_t j = 0; j < pieces.size() && !merged; ++j) {
        const SeqPiece& a = pieces[i];
        const SeqPiece& b = pieces[j];
        if (i == j || a.shape != SeqPiece::Shape::Run || b.shape != SeqPiece::Shape::Run) continue;
        if (a.row != b.row || a.slope != b.slope || a.modulus != b.modulus || a.residue != b.residue) continue;
        if (a.coef != -b.coef || floor_mod(b.offset - a.offset, a.slope) != 0) continue;
        std::int64_t d = (b.offset - a.offset) / a.slope;
        if (d < 0) continue;  // the mirrored pair is handled with roles swapped
        // a covers k in [a.k_lo, K], b covers the same columns as k in [b.k_lo + d, K + d]
        std::int64_t lo_b = b.k_lo + d;
        std::int64_t valid_from = std::max(a.k_lo, lo_b) - 1;
        std::vector<SeqPiece> next;
        for (std::size_t t = 0; t < pieces.size(); ++t)
          if (t != i && t != j) next.push_back(pieces[t]);
        for (std::int64_t k = std::min(a.k_lo, lo_b); k < std::max(a.k_lo, lo_b); ++k)
          base = add_at(base, {a.row, a.slope * k + a.offset}, a.k_lo < lo_b ? a.coef : Scalar(-a.coef));
        for (std::int64_t t = 1; t <= d; ++t)
          next.push_back(SeqPiece::moving(a.row, -a.coef, a.slope, a.offset + a.slope * t, a.modulus, a.residue, valid_from));
        std::int64_t n0 = std::max(new_start, a.modulus * valid_from + a.residue);
        // materialize terms before the identity holds
        while (static_cast<std::int64_t>(early.size()) + 1 < n0) early.push_back(at(static_cast<std::int64_t>(early.size()) + 1));
        new_start = n0;
        pieces = std::move(next);
        merged = true;
      }
    }
  }
  return ElementSeq(space_, std::move(early), std::move(base), std::move(pieces));
}

std::string ElementSeq::to_string() const {
  std::ostringstream out;
  if (start() > 1) out << "(explicit for n < " << start() << ") ";
  out << base_.to_string();
  for (const auto& p : pieces_) out << " + " << p.to_string(space_);
  return out.str();
}

}  // namespace rieszkit
