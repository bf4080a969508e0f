#include "rieszkit/element.hpp"

#include <algorithm>
#include <sstream>

namespace rieszkit {

Scalar Line::at(std::int64_t col) const {
  if (col >= 1 && static_cast<std::size_t>(col) <= prefix.size()) return prefix[col - 1];
  return tail;
}

namespace {

void canonicalize(Line& line) {
  while (!line.prefix.empty() && line.prefix.back() == line.tail) line.prefix.pop_back();
}

Line combine_lines(const Line& a, const Line& b, const std::function<Scalar(const Scalar&, const Scalar&)>& f) {
  Line out;
  std::size_t n = std::max(a.prefix.size(), b.prefix.size());
  out.prefix.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.prefix.push_back(f(a.at(i), b.at(i)));
  out.tail = f(a.tail, b.tail);
  canonicalize(out);
  return out;
}

Line map_line(const Line& a, const std::function<Scalar(const Scalar&)>& f) {
  Line out;
  out.prefix.reserve(a.prefix.size());
  for (const auto& v : a.prefix) out.prefix.push_back(f(v));
  out.tail = f(a.tail);
  canonicalize(out);
  return out;
}

Line row_of(const RowGrid& g, std::size_t n) {
  if (n >= 1 && n <= g.rows.size()) return g.rows[n - 1];
  return Line{{}, g.tail};
}

}  // namespace

Element::Element(SpaceDesc space, Payload payload) : space_(space), payload_(std::move(payload)) {
  switch (space_.kind) {
    case SpaceKind::FinDim: {
      auto* p = std::get_if<FinVec>(&payload_);
      if (!p || static_cast<int>(p->values.size()) != space_.dim)
        throw PreconditionError("FinDim payload must hold exactly " + std::to_string(space_.dim) + " values");
      break;
    }
    case SpaceKind::TailSeq: {
      auto* p = std::get_if<Line>(&payload_);
      if (!p) throw PreconditionError("TailSeq payload expected");
      canonicalize(*p);
      break;
    }
    case SpaceKind::FinDev: {
      auto* p = std::get_if<DevMap>(&payload_);
      if (!p) throw PreconditionError("FinDev payload expected");
      for (auto it = p->values.begin(); it != p->values.end();) {
        check_atom_index(space_, it->first);
        if (it->second == p->ambient)
          it = p->values.erase(it);
        else
          ++it;
      }
      break;
    }
    case SpaceKind::RowBlock: {
      auto* p = std::get_if<RowGrid>(&payload_);
      if (!p) throw PreconditionError("RowBlock payload expected");
      for (auto& row : p->rows) {
        canonicalize(row);
        if (!space_.free_rows && row.tail != p->tail)
          throw PreconditionError("l0inf(NxN) elements need every row tail equal to the global value");
      }
      while (!p->rows.empty() && p->rows.back().prefix.empty() && p->rows.back().tail == p->tail) p->rows.pop_back();
      break;
    }
  }
}

Element Element::zero(const SpaceDesc& space) {
  switch (space.kind) {
    case SpaceKind::FinDim:
      return Element(space, FinVec{std::vector<Scalar>(space.dim)});
    case SpaceKind::TailSeq:
      return Element(space, Line{});
    case SpaceKind::FinDev:
      return Element(space, DevMap{});
    case SpaceKind::RowBlock:
      return Element(space, RowGrid{});
  }
  throw PreconditionError("unknown space kind");
}

Element Element::unit(const SpaceDesc& space) { return map_values(zero(space), [](const Scalar&) { return Scalar(1); }); }

Element Element::atom(const SpaceDesc& space, const AtomIndex& index) {
  check_atom_index(space, index);
  return add_at(zero(space), index, 1);
}

Element Element::row_unit(const SpaceDesc& space, std::int64_t row) {
  if (!space.has_row_units()) throw InvalidIndex("row units exist only in E_K");
  if (row < 1) throw InvalidIndex("row index must be >= 1");
  RowGrid g;
  g.rows.assign(row, Line{});
  g.rows[row - 1].tail = 1;
  return Element(space, std::move(g));
}

Element Element::fin_dim(std::vector<Scalar> values) {
  auto space = SpaceDesc::fin_dim(static_cast<int>(values.size()));
  return Element(space, FinVec{std::move(values)});
}

Element Element::tail_seq(std::vector<Scalar> prefix, Scalar tail, bool as_c) {
  return Element(as_c ? SpaceDesc::convergent() : SpaceDesc::tail_seq(), Line{std::move(prefix), std::move(tail)});
}

Element Element::fin_dev(std::map<AtomIndex, Scalar> values, Scalar ambient) {
  return Element(SpaceDesc::fin_dev(), DevMap{std::move(values), std::move(ambient)});
}

Element Element::row_block(const SpaceDesc& space, std::vector<Line> rows, Scalar tail) {
  if (space.kind != SpaceKind::RowBlock) throw SpaceMismatch("row_block needs a RowBlock space");
  return Element(space, RowGrid{std::move(rows), std::move(tail)});
}

Scalar Element::value_at(const AtomIndex& index) const {
  check_atom_index(space_, index);
  switch (space_.kind) {
    case SpaceKind::FinDim:
      return fin().values[index.col - 1];
    case SpaceKind::TailSeq:
      return line().at(index.col);
    case SpaceKind::FinDev: {
      auto it = dev().values.find(index);
      return it == dev().values.end() ? dev().ambient : it->second;
    }
    case SpaceKind::RowBlock:
      return row_of(grid(), index.row).at(index.col);
  }
  return 0;
}

Scalar Element::background() const {
  switch (space_.kind) {
    case SpaceKind::FinDim:
      return 0;
    case SpaceKind::TailSeq:
      return line().tail;
    case SpaceKind::FinDev:
      return dev().ambient;
    case SpaceKind::RowBlock:
      return grid().tail;
  }
  return 0;
}

std::vector<AtomIndex> Element::support() const {
  std::vector<AtomIndex> out;
  switch (space_.kind) {
    case SpaceKind::FinDim:
      for (std::size_t i = 0; i < fin().values.size(); ++i)
        if (fin().values[i] != 0) out.push_back({0, static_cast<std::int64_t>(i + 1)});
      break;
    case SpaceKind::TailSeq:
      for (std::size_t i = 0; i < line().prefix.size(); ++i)
        if (line().prefix[i] != line().tail) out.push_back({0, static_cast<std::int64_t>(i + 1)});
      break;
    case SpaceKind::FinDev:
      for (const auto& [k, v] : dev().values) out.push_back(k);
      break;
    case SpaceKind::RowBlock:
      for (std::size_t n = 0; n < grid().rows.size(); ++n) {
        const Line& row = grid().rows[n];
        for (std::size_t m = 0; m < row.prefix.size(); ++m)
          if (row.prefix[m] != row.tail)
            out.push_back({static_cast<std::int64_t>(n + 1), static_cast<std::int64_t>(m + 1)});
      }
      break;
  }
  return out;
}

Scalar Element::sup_norm() const {
  Scalar best = 0;
  auto visit = [&](const Scalar& v) {
    Scalar a = abs_value(v);
    if (a > best) best = a;
  };
  switch (space_.kind) {
    case SpaceKind::FinDim:
      for (const auto& v : fin().values) visit(v);
      break;
    case SpaceKind::TailSeq:
      for (const auto& v : line().prefix) visit(v);
      visit(line().tail);
      break;
    case SpaceKind::FinDev:
      for (const auto& [k, v] : dev().values) visit(v);
      visit(dev().ambient);
      break;
    case SpaceKind::RowBlock:
      for (const auto& row : grid().rows) {
        for (const auto& v : row.prefix) visit(v);
        visit(row.tail);
      }
      visit(grid().tail);
      break;
  }
  return best;
}

bool Element::is_zero() const { return *this == zero(space_); }

bool Element::is_positive() const { return pos(*this) == *this; }

bool Element::is_strictly_positive() const { return is_positive() && !is_zero(); }

std::string to_string(const Line& line) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < line.prefix.size(); ++i) os << (i ? "," : "") << line.prefix[i].get_str();
  os << (line.prefix.empty() ? "" : " ") << "| " << line.tail.get_str() << ")";
  return os.str();
}

std::string Element::to_string() const {
  std::ostringstream os;
  switch (space_.kind) {
    case SpaceKind::FinDim: {
      os << "[";
      for (std::size_t i = 0; i < fin().values.size(); ++i) os << (i ? "," : "") << fin().values[i].get_str();
      os << "]";
      break;
    }
    case SpaceKind::TailSeq:
      os << rieszkit::to_string(line());
      break;
    case SpaceKind::FinDev: {
      os << "{";
      bool first = true;
      for (const auto& [k, v] : dev().values) {
        os << (first ? "" : ", ") << rieszkit::to_string(k, space_) << ":" << v.get_str();
        first = false;
      }
      os << (first ? "" : " ") << "| " << dev().ambient.get_str() << "}";
      break;
    }
    case SpaceKind::RowBlock: {
      os << "[";
      for (std::size_t n = 0; n < grid().rows.size(); ++n) os << (n ? "; " : "") << rieszkit::to_string(grid().rows[n]);
      os << (grid().rows.empty() ? "" : " ") << "|| " << grid().tail.get_str() << "]";
      break;
    }
  }
  return os.str();
}

Element map_values(const Element& x, const std::function<Scalar(const Scalar&)>& f) {
  switch (x.space().kind) {
    case SpaceKind::FinDim: {
      FinVec out;
      for (const auto& v : x.fin().values) out.values.push_back(f(v));
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::TailSeq:
      return Element(x.space(), map_line(x.line(), f));
    case SpaceKind::FinDev: {
      DevMap out;
      out.ambient = f(x.dev().ambient);
      for (const auto& [k, v] : x.dev().values) out.values.emplace(k, f(v));
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::RowBlock: {
      RowGrid out;
      out.tail = f(x.grid().tail);
      for (const auto& row : x.grid().rows) out.rows.push_back(map_line(row, f));
      return Element(x.space(), std::move(out));
    }
  }
  throw PreconditionError("unknown space kind");
}

Element combine(const Element& x, const Element& y, const std::function<Scalar(const Scalar&, const Scalar&)>& f) {
  require_same_space(x.space(), y.space(), "combine");
  switch (x.space().kind) {
    case SpaceKind::FinDim: {
      FinVec out;
      for (std::size_t i = 0; i < x.fin().values.size(); ++i) out.values.push_back(f(x.fin().values[i], y.fin().values[i]));
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::TailSeq:
      return Element(x.space(), combine_lines(x.line(), y.line(), f));
    case SpaceKind::FinDev: {
      DevMap out;
      out.ambient = f(x.dev().ambient, y.dev().ambient);
      for (const auto& [k, v] : x.dev().values) out.values.emplace(k, f(v, y.value_at(k)));
      for (const auto& [k, v] : y.dev().values)
        if (!x.dev().values.count(k)) out.values.emplace(k, f(x.dev().ambient, v));
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::RowBlock: {
      RowGrid out;
      out.tail = f(x.grid().tail, y.grid().tail);
      std::size_t n = std::max(x.grid().rows.size(), y.grid().rows.size());
      for (std::size_t r = 1; r <= n; ++r) out.rows.push_back(combine_lines(row_of(x.grid(), r), row_of(y.grid(), r), f));
      return Element(x.space(), std::move(out));
    }
  }
  throw PreconditionError("unknown space kind");
}

Element sup2(const Element& x, const Element& y) {
  return combine(x, y, [](const Scalar& a, const Scalar& b) { return max_of(a, b); });
}

Element inf2(const Element& x, const Element& y) {
  return combine(x, y, [](const Scalar& a, const Scalar& b) { return min_of(a, b); });
}

Element pos(const Element& x) { return map_values(x, pos_part); }
Element neg(const Element& x) { return map_values(x, neg_part); }
Element abs(const Element& x) { return map_values(x, abs_value); }

bool is_disjoint(const Element& x, const Element& y) { return inf2(abs(x), abs(y)).is_zero(); }

bool leq(const Element& x, const Element& y) { return (y - x).is_positive(); }

Scalar coordinate_functional(const AtomIndex& index, const Element& x) { return x.value_at(index); }

Element operator+(const Element& x, const Element& y) {
  return combine(x, y, [](const Scalar& a, const Scalar& b) { return Scalar(a + b); });
}

Element operator-(const Element& x, const Element& y) {
  return combine(x, y, [](const Scalar& a, const Scalar& b) { return Scalar(a - b); });
}

Element operator-(const Element& x) {
  return map_values(x, [](const Scalar& a) { return Scalar(-a); });
}

Element operator*(const Scalar& c, const Element& x) {
  return map_values(x, [&c](const Scalar& a) { return Scalar(c * a); });
}

Element add_at(const Element& x, const AtomIndex& index, const Scalar& c) {
  check_atom_index(x.space(), index);
  if (c == 0) return x;
  switch (x.space().kind) {
    case SpaceKind::FinDim: {
      FinVec out = x.fin();
      out.values[index.col - 1] += c;
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::TailSeq: {
      Line out = x.line();
      if (out.prefix.size() < static_cast<std::size_t>(index.col)) out.prefix.resize(index.col, out.tail);
      out.prefix[index.col - 1] += c;
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::FinDev: {
      DevMap out = x.dev();
      auto [it, inserted] = out.values.emplace(index, out.ambient);
      it->second += c;
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::RowBlock: {
      RowGrid out = x.grid();
      while (out.rows.size() < static_cast<std::size_t>(index.row)) out.rows.push_back(Line{{}, out.tail});
      Line& row = out.rows[index.row - 1];
      if (row.prefix.size() < static_cast<std::size_t>(index.col)) row.prefix.resize(index.col, row.tail);
      row.prefix[index.col - 1] += c;
      return Element(x.space(), std::move(out));
    }
  }
  throw PreconditionError("unknown space kind");
}

Element add_many(const Element& x, const std::map<AtomIndex, Scalar>& deltas) {
  if (deltas.empty()) return x;
  for (const auto& [index, c] : deltas) check_atom_index(x.space(), index);
  switch (x.space().kind) {
    case SpaceKind::FinDim: {
      FinVec out = x.fin();
      for (const auto& [index, c] : deltas) out.values[index.col - 1] += c;
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::TailSeq: {
      Line out = x.line();
      auto last = static_cast<std::size_t>(deltas.rbegin()->first.col);
      if (out.prefix.size() < last) out.prefix.resize(last, out.tail);
      for (const auto& [index, c] : deltas) out.prefix[index.col - 1] += c;
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::FinDev: {
      DevMap out = x.dev();
      for (const auto& [index, c] : deltas) {
        auto [it, inserted] = out.values.emplace(index, out.ambient);
        it->second += c;
      }
      return Element(x.space(), std::move(out));
    }
    case SpaceKind::RowBlock: {
      RowGrid out = x.grid();
      for (const auto& [index, c] : deltas) {
        while (out.rows.size() < static_cast<std::size_t>(index.row)) out.rows.push_back(Line{{}, out.tail});
        Line& row = out.rows[index.row - 1];
        if (row.prefix.size() < static_cast<std::size_t>(index.col)) row.prefix.resize(index.col, row.tail);
        row.prefix[index.col - 1] += c;
      }
      return Element(x.space(), std::move(out));
    }
  }
  throw PreconditionError("unknown space kind");
}

}  // namespace rieszkit
