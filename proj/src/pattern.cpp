#include "rieszkit/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rieszkit {

Scalar LinePattern::at(std::int64_t col) const {
  if (col >= 1 && static_cast<std::size_t>(col) <= prefix.size()) return prefix[col - 1];
  auto offset = static_cast<std::size_t>(col - 1) - prefix.size();
  return period[offset % period.size()];
}

void LinePattern::canonicalize() {
  if (period.empty()) period.push_back(0);
  const std::size_t n = period.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < n && repeats; ++i) repeats = period[i] == period[i % p];
    if (repeats) {
      period.resize(p);
      break;
    }
  }
  while (!prefix.empty() && prefix.back() == period.back()) {
    std::rotate(period.rbegin(), period.rbegin() + 1, period.rend());
    prefix.pop_back();
  }
}

std::string to_string(const LinePattern& line) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < line.prefix.size(); ++i) os << (i ? "," : "") << line.prefix[i].get_str();
  os << (line.prefix.empty() ? "" : " ") << "| ";
  for (std::size_t i = 0; i < line.period.size(); ++i) os << (i ? "," : "") << line.period[i].get_str();
  os << (line.period.size() > 1 ? " ...)" : ")");
  return os.str();
}

namespace {

LinePattern combine_lines(const LinePattern& a, const LinePattern& b,
                          const std::function<Scalar(const Scalar&, const Scalar&)>& f) {
  LinePattern out;
  std::size_t start = std::max(a.prefix.size(), b.prefix.size());
  std::size_t period = std::lcm(a.period.size(), b.period.size());
  out.prefix.reserve(start);
  for (std::size_t c = 1; c <= start; ++c) out.prefix.push_back(f(a.at(c), b.at(c)));
  out.period.clear();
  for (std::size_t c = start + 1; c <= start + period; ++c) out.period.push_back(f(a.at(c), b.at(c)));
  out.canonicalize();
  return out;
}

LinePattern map_line(const LinePattern& a, const std::function<Scalar(const Scalar&)>& f) {
  LinePattern out;
  for (const auto& v : a.prefix) out.prefix.push_back(f(v));
  out.period.clear();
  for (const auto& v : a.period) out.period.push_back(f(v));
  out.canonicalize();
  return out;
}

const LinePattern& family_line(const DevPattern& p, std::int64_t family, const LinePattern& fallback) {
  auto it = p.families.find(family);
  return it == p.families.end() ? fallback : it->second;
}

const LinePattern& row_line(const RowPattern& p, std::size_t n) {
  return (n >= 1 && n <= p.rows.size()) ? p.rows[n - 1] : p.generic;
}

void visit_lines(const CompletionElement::Payload& payload, const std::function<void(const LinePattern&)>& f) {
  if (auto* lp = std::get_if<LinePattern>(&payload)) f(*lp);
  if (auto* dp = std::get_if<DevPattern>(&payload)) {
    for (const auto& [fam, line] : dp->families) f(line);
    f(LinePattern::constant(dp->ambient));
  }
  if (auto* rp = std::get_if<RowPattern>(&payload)) {
    for (const auto& line : rp->rows) f(line);
    f(rp->generic);
  }
  if (auto* fv = std::get_if<FinVec>(&payload)) f(LinePattern{fv->values, {Scalar(0)}});
}

}  // namespace

CompletionElement::CompletionElement(SpaceDesc space, Payload payload) : space_(space), payload_(std::move(payload)) {
  switch (space_.kind) {
    case SpaceKind::FinDim:
      if (!std::holds_alternative<FinVec>(payload_) || static_cast<int>(std::get<FinVec>(payload_).values.size()) != space_.dim)
        throw PreconditionError("FinDim completion payload mismatch");
      break;
    case SpaceKind::TailSeq:
      std::get<LinePattern>(payload_).canonicalize();
      break;
    case SpaceKind::FinDev: {
      auto& p = std::get<DevPattern>(payload_);
      for (auto it = p.families.begin(); it != p.families.end();) {
        it->second.canonicalize();
        if (it->second == LinePattern::constant(p.ambient))
          it = p.families.erase(it);
        else
          ++it;
      }
      break;
    }
    case SpaceKind::RowBlock: {
      auto& p = std::get<RowPattern>(payload_);
      p.generic.canonicalize();
      for (auto& row : p.rows) row.canonicalize();
      while (!p.rows.empty() && p.rows.back() == p.generic) p.rows.pop_back();
      break;
    }
  }
}

CompletionElement::CompletionElement(const Element& x) : space_(x.space()) {
  switch (x.space().kind) {
    case SpaceKind::FinDim:
      payload_ = x.fin();
      break;
    case SpaceKind::TailSeq:
      payload_ = LinePattern::from_line(x.line());
      break;
    case SpaceKind::FinDev: {
      DevPattern p;
      p.ambient = x.dev().ambient;
      for (const auto& [k, v] : x.dev().values) {
        auto [it, inserted] = p.families.emplace(k.row, LinePattern::constant(p.ambient));
        auto& pre = it->second.prefix;
        if (pre.size() < static_cast<std::size_t>(k.col)) pre.resize(k.col, p.ambient);
        pre[k.col - 1] = v;
      }
      for (auto& [fam, line] : p.families) line.canonicalize();
      payload_ = std::move(p);
      break;
    }
    case SpaceKind::RowBlock: {
      RowPattern p;
      p.generic = LinePattern::constant(x.grid().tail);
      for (const auto& row : x.grid().rows) p.rows.push_back(LinePattern::from_line(row));
      payload_ = std::move(p);
      break;
    }
  }
}

CompletionElement CompletionElement::zero(const SpaceDesc& space) { return CompletionElement(Element::zero(space)); }

CompletionElement CompletionElement::in_row(const SpaceDesc& space, std::int64_t row, const LinePattern& line) {
  if (space.kind != SpaceKind::RowBlock || row < 1) throw InvalidIndex("in_row needs a RowBlock space and row >= 1");
  RowPattern p;
  p.rows.assign(row, LinePattern::constant(0));
  p.rows[row - 1] = line;
  return CompletionElement(space, std::move(p));
}

CompletionElement CompletionElement::in_rows_after(const SpaceDesc& space, std::int64_t after_row, const LinePattern& line) {
  if (space.kind != SpaceKind::RowBlock || after_row < 0) throw InvalidIndex("in_rows_after needs a RowBlock space");
  RowPattern p;
  p.rows.assign(after_row, LinePattern::constant(0));
  p.generic = line;
  return CompletionElement(space, std::move(p));
}

Scalar CompletionElement::value_at(const AtomIndex& index) const {
  check_atom_index(space_, index);
  switch (space_.kind) {
    case SpaceKind::FinDim:
      return std::get<FinVec>(payload_).values[index.col - 1];
    case SpaceKind::TailSeq:
      return std::get<LinePattern>(payload_).at(index.col);
    case SpaceKind::FinDev: {
      const auto& p = std::get<DevPattern>(payload_);
      auto it = p.families.find(index.row);
      return it == p.families.end() ? p.ambient : it->second.at(index.col);
    }
    case SpaceKind::RowBlock:
      return row_line(std::get<RowPattern>(payload_), index.row).at(index.col);
  }
  return 0;
}

Scalar CompletionElement::ambient() const {
  if (auto* p = std::get_if<DevPattern>(&payload_)) return p->ambient;
  return 0;
}

Scalar CompletionElement::sup_norm() const {
  Scalar best = 0;
  visit_lines(payload_, [&](const LinePattern& line) {
    for (const auto& v : line.prefix) best = max_of(best, abs_value(v));
    for (const auto& v : line.period) best = max_of(best, abs_value(v));
  });
  return best;
}

bool CompletionElement::is_member() const {
  switch (space_.kind) {
    case SpaceKind::FinDim:
      return true;
    case SpaceKind::TailSeq:
      return std::get<LinePattern>(payload_).is_eventually_constant();
    case SpaceKind::FinDev: {
      const auto& p = std::get<DevPattern>(payload_);
      for (const auto& [fam, line] : p.families)
        if (!line.is_eventually_constant() || line.period[0] != p.ambient) return false;
      return true;
    }
    case SpaceKind::RowBlock: {
      const auto& p = std::get<RowPattern>(payload_);
      if (!p.generic.prefix.empty() || !p.generic.is_eventually_constant()) return false;
      for (const auto& row : p.rows) {
        if (!row.is_eventually_constant()) return false;
        if (!space_.free_rows && row.period[0] != p.generic.period[0]) return false;
      }
      return true;
    }
  }
  return false;
}

std::optional<Element> CompletionElement::as_element() const {
  if (!is_member()) return std::nullopt;
  switch (space_.kind) {
    case SpaceKind::FinDim:
      return Element(space_, std::get<FinVec>(payload_));
    case SpaceKind::TailSeq: {
      const auto& p = std::get<LinePattern>(payload_);
      return Element(space_, Line{p.prefix, p.period[0]});
    }
    case SpaceKind::FinDev: {
      const auto& p = std::get<DevPattern>(payload_);
      DevMap d;
      d.ambient = p.ambient;
      for (const auto& [fam, line] : p.families)
        for (std::size_t i = 0; i < line.prefix.size(); ++i) d.values[{fam, static_cast<std::int64_t>(i + 1)}] = line.prefix[i];
      return Element(space_, std::move(d));
    }
    case SpaceKind::RowBlock: {
      const auto& p = std::get<RowPattern>(payload_);
      RowGrid g;
      g.tail = p.generic.period[0];
      for (const auto& row : p.rows) g.rows.push_back(Line{row.prefix, row.period[0]});
      return Element(space_, std::move(g));
    }
  }
  return std::nullopt;
}

Element CompletionElement::to_element() const {
  auto e = as_element();
  if (!e) throw PreconditionError("completion element " + to_string() + " is not in " + space_.name());
  return *e;
}

bool CompletionElement::is_zero() const { return *this == zero(space_); }

bool CompletionElement::is_positive() const {
  bool ok = true;
  visit_lines(payload_, [&](const LinePattern& line) {
    for (const auto& v : line.prefix) ok = ok && v >= 0;
    for (const auto& v : line.period) ok = ok && v >= 0;
  });
  return ok;
}

std::string CompletionElement::to_string() const {
  if (auto e = as_element()) return e->to_string();
  std::ostringstream os;
  switch (space_.kind) {
    case SpaceKind::TailSeq:
      os << rieszkit::to_string(std::get<LinePattern>(payload_));
      break;
    case SpaceKind::FinDev: {
      const auto& p = std::get<DevPattern>(payload_);
      os << "{";
      for (const auto& [fam, line] : p.families) os << "g" << fam << ".*:" << rieszkit::to_string(line) << " ";
      os << "| " << p.ambient.get_str() << "}";
      break;
    }
    case SpaceKind::RowBlock: {
      const auto& p = std::get<RowPattern>(payload_);
      os << "[";
      for (std::size_t n = 0; n < p.rows.size(); ++n) os << (n ? "; " : "") << rieszkit::to_string(p.rows[n]);
      os << (p.rows.empty() ? "" : " ") << "|| rows* " << rieszkit::to_string(p.generic) << "]";
      break;
    }
    case SpaceKind::FinDim:
      break;
  }
  return os.str();
}

CompletionElement map_values(const CompletionElement& x, const std::function<Scalar(const Scalar&)>& f) {
  const auto& sp = x.space();
  switch (sp.kind) {
    case SpaceKind::FinDim: {
      FinVec out;
      for (const auto& v : std::get<FinVec>(x.payload()).values) out.values.push_back(f(v));
      return CompletionElement(sp, std::move(out));
    }
    case SpaceKind::TailSeq:
      return CompletionElement(sp, map_line(std::get<LinePattern>(x.payload()), f));
    case SpaceKind::FinDev: {
      const auto& p = std::get<DevPattern>(x.payload());
      DevPattern out;
      out.ambient = f(p.ambient);
      for (const auto& [fam, line] : p.families) out.families.emplace(fam, map_line(line, f));
      return CompletionElement(sp, std::move(out));
    }
    case SpaceKind::RowBlock: {
      const auto& p = std::get<RowPattern>(x.payload());
      RowPattern out;
      out.generic = map_line(p.generic, f);
      for (const auto& row : p.rows) out.rows.push_back(map_line(row, f));
      return CompletionElement(sp, std::move(out));
    }
  }
  throw PreconditionError("unknown space kind");
}

CompletionElement combine(const CompletionElement& x, const CompletionElement& y,
                          const std::function<Scalar(const Scalar&, const Scalar&)>& f) {
  require_same_space(x.space(), y.space(), "combine");
  const auto& sp = x.space();
  switch (sp.kind) {
    case SpaceKind::FinDim: {
      const auto& a = std::get<FinVec>(x.payload()).values;
      const auto& b = std::get<FinVec>(y.payload()).values;
      FinVec out;
      for (std::size_t i = 0; i < a.size(); ++i) out.values.push_back(f(a[i], b[i]));
      return CompletionElement(sp, std::move(out));
    }
    case SpaceKind::TailSeq:
      return CompletionElement(sp, combine_lines(std::get<LinePattern>(x.payload()), std::get<LinePattern>(y.payload()), f));
    case SpaceKind::FinDev: {
      const auto& a = std::get<DevPattern>(x.payload());
      const auto& b = std::get<DevPattern>(y.payload());
      DevPattern out;
      out.ambient = f(a.ambient, b.ambient);
      LinePattern amb_a = LinePattern::constant(a.ambient), amb_b = LinePattern::constant(b.ambient);
      std::vector<std::int64_t> fams;
      for (const auto& [fam, line] : a.families) fams.push_back(fam);
      for (const auto& [fam, line] : b.families) fams.push_back(fam);
      for (auto fam : fams)
        out.families[fam] = combine_lines(family_line(a, fam, amb_a), family_line(b, fam, amb_b), f);
      return CompletionElement(sp, std::move(out));
    }
    case SpaceKind::RowBlock: {
      const auto& a = std::get<RowPattern>(x.payload());
      const auto& b = std::get<RowPattern>(y.payload());
      RowPattern out;
      out.generic = combine_lines(a.generic, b.generic, f);
      std::size_t n = std::max(a.rows.size(), b.rows.size());
      for (std::size_t r = 1; r <= n; ++r) out.rows.push_back(combine_lines(row_line(a, r), row_line(b, r), f));
      return CompletionElement(sp, std::move(out));
    }
  }
  throw PreconditionError("unknown space kind");
}

CompletionElement operator+(const CompletionElement& x, const CompletionElement& y) {
  return combine(x, y, [](const Scalar& a, const Scalar& b) { return Scalar(a + b); });
}

CompletionElement operator-(const CompletionElement& x, const CompletionElement& y) {
  return combine(x, y, [](const Scalar& a, const Scalar& b) { return Scalar(a - b); });
}

CompletionElement operator*(const Scalar& c, const CompletionElement& x) {
  return map_values(x, [&c](const Scalar& a) { return Scalar(c * a); });
}

CompletionElement pos(const CompletionElement& x) { return map_values(x, pos_part); }

CompletionElement sup2(const CompletionElement& x, const CompletionElement& y) {
  return combine(x, y, [](const Scalar& a, const Scalar& b) { return max_of(a, b); });
}

bool leq(const CompletionElement& x, const CompletionElement& y) { return (y - x).is_positive(); }

}  // namespace rieszkit
