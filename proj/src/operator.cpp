#include "rieszkit/operator.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace rieszkit {

std::string Generator::to_string(const SpaceDesc& space) const {
  switch (kind) {
    case Kind::Atom:
      return rieszkit::to_string(atom, space);
    case Kind::RowUnit:
      return "ru_" + std::to_string(row);
    case Kind::Unit:
      return "1";
  }
  return "?";
}

std::vector<std::pair<Generator, Scalar>> decompose(const Element& x) {
  std::vector<std::pair<Generator, Scalar>> out;
  auto push = [&](const Generator& g, const Scalar& c) {
    if (c != 0) out.emplace_back(g, c);
  };
  switch (x.space().kind) {
    case SpaceKind::FinDim:
      for (std::size_t i = 0; i < x.fin().values.size(); ++i)
        push(Generator::of_atom({0, static_cast<std::int64_t>(i) + 1}), x.fin().values[i]);
      break;
    case SpaceKind::TailSeq: {
      const Line& l = x.line();
      for (std::size_t i = 0; i < l.prefix.size(); ++i)
        push(Generator::of_atom({0, static_cast<std::int64_t>(i) + 1}), l.prefix[i] - l.tail);
      push(Generator::unit(), l.tail);
      break;
    }
    case SpaceKind::FinDev:
      for (const auto& [index, v] : x.dev().values) push(Generator::of_atom(index), v - x.dev().ambient);
      push(Generator::unit(), x.dev().ambient);
      break;
    case SpaceKind::RowBlock: {
      const RowGrid& g = x.grid();
      for (std::size_t n = 0; n < g.rows.size(); ++n) {
        const Line& row = g.rows[n];
        auto r = static_cast<std::int64_t>(n) + 1;
        for (std::size_t m = 0; m < row.prefix.size(); ++m)
          push(Generator::of_atom({r, static_cast<std::int64_t>(m) + 1}), row.prefix[m] - row.tail);
        if (x.space().free_rows) push(Generator::of_row_unit(r), row.tail - g.tail);
      }
      push(Generator::unit(), g.tail);
      break;
    }
  }
  return out;
}

Element generator_element(const SpaceDesc& space, const Generator& g) {
  switch (g.kind) {
    case Generator::Kind::Atom:
      return Element::atom(space, g.atom);
    case Generator::Kind::RowUnit:
      return Element::row_unit(space, g.row);
    case Generator::Kind::Unit:
      if (!space.unit_is_generator()) throw InvalidIndex("R^n has no unit generator");
      return Element::unit(space);
  }
  throw PreconditionError("unknown generator");
}

Element recompose(const SpaceDesc& space, const std::vector<std::pair<Generator, Scalar>>& terms) {
  Element x = Element::zero(space);
  for (const auto& [g, c] : terms) x = x + c * generator_element(space, g);
  return x;
}

// ---------------------------------------------------------------------------

namespace {

bool zero_term(const StencilTerm& t) { return t.coef == 0 && t.growth == 0; }

std::int64_t first_step(std::int64_t threshold, std::int64_t q, std::int64_t r) { return floor_div(threshold - r, q) + 1; }

Line add_lines(const Line& a, const Line& b) {
  Line out;
  std::size_t n = std::max(a.prefix.size(), b.prefix.size());
  for (std::size_t i = 1; i <= n; ++i) out.prefix.push_back(a.at(i) + b.at(i));
  out.tail = a.tail + b.tail;
  return out;
}

Line scale_line(const Scalar& c, const Line& a) {
  Line out = a;
  for (auto& v : out.prefix) v *= c;
  out.tail *= c;
  return out;
}

}  // namespace

bool TailStencil::empty() const {
  return std::all_of(terms.begin(), terms.end(), [](const auto& v) { return v.empty(); });
}

bool TailStencil::locally_finite() const {
  for (const auto& cls : terms)
    for (const auto& t : cls)
      if (t.slope < 1) return false;
  return true;
}

TailStencil TailStencil::with_modulus(std::int64_t q) const {
  if (q % modulus != 0) throw PreconditionError("new modulus must be a multiple of the old one");
  TailStencil out;
  out.threshold = threshold;
  out.modulus = q;
  out.terms.assign(q, {});
  for (std::int64_t r2 = 0; r2 < q; ++r2) {
    std::int64_t r = r2 % modulus, j = (r2 - r) / modulus;
    for (auto t : terms[r]) {
      // k = (q/modulus)*k2 + j
      t.offset += t.slope * j;
      t.slope *= q / modulus;
      out.terms[r2].push_back(t);
    }
  }
  return out;
}

void TailStencil::normalize() {
  if (modulus < 1) throw PreconditionError("stencil modulus must be >= 1");
  if (static_cast<std::int64_t>(terms.size()) != modulus)
    throw PreconditionError("stencil needs one term list per residue class");
  for (auto& cls : terms) {
    std::vector<StencilTerm> merged;
    for (const auto& t : cls) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const StencilTerm& u) {
        return u.slope == t.slope && u.offset == t.offset && u.row == t.row;
      });
      if (it == merged.end()) {
        merged.push_back(t);
      } else {
        it->coef += t.coef;
        it->growth += t.growth;
      }
    }
    std::erase_if(merged, zero_term);
    std::sort(merged.begin(), merged.end(), [](const StencilTerm& a, const StencilTerm& b) {
      return std::tie(a.row, a.slope, a.offset) < std::tie(b.row, b.slope, b.offset);
    });
    cls = std::move(merged);
  }
  // try to express the rule with a smaller modulus
  for (std::int64_t d = 1; d < modulus; ++d) {
    if (modulus % d != 0) continue;
    TailStencil small;
    small.threshold = threshold;
    small.modulus = d;
    small.terms.assign(d, {});
    bool ok = true;
    for (std::int64_t r = 0; r < d && ok; ++r) {
      for (auto t : terms[r]) {
        if ((t.slope * d) % modulus != 0) {
          ok = false;
          break;
        }
        t.slope = t.slope * d / modulus;
        small.terms[r].push_back(t);
      }
    }
    if (ok && small.with_modulus(modulus).terms == terms) {
      *this = std::move(small);
      return;
    }
  }
  if (empty()) {
    modulus = 1;
    terms.assign(1, {});
  }
}

std::vector<std::pair<AtomIndex, Scalar>> TailStencil::image(std::int64_t m, std::optional<std::int64_t> in_row) const {
  std::map<AtomIndex, Scalar> acc;
  if (m <= threshold) return {};
  std::int64_t r = floor_mod(m, modulus), k = (m - r) / modulus;
  for (const auto& t : terms[r]) acc[{in_row ? *in_row : t.row, t.slope * k + t.offset}] += t.coef + t.growth * Scalar(m);
  std::vector<std::pair<AtomIndex, Scalar>> out;
  for (const auto& [a, v] : acc)
    if (v != 0) out.emplace_back(a, v);
  return out;
}

std::vector<std::int64_t> TailStencil::crossings() const {
  std::set<std::int64_t> out;
  for (std::int64_t r = 0; r < modulus; ++r) {
    const auto& cls = terms[r];
    for (std::size_t i = 0; i < cls.size(); ++i)
      for (std::size_t j = i + 1; j < cls.size(); ++j) {
        const auto &a = cls[i], &b = cls[j];
        if (a.row != b.row || a.slope == b.slope) continue;
        std::int64_t num = b.offset - a.offset, den = a.slope - b.slope;
        if (num % den != 0) continue;
        std::int64_t m = modulus * (num / den) + r;
        if (m > threshold) out.insert(m);
      }
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------

Operator::Operator(SpaceDesc domain, SpaceDesc codomain)
    : domain_(domain), codomain_(codomain), unit_(Element::zero(codomain)) {
  if (domain_.kind == SpaceKind::FinDev) throw UnsupportedHypothesis("operators defined on C(K) are not supported");
}

Operator Operator::zero(const SpaceDesc& domain, const SpaceDesc& codomain) { return Operator(domain, codomain); }

Operator Operator::identity(const SpaceDesc& space) {
  Operator t(space, space);
  if (space.kind == SpaceKind::FinDim) {
    for (int i = 1; i <= space.dim; ++i) t.set_atom_image({0, i}, Element::atom(space, {0, i}));
    return t;
  }
  TailStencil s;
  s.terms = {{StencilTerm{1, 0, 1, 0, 0}}};
  t.set_stencil(s);
  t.set_unit_image(Element::unit(space));
  if (space.has_row_units()) t.set_row_unit_template(Line{{}, 1});
  return t;
}

Operator Operator::from_matrix(const std::vector<std::vector<Scalar>>& rows) {
  if (rows.empty() || rows.front().empty()) throw PreconditionError("matrix must be non-empty");
  auto m = static_cast<int>(rows.size()), n = static_cast<int>(rows.front().size());
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != n) throw PreconditionError("ragged matrix");
  Operator t(SpaceDesc::fin_dim(n), SpaceDesc::fin_dim(m));
  for (int j = 0; j < n; ++j) {
    std::vector<Scalar> col;
    for (int i = 0; i < m; ++i) col.push_back(rows[i][j]);
    t.set_atom_image({0, j + 1}, Element::fin_dim(col));
  }
  return t;
}

Operator& Operator::set_atom_image(const AtomIndex& a, const Element& image) {
  check_atom_index(domain_, a);
  require_same_space(codomain_, image.space(), "atom image");
  atoms_[a] = image;
  return *this;
}

Operator& Operator::set_stencil(TailStencil stencil) {
  stencil.normalize();
  if (!stencil.empty()) {
    if (domain_.kind == SpaceKind::FinDim) throw PreconditionError("R^n domains take explicit images only");
    if (row_local() && codomain_.kind != SpaceKind::RowBlock)
      throw PreconditionError("row-local tail rules need a RowBlock codomain");
    for (std::int64_t r = 0; r < stencil.modulus; ++r) {
      std::int64_t k = first_step(stencil.threshold, stencil.modulus, r);
      for (const auto& t : stencil.terms[r]) {
        if (t.slope < 0) throw PreconditionError("stencil slopes must be >= 0");
        if (row_local() && t.row != 0) throw PreconditionError("row-local stencil terms carry no row");
        if (t.slope > 0 && codomain_.kind == SpaceKind::FinDim)
          throw PreconditionError("a moving stencil leaves R^" + std::to_string(codomain_.dim));
        check_atom_index(codomain_, {row_local() ? 1 : t.row, t.slope * k + t.offset});
      }
    }
  }
  stencil_ = std::move(stencil);
  return *this;
}

Operator& Operator::set_unit_image(const Element& image) {
  if (!domain_.unit_is_generator()) throw InvalidIndex("R^n has no unit generator");
  require_same_space(codomain_, image.space(), "unit image");
  unit_ = image;
  return *this;
}

Operator& Operator::set_row_unit_image(std::int64_t row, const Element& image) {
  if (!domain_.has_row_units()) throw InvalidIndex("row units exist only in E_K");
  if (row < 1) throw InvalidIndex("row index must be >= 1");
  require_same_space(codomain_, image.space(), "row unit image");
  row_units_[row] = image;
  return *this;
}

Operator& Operator::set_row_unit_template(const Line& line) {
  if (!domain_.has_row_units()) throw InvalidIndex("row units exist only in E_K");
  if (codomain_.kind != SpaceKind::RowBlock) throw PreconditionError("row templates need a RowBlock codomain");
  if (!codomain_.free_rows && line.tail != 0) throw PreconditionError("rows of l0^inf(NxN) must end in the global tail");
  row_template_ = line;
  return *this;
}

Element Operator::image_of_atom(const AtomIndex& a) const {
  check_atom_index(domain_, a);
  if (auto it = atoms_.find(a); it != atoms_.end()) return it->second;
  auto terms = stencil_.image(a.col, row_local() ? std::optional<std::int64_t>(a.row) : std::nullopt);
  std::map<AtomIndex, Scalar> m(terms.begin(), terms.end());
  return add_many(Element::zero(codomain_), m);
}

Element Operator::image_of_row_unit(std::int64_t row) const {
  if (!domain_.has_row_units()) throw InvalidIndex("row units exist only in E_K");
  if (auto it = row_units_.find(row); it != row_units_.end()) return it->second;
  if (!row_template_) return Element::zero(codomain_);
  std::vector<Line> rows(row, Line{{}, 0});
  rows[row - 1] = *row_template_;
  return Element::row_block(codomain_, std::move(rows), 0);
}

Element Operator::image(const Generator& g) const {
  switch (g.kind) {
    case Generator::Kind::Atom:
      return image_of_atom(g.atom);
    case Generator::Kind::RowUnit:
      return image_of_row_unit(g.row);
    case Generator::Kind::Unit:
      if (!domain_.unit_is_generator()) throw InvalidIndex("R^n has no unit generator");
      return unit_;
  }
  throw PreconditionError("unknown generator");
}

Element Operator::apply(const Element& x) const {
  require_same_space(domain_, x.space(), "operator argument");
  Element y = Element::zero(codomain_);
  for (const auto& [g, c] : decompose(x)) y = y + c * image(g);
  return y;
}

std::int64_t Operator::explicit_reach() const {
  std::int64_t n = stencil_.empty() ? 0 : stencil_.threshold;
  for (const auto& [a, img] : atoms_) n = std::max(n, a.col);
  return n;
}

std::int64_t Operator::explicit_rows() const {
  std::int64_t n = 0;
  for (const auto& [a, img] : atoms_) n = std::max(n, a.row);
  for (const auto& [r, img] : row_units_) n = std::max(n, r);
  return n;
}

std::int64_t Operator::touched_rows() const {
  std::int64_t n = explicit_rows();
  auto rows_of = [](const Element& x) {
    return x.space().kind == SpaceKind::RowBlock ? static_cast<std::int64_t>(x.grid().rows.size()) : std::int64_t{0};
  };
  for (const auto& [a, img] : atoms_) n = std::max(n, rows_of(img));
  for (const auto& [r, img] : row_units_) n = std::max(n, rows_of(img));
  return std::max(n, rows_of(unit_));
}

bool Operator::is_zero() const {
  for (const auto& [a, img] : atoms_)
    if (!img.is_zero()) return false;
  for (const auto& [r, img] : row_units_)
    if (!img.is_zero()) return false;
  if (row_template_ && !Element::tail_seq(row_template_->prefix, row_template_->tail).is_zero()) return false;
  return stencil_.empty() && unit_.is_zero();
}

std::string Operator::to_string() const {
  std::ostringstream out;
  out << "T : " << domain_.name() << " -> " << codomain_.name() << "\n";
  for (const auto& [a, img] : atoms_) out << "  T(e" << rieszkit::to_string(a, domain_) << ") = " << img.to_string() << "\n";
  if (!stencil_.empty()) {
    out << "  for m > " << stencil_.threshold << ", m = " << stencil_.modulus << "k + r:\n";
    for (std::int64_t r = 0; r < stencil_.modulus; ++r) {
      out << "    r = " << r << ":";
      for (const auto& t : stencil_.terms[r]) {
        out << " " << rieszkit::to_string(t.coef);
        if (t.growth != 0) out << "+" << rieszkit::to_string(t.growth) << "m";
        out << "@" << (row_local() ? std::string("row,") : t.row != 0 ? std::to_string(t.row) + "," : std::string())
            << t.slope << "k" << (t.offset >= 0 ? "+" : "") << t.offset;
      }
      out << "\n";
    }
  }
  for (const auto& [r, img] : row_units_) out << "  T(ru_" << r << ") = " << img.to_string() << "\n";
  if (row_template_) out << "  T(ru_n) = row n " << rieszkit::to_string(*row_template_) << " otherwise\n";
  if (domain_.unit_is_generator()) out << "  T(1) = " << unit_.to_string() << "\n";
  return out.str();
}

Operator operator+(const Operator& s, const Operator& t) {
  require_same_space(s.domain_, t.domain_, "operator sum (domain)");
  require_same_space(s.codomain_, t.codomain_, "operator sum (codomain)");
  Operator out(s.domain_, s.codomain_);

  std::set<AtomIndex> keys;
  for (const auto& [a, img] : s.atoms_) keys.insert(a);
  for (const auto& [a, img] : t.atoms_) keys.insert(a);

  TailStencil merged;
  if (s.stencil_.empty() || t.stencil_.empty()) {
    merged = s.stencil_.empty() ? t.stencil_ : s.stencil_;
  } else {
    std::int64_t n = std::max(s.stencil_.threshold, t.stencil_.threshold);
    if (s.stencil_.threshold != t.stencil_.threshold) {
      if (s.row_local()) throw UnsupportedHypothesis("row-local tail rules with different thresholds cannot be added");
      for (std::int64_t m = std::min(s.stencil_.threshold, t.stencil_.threshold) + 1; m <= n; ++m) keys.insert({0, m});
    }
    std::int64_t q = std::lcm(s.stencil_.modulus, t.stencil_.modulus);
    TailStencil a = s.stencil_.with_modulus(q), b = t.stencil_.with_modulus(q);
    merged = a;
    merged.threshold = n;
    for (std::int64_t r = 0; r < q; ++r) merged.terms[r].insert(merged.terms[r].end(), b.terms[r].begin(), b.terms[r].end());
  }
  for (const auto& a : keys) out.atoms_[a] = s.image_of_atom(a) + t.image_of_atom(a);
  out.set_stencil(merged);
  out.unit_ = s.unit_ + t.unit_;

  std::set<std::int64_t> rows;
  for (const auto& [r, img] : s.row_units_) rows.insert(r);
  for (const auto& [r, img] : t.row_units_) rows.insert(r);
  for (auto r : rows) out.row_units_[r] = s.image_of_row_unit(r) + t.image_of_row_unit(r);
  if (s.row_template_ || t.row_template_)
    out.row_template_ = add_lines(s.row_template_.value_or(Line{}), t.row_template_.value_or(Line{}));
  return out;
}

Operator operator*(const Scalar& c, const Operator& t) {
  Operator out(t.domain_, t.codomain_);
  for (const auto& [a, img] : t.atoms_) out.atoms_[a] = c * img;
  TailStencil st = t.stencil_;
  for (auto& cls : st.terms)
    for (auto& term : cls) {
      term.coef *= c;
      term.growth *= c;
    }
  out.set_stencil(st);
  out.unit_ = c * t.unit_;
  for (const auto& [r, img] : t.row_units_) out.row_units_[r] = c * img;
  if (t.row_template_) out.row_template_ = scale_line(c, *t.row_template_);
  return out;
}

Operator operator-(const Operator& t) { return Scalar(-1) * t; }
Operator operator-(const Operator& s, const Operator& t) { return s + (-t); }
bool operator==(const Operator& s, const Operator& t) { return (s - t).is_zero(); }

// ---------------------------------------------------------------------------

Functional Functional::coordinate(const SpaceDesc& space, const AtomIndex& j) {
  check_atom_index(space, j);
  Functional f;
  f.domain = space;
  f.atoms[j] = 1;
  if (space.unit_is_generator()) f.unit = 1;
  if (space.has_row_units()) f.row_units[j.row] = 1;
  return f;
}

Functional Functional::limit(const SpaceDesc& space) {
  if (!space.unit_is_generator()) throw PreconditionError("R^n has no limit functional");
  Functional f;
  f.domain = space;
  f.unit = 1;
  return f;
}

Scalar Functional::operator()(const Element& x) const {
  require_same_space(domain, x.space(), "functional argument");
  Scalar v = 0;
  for (const auto& [g, c] : decompose(x)) {
    switch (g.kind) {
      case Generator::Kind::Atom:
        if (auto it = atoms.find(g.atom); it != atoms.end()) v += c * it->second;
        break;
      case Generator::Kind::RowUnit:
        if (auto it = row_units.find(g.row); it != row_units.end()) v += c * it->second;
        break;
      case Generator::Kind::Unit:
        v += c * unit;
        break;
    }
  }
  return v;
}

bool Functional::is_positive() const {
  Scalar total = 0;
  std::map<std::int64_t, Scalar> per_row;
  for (const auto& [a, v] : atoms) {
    if (v < 0) return false;
    total += v;
    per_row[a.row] += v;
  }
  if (!domain.unit_is_generator()) return true;
  if (domain.has_row_units()) {
    Scalar rows_total = 0;
    for (const auto& [r, v] : row_units) {
      rows_total += v;
      per_row.try_emplace(r, 0);
    }
    for (const auto& [r, s] : per_row) {
      auto it = row_units.find(r);
      if ((it == row_units.end() ? Scalar(0) : it->second) < s) return false;
    }
    return unit >= rows_total;
  }
  return unit >= total;
}

bool Functional::is_zero() const {
  auto nz = [](const auto& m) { return std::any_of(m.begin(), m.end(), [](const auto& kv) { return kv.second != 0; }); };
  return !nz(atoms) && !nz(row_units) && unit == 0;
}

std::string Functional::to_string() const {
  std::ostringstream out;
  out << "f(";
  bool first = true;
  for (const auto& [a, v] : atoms) {
    if (v == 0) continue;
    out << (first ? "" : ", ") << "e" << rieszkit::to_string(a, domain) << "=" << rieszkit::to_string(v);
    first = false;
  }
  for (const auto& [r, v] : row_units) {
    if (v == 0) continue;
    out << (first ? "" : ", ") << "ru_" << r << "=" << rieszkit::to_string(v);
    first = false;
  }
  if (domain.unit_is_generator()) out << (first ? "" : ", ") << "1=" << rieszkit::to_string(unit);
  out << ")";
  return out.str();
}

Functional compose(const Functional& f, const Operator& t) {
  require_same_space(f.domain, t.codomain(), "functional composition");
  Functional out;
  out.domain = t.domain();
  for (const auto& [a, img] : t.atom_images()) out.atoms[a] = f(img);

  const TailStencil& st = t.stencil();
  for (std::int64_t r = 0; r < st.modulus && !st.empty(); ++r) {
    for (const auto& term : st.terms[r]) {
      for (const auto& [c, fc] : f.atoms) {
        if (fc == 0 || (!t.row_local() && c.row != term.row)) continue;
        std::int64_t shift = c.col - term.offset;
        if (term.slope == 0) {
          if (shift == 0) throw PreconditionError("f o T has infinitely many nonzero coefficients");
          continue;
        }
        if (floor_mod(shift, term.slope) != 0) continue;
        std::int64_t m = st.modulus * (shift / term.slope) + r;
        AtomIndex input{t.row_local() ? c.row : 0, m};
        if (m <= st.threshold || t.atom_images().count(input)) continue;
        out.atoms[input] += (term.coef + term.growth * Scalar(m)) * fc;
      }
    }
  }
  if (t.domain().unit_is_generator()) out.unit = f(t.unit_image());
  if (t.domain().has_row_units()) {
    std::set<std::int64_t> rows;
    for (const auto& [r, img] : t.row_unit_images()) rows.insert(r);
    for (const auto& [c, v] : f.atoms) rows.insert(c.row);
    for (const auto& [r, v] : f.row_units) rows.insert(r);
    for (auto r : rows)
      if (r >= 1) out.row_units[r] = f(t.image_of_row_unit(r));
  }
  std::erase_if(out.atoms, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(out.row_units, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Operator rank_one(const Functional& f, const Element& v) {
  Operator t(f.domain, v.space());
  for (const auto& [a, c] : f.atoms) t.set_atom_image(a, c * v);
  for (const auto& [r, c] : f.row_units) t.set_row_unit_image(r, c * v);
  if (f.domain.unit_is_generator()) t.set_unit_image(f.unit * v);
  return t;
}

// ---------------------------------------------------------------------------

Element identity_part(const Element& x) { return x; }

namespace {

Scalar apply_part(Element (*part)(const Element&), const Scalar& c) {
  if (part == &identity_part) return c;
  return part(Element::fin_dim({c})).fin().values[0];
}

}  // namespace

ElementSeq partial_sum_seq(const Operator& t, std::int64_t row, Element (*part)(const Element&)) {
  const SpaceDesc& dom = t.domain();
  if (dom.kind != SpaceKind::TailSeq && dom.kind != SpaceKind::RowBlock)
    throw PreconditionError("partial sums need a countably indexed domain");
  if (dom.kind == SpaceKind::RowBlock && row < 1) throw InvalidIndex("row index must be >= 1");
  std::int64_t in_row = dom.kind == SpaceKind::RowBlock ? row : 0;
  const TailStencil& st = t.stencil();
  if (!st.empty()) {
    for (const auto& cls : st.terms)
      for (const auto& term : cls) {
        if (term.growth != 0) throw PreconditionError("tail rule coefficients grow with n; no closed partial sums");
        if (term.slope == 0) throw PreconditionError("tail rule piles onto a fixed coordinate; no closed partial sums");
      }
  }
  std::int64_t reach = st.empty() ? 0 : st.threshold;
  for (const auto& [a, img] : t.atom_images())
    if (a.row == in_row) reach = std::max(reach, a.col);
  for (auto m : st.crossings()) reach = std::max(reach, m);

  std::vector<Element> early;
  Element sum = Element::zero(t.codomain());
  for (std::int64_t m = 1; m <= reach; ++m) {
    if (m > 1) early.push_back(sum);
    sum = sum + part(t.image_of_atom({in_row, m}));
  }
  if (reach == 0) sum = Element::zero(t.codomain());
  std::vector<SeqPiece> pieces;
  if (!st.empty()) {
    for (std::int64_t r = 0; r < st.modulus; ++r) {
      std::int64_t k_lo = first_step(reach, st.modulus, r);
      for (const auto& term : st.terms[r]) {
        Scalar c = apply_part(part, term.coef);
        if (c == 0) continue;
        pieces.push_back(SeqPiece::run(t.row_local() ? row : term.row, c, term.slope, term.offset, k_lo, st.modulus, r));
      }
    }
  }
  return ElementSeq(t.codomain(), std::move(early), std::move(sum), std::move(pieces)).telescoped();
}

ElementSeq partial_sum_seq(const Operator& t) {
  if (t.domain().kind != SpaceKind::TailSeq) throw PreconditionError("partial_sum_seq needs an l0^inf domain");
  return partial_sum_seq(t, 0, &identity_part);
}

ElementSeq row_partial_sum_seq(const Operator& t, std::int64_t row) {
  if (t.domain().kind != SpaceKind::RowBlock) throw PreconditionError("row partial sums need a RowBlock domain");
  return partial_sum_seq(t, row, &identity_part);
}

CompletionElement row_atom_sum(const Operator& t, std::int64_t row, Element (*part)(const Element&)) {
  return partial_sum_seq(t, row, part).limit();
}

LinePattern generic_row_atom_sum(const Operator& t, Element (*part)(const Element&)) {
  if (t.codomain().kind != SpaceKind::RowBlock) return LinePattern::constant(0);
  std::int64_t rep = t.explicit_rows() + 1;
  auto lim = row_atom_sum(t, rep, part);
  const auto& p = std::get<RowPattern>(lim.payload());
  return static_cast<std::int64_t>(p.rows.size()) >= rep ? p.rows[rep - 1] : p.generic;
}

CompletionElement atom_sum(const Operator& t, Element (*part)(const Element&)) {
  const SpaceDesc& dom = t.domain();
  switch (dom.kind) {
    case SpaceKind::FinDim: {
      Element s = Element::zero(t.codomain());
      for (int j = 1; j <= dom.dim; ++j) s = s + part(t.image_of_atom({0, j}));
      return s;
    }
    case SpaceKind::TailSeq:
      return partial_sum_seq(t, 0, part).limit();
    case SpaceKind::RowBlock: {
      std::int64_t rows = t.explicit_rows();
      CompletionElement s = CompletionElement::zero(t.codomain());
      for (std::int64_t n = 1; n <= rows; ++n) s = s + row_atom_sum(t, n, part);
      if (t.codomain().kind == SpaceKind::RowBlock && !t.stencil().empty())
        s = s + CompletionElement::in_rows_after(t.codomain(), rows, generic_row_atom_sum(t, part));
      return s;
    }
    case SpaceKind::FinDev:
      break;
  }
  throw UnsupportedHypothesis("operators defined on C(K) are not supported");
}

CompletionElement row_unit_sum(const Operator& t) {
  if (!t.domain().has_row_units()) throw PreconditionError("row units exist only in E_K");
  std::int64_t rows = t.explicit_rows();
  CompletionElement s = CompletionElement::zero(t.codomain());
  for (std::int64_t n = 1; n <= rows; ++n) s = s + t.image_of_row_unit(n);
  if (t.row_unit_template())
    s = s + CompletionElement::in_rows_after(t.codomain(), rows, LinePattern::from_line(*t.row_unit_template()));
  return s;
}

// ---------------------------------------------------------------------------

OrderBoundedResult order_bounded_test(const Operator& t) {
  OrderBoundedResult out;
  for (const auto& cls : t.stencil().terms)
    for (const auto& term : cls) {
      if (term.growth != 0) {
        out.reason = "tail coefficients grow linearly, so sum_k |T(e_k)| is unbounded";
        return out;
      }
      if (term.slope == 0) {
        out.reason = "infinitely many atoms map onto coordinate " + std::to_string(term.offset) +
                     ", so sum_k |T(e_k)| accumulates without bound";
        return out;
      }
    }
  Scalar m = atom_sum(t, &abs).sup_norm();
  if (t.domain().unit_is_generator()) m = max_of(m, t.unit_image().sup_norm());
  if (t.domain().has_row_units()) {
    for (std::int64_t n = 1; n <= t.explicit_rows() + 1; ++n) m = max_of(m, t.image_of_row_unit(n).sup_norm());
  }
  out.bounded = true;
  out.scale = m;
  out.bound = m * Element::unit(t.codomain());
  out.reason = "sum_k |T(e_k)| <= " + to_string(m) + "*1 and the unit images stay below the same bound";
  return out;
}

void require_order_bounded(const Operator& t) {
  auto r = order_bounded_test(t);
  if (!r.bounded) throw PreconditionError("T is not order bounded: " + r.reason);
}

bool is_positive(const Operator& t) {
  for (const auto& [a, img] : t.atom_images())
    if (!img.is_positive()) return false;
  for (const auto& cls : t.stencil().terms)
    for (const auto& term : cls)
      if (term.coef < 0 || term.growth != 0 || term.slope == 0) return false;
  // crossings may add up two stencil terms, but both are nonnegative here
  const SpaceDesc& dom = t.domain();
  switch (dom.kind) {
    case SpaceKind::FinDim:
      return true;
    case SpaceKind::TailSeq:
      return leq(atom_sum(t, &identity_part), CompletionElement(t.unit_image()));
    case SpaceKind::RowBlock: {
      if (!dom.free_rows) return leq(atom_sum(t, &identity_part), CompletionElement(t.unit_image()));
      std::int64_t rows = t.explicit_rows();
      for (std::int64_t n = 1; n <= rows + 1; ++n)
        if (!leq(row_atom_sum(t, n, &identity_part), CompletionElement(t.image_of_row_unit(n)))) return false;
      return leq(row_unit_sum(t), CompletionElement(t.unit_image()));
    }
    case SpaceKind::FinDev:
      break;
  }
  return false;
}

}  // namespace rieszkit
