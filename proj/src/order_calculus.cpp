#include "rieszkit/order_calculus.hpp"

#include <algorithm>
#include <sstream>

namespace rieszkit {

namespace {

// LinePatterns borrow the arithmetic of l0^inf completion elements.
CompletionElement carrier(const LinePattern& p) { return CompletionElement(SpaceDesc::tail_seq(), p); }
LinePattern uncarry(const CompletionElement& c) { return std::get<LinePattern>(c.payload()); }

LinePattern zero_line() { return LinePattern::constant(0); }

Operator atoms_only(const Operator& t) {
  Operator out(t.domain(), t.codomain());
  for (const auto& [a, img] : t.atom_images()) out.set_atom_image(a, img);
  out.set_stencil(t.stencil());
  return out;
}

bool is_eken(const SpaceDesc& s) { return s.kind == SpaceKind::RowBlock && s.free_rows; }

CompletionElement rows_sum(const CompletionOperator& t) {
  CompletionElement s = CompletionElement::zero(t.codomain());
  for (std::int64_t n = 1; n <= t.generic_from; ++n) s = s + t.image_of_row_unit(n);
  if (t.row_template) s = s + CompletionElement::in_rows_after(t.codomain(), t.generic_from, *t.row_template);
  return s;
}

bool atoms_positive(const Operator& t) {
  for (const auto& [a, img] : t.atom_images())
    if (!img.is_positive()) return false;
  for (const auto& cls : t.stencil().terms)
    for (const auto& term : cls)
      if (term.coef < 0 || term.growth != 0 || term.slope == 0) return false;
  return true;
}

}  // namespace

CompletionOperator CompletionOperator::embed(const Operator& t) {
  CompletionOperator c{atoms_only(t), CompletionElement::zero(t.codomain()), {}, std::nullopt, 0};
  if (t.domain().unit_is_generator()) c.unit = t.unit_image();
  if (t.domain().has_row_units()) {
    c.generic_from = t.explicit_rows();
    for (std::int64_t n = 1; n <= c.generic_from; ++n) c.row_units.emplace(n, t.image_of_row_unit(n));
    if (t.row_unit_template()) c.row_template = LinePattern::from_line(*t.row_unit_template());
  }
  return c;
}

CompletionElement CompletionOperator::image_of_row_unit(std::int64_t row) const {
  if (!domain().has_row_units()) throw InvalidIndex("row units exist only in E_K");
  if (row < 1) throw InvalidIndex("row index must be >= 1");
  if (row <= generic_from) {
    auto it = row_units.find(row);
    return it == row_units.end() ? CompletionElement::zero(codomain()) : it->second;
  }
  if (!row_template) return CompletionElement::zero(codomain());
  return CompletionElement::in_row(codomain(), row, *row_template);
}

CompletionElement CompletionOperator::image(const Generator& g) const {
  switch (g.kind) {
    case Generator::Kind::Atom:
      return atoms.image_of_atom(g.atom);
    case Generator::Kind::RowUnit:
      return image_of_row_unit(g.row);
    case Generator::Kind::Unit:
      return unit;
  }
  throw PreconditionError("unknown generator");
}

CompletionElement CompletionOperator::apply(const Element& x) const {
  require_same_space(domain(), x.space(), "operator argument");
  CompletionElement y = CompletionElement::zero(codomain());
  for (const auto& [g, c] : decompose(x)) y = y + c * image(g);
  return y;
}

bool CompletionOperator::in_codomain() const {
  if (!unit.is_member()) return false;
  for (const auto& [n, img] : row_units)
    if (!img.is_member()) return false;
  if (row_template && !CompletionElement::in_row(codomain(), generic_from + 1, *row_template).is_member()) return false;
  return true;
}

std::optional<Operator> CompletionOperator::to_operator() const {
  if (!in_codomain()) return std::nullopt;
  Operator op = atoms_only(atoms);
  if (domain().unit_is_generator()) op.set_unit_image(unit.to_element());
  for (const auto& [n, img] : row_units) op.set_row_unit_image(n, img.to_element());
  if (row_template) op.set_row_unit_template(Line{row_template->prefix, row_template->period.front()});
  return op;
}

std::string CompletionOperator::to_string() const {
  std::ostringstream out;
  out << atoms.to_string();
  if (domain().unit_is_generator()) out << "  image of 1 = " << unit.to_string() << "\n";
  for (const auto& [n, img] : row_units) out << "  image of ru_" << n << " = " << img.to_string() << "\n";
  if (row_template) out << "  image of ru_n (n > " << generic_from << ") = row n " << rieszkit::to_string(*row_template) << "\n";
  return out.str();
}

CompletionOperator operator+(const CompletionOperator& s, const CompletionOperator& t) {
  CompletionOperator out{s.atoms + t.atoms, s.unit + t.unit, {}, std::nullopt, std::max(s.generic_from, t.generic_from)};
  if (s.domain().has_row_units()) {
    for (std::int64_t n = 1; n <= out.generic_from; ++n) out.row_units.emplace(n, s.image_of_row_unit(n) + t.image_of_row_unit(n));
    if (s.row_template || t.row_template)
      out.row_template = uncarry(carrier(s.row_template.value_or(zero_line())) + carrier(t.row_template.value_or(zero_line())));
  }
  return out;
}

CompletionOperator operator-(const CompletionOperator& s, const CompletionOperator& t) {
  CompletionOperator neg{-t.atoms, Scalar(-1) * t.unit, {}, std::nullopt, t.generic_from};
  for (const auto& [n, img] : t.row_units) neg.row_units.emplace(n, Scalar(-1) * img);
  if (t.row_template) neg.row_template = uncarry(Scalar(-1) * carrier(*t.row_template));
  return s + neg;
}

bool operator==(const CompletionOperator& s, const CompletionOperator& t) {
  if (!(s.atoms == t.atoms) || !(s.unit == t.unit)) return false;
  if (!s.domain().has_row_units()) return true;
  for (std::int64_t n = 1; n <= std::max(s.generic_from, t.generic_from) + 1; ++n)
    if (!(s.image_of_row_unit(n) == t.image_of_row_unit(n))) return false;
  return carrier(s.row_template.value_or(zero_line())) == carrier(t.row_template.value_or(zero_line()));
}

bool is_positive(const CompletionOperator& t) {
  if (!atoms_positive(t.atoms)) return false;
  switch (t.domain().kind) {
    case SpaceKind::FinDim:
      return true;
    case SpaceKind::TailSeq:
      return leq(atom_sum(t.atoms, &identity_part), t.unit);
    case SpaceKind::RowBlock: {
      if (!t.domain().free_rows) return leq(atom_sum(t.atoms, &identity_part), t.unit);
      std::int64_t rows = std::max(t.generic_from, t.atoms.explicit_rows());
      for (std::int64_t n = 1; n <= rows + 1; ++n)
        if (!leq(row_atom_sum(t.atoms, n, &identity_part), t.image_of_row_unit(n))) return false;
      return leq(rows_sum(t), t.unit);
    }
    case SpaceKind::FinDev:
      break;
  }
  return false;
}

// ---------------------------------------------------------------------------

PositivePartResult positive_part(const Operator& t) {
  require_order_bounded(t);
  const SpaceDesc& dom = t.domain();
  const SpaceDesc& cod = t.codomain();

  Operator atoms(dom, cod);
  for (const auto& [a, img] : t.atom_images()) atoms.set_atom_image(a, pos(img));
  TailStencil st = t.stencil();
  for (auto& cls : st.terms)
    for (auto& term : cls) term.coef = pos_part(term.coef);
  // only collisions between terms of opposite sign change the positive part
  std::vector<std::int64_t> cross;
  auto probe_row = t.row_local() ? std::optional<std::int64_t>(1) : std::nullopt;
  for (auto m : t.stencil().crossings()) {
    std::map<AtomIndex, Scalar> merged, split;
    for (const auto& [a, c] : t.stencil().image(m, probe_row)) merged[a] += c;
    for (const auto& [a, c] : st.image(m, probe_row)) split[a] += c;
    for (auto& [a, c] : merged) c = pos_part(c);
    std::erase_if(merged, [](const auto& kv) { return kv.second == 0; });
    std::erase_if(split, [](const auto& kv) { return kv.second == 0; });
    if (merged != split) cross.push_back(m);
  }
  if (!cross.empty() && t.row_local()) throw UnsupportedHypothesis("row-local tail rule with colliding terms of opposite sign");
  for (auto m : cross)
    if (!t.atom_images().count({0, m})) atoms.set_atom_image({0, m}, pos(t.image_of_atom({0, m})));
  atoms.set_stencil(st);

  PositivePartResult out{CompletionOperator{atoms, CompletionElement::zero(cod), {}, std::nullopt, 0}, false, ""};
  CompletionOperator& c = out.candidate;
  switch (dom.kind) {
    case SpaceKind::FinDim:
      break;
    case SpaceKind::TailSeq:
      c.unit = atom_sum(t, &pos) + pos(CompletionElement(t.unit_image()) - atom_sum(t, &identity_part));
      break;
    case SpaceKind::RowBlock:
      if (!dom.free_rows) {
        c.unit = atom_sum(t, &pos) + pos(CompletionElement(t.unit_image()) - atom_sum(t, &identity_part));
        break;
      }
      c.generic_from = t.explicit_rows();
      for (std::int64_t n = 1; n <= c.generic_from; ++n) {
        auto plain = row_atom_sum(t, n, &identity_part);
        c.row_units.emplace(n, row_atom_sum(t, n, &pos) + pos(CompletionElement(t.image_of_row_unit(n)) - plain));
      }
      if (cod.kind == SpaceKind::RowBlock) {
        auto g_pos = carrier(generic_row_atom_sum(t, &pos));
        auto g = carrier(generic_row_atom_sum(t, &identity_part));
        auto tau = carrier(t.row_unit_template() ? LinePattern::from_line(*t.row_unit_template()) : zero_line());
        auto tmpl = uncarry(g_pos + pos(tau - g));
        if (!(tmpl == zero_line())) c.row_template = tmpl;
      }
      c.unit = rows_sum(c) + pos(CompletionElement(t.unit_image()) - row_unit_sum(t));
      break;
    case SpaceKind::FinDev:
      throw UnsupportedHypothesis("operators defined on C(K) are not supported");
  }
  out.in_F = c.in_codomain();
  if (out.in_F) {
    out.verdict = "T+ exists in L^r(E,F) and equals the completion supremum";
  } else if (classify_pair(dom, cod).pervasive) {
    out.verdict = "T+ does not exist in L^r(E,F): the supremum computed in the completion leaves F";
  } else {
    out.verdict = "candidate not representable in F; existence undecided";
  }
  return out;
}

CompletionElement rk_value(const Operator& t, const Element& x) {
  require_same_space(t.domain(), x.space(), "rk_value argument");
  if (!x.is_positive()) throw PreconditionError("rk_value needs x >= 0");
  return positive_part(t).candidate.apply(x);
}

CompletionOperator oc_projection(const CompletionOperator& t) {
  const SpaceDesc& dom = t.domain();
  CompletionOperator out{t.atoms, CompletionElement::zero(t.codomain()), {}, std::nullopt, 0};
  switch (dom.kind) {
    case SpaceKind::FinDim:
      return t;
    case SpaceKind::TailSeq:
      out.unit = atom_sum(t.atoms, &identity_part);
      return out;
    case SpaceKind::RowBlock:
      if (!dom.free_rows) {
        out.unit = atom_sum(t.atoms, &identity_part);
        return out;
      }
      out.generic_from = std::max(t.generic_from, t.atoms.explicit_rows());
      for (std::int64_t n = 1; n <= out.generic_from; ++n) out.row_units.emplace(n, row_atom_sum(t.atoms, n, &identity_part));
      if (t.codomain().kind == SpaceKind::RowBlock) {
        auto g = generic_row_atom_sum(t.atoms, &identity_part);
        if (!(g == zero_line())) out.row_template = g;
      }
      out.unit = rows_sum(out);
      return out;
    case SpaceKind::FinDev:
      break;
  }
  throw UnsupportedHypothesis("operators defined on C(K) are not supported");
}

CompletionOperator oc_projection(const Operator& t) {
  require_order_bounded(t);
  return oc_projection(CompletionOperator::embed(t));
}

// ---------------------------------------------------------------------------

OrderContinuityResult order_continuity_test(const Operator& t) {
  require_order_bounded(t);
  OrderContinuityResult out;
  const SpaceDesc& dom = t.domain();
  switch (dom.kind) {
    case SpaceKind::FinDim:
      out.order_continuous = true;
      out.route = "finite-dimensional domain";
      return out;
    case SpaceKind::TailSeq: {
      out.route = "partial sums of atom images against the image of 1";
      auto seq = partial_sum_seq(t);
      auto cert = decide_order_convergence(seq, t.unit_image());
      out.order_continuous = cert.verdict == Verdict::Converges;
      out.certificates.emplace_back("s_n = sum_{k<=n} T(e_k) -> T(1)", cert);
      out.sequences.emplace_back("s_n", seq);
      out.limits.emplace_back("T(1)", t.unit_image());
      return out;
    }
    case SpaceKind::RowBlock: {
      if (dom.free_rows) {
        out.route = "row partial sums against row-unit images, row units against the image of 1";
        std::int64_t rows = t.explicit_rows();
        bool all = true;
        for (std::int64_t n = 1; n <= rows + 1; ++n) {
          auto seq = row_partial_sum_seq(t, n);
          auto limit = t.image_of_row_unit(n);
          auto cert = decide_order_convergence(seq, limit);
          all = all && cert.verdict == Verdict::Converges;
          std::string label = "row " + std::to_string(n) + (n == rows + 1 ? " (every later row)" : "");
          out.certificates.emplace_back(label + ": sum_{m<=p} T(e_(n,m)) -> T(ru_n)", cert);
          out.sequences.emplace_back(label, seq);
          out.limits.emplace_back("T(ru_" + std::to_string(n) + ")", limit);
        }
        auto rows_total = row_unit_sum(t);
        out.unit_ok = rows_total == CompletionElement(t.unit_image());
        out.unit_check = "sum_n T(ru_n) = " + rows_total.to_string() + (out.unit_ok ? " equals " : " differs from ") +
                         "T(1) = " + t.unit_image().to_string();
        out.order_continuous = all && out.unit_ok;
        return out;
      }
      out.route = "atom sums against the image of 1";
      auto total = atom_sum(t, &identity_part);
      out.unit_ok = total == CompletionElement(t.unit_image());
      out.unit_check = "sum of atom images = " + total.to_string() + (out.unit_ok ? " equals " : " differs from ") +
                       "T(1) = " + t.unit_image().to_string();
      out.order_continuous = out.unit_ok;
      return out;
    }
    case SpaceKind::FinDev:
      break;
  }
  throw UnsupportedHypothesis("order continuity is decided for l0^inf, c, R^n and row-block domains only");
}

bool verify_order_continuity(const OrderContinuityResult& r, int probe, std::string* why) {
  for (std::size_t i = 0; i < r.certificates.size(); ++i) {
    std::string inner;
    if (!verify_certificate(r.certificates[i].second, r.sequences[i].second, r.limits[i].second, probe, &inner)) {
      if (why) *why = r.certificates[i].first + ": " + inner;
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

AtomIndex first_atom(const SpaceDesc& s) { return {s.kind == SpaceKind::RowBlock ? 1 : 0, 1}; }

}  // namespace

bool verify_witness(const Witness& w, const Operator& t, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (w.r.is_zero()) return fail("R is zero");
  if (!is_positive(w.r)) return fail("R is not positive");
  if (!is_positive(t - w.r)) return fail("T - R is not positive");
  if (!w.f.is_positive() || !w.v.is_positive()) return fail("rank-one factors are not positive");
  Element x0 = generator_element(t.domain(), w.x0);
  if (!w.r.apply(x0).is_positive() || w.r.apply(x0).is_zero()) return fail("R does not see x0");
  return true;
}

Witness pervasive_witness(const Operator& t) {
  if (t.is_zero() || !is_positive(t)) throw PreconditionError("T not positive");
  require_order_bounded(t);
  auto cls = classify_pair(t.domain(), t.codomain());
  if (!cls.pervasive) throw UnsupportedHypothesis("neither an atomic codomain nor an atomic domain of codimension <= 1");
  const SpaceDesc& dom = t.domain();
  Witness w;

  if (dom.kind == SpaceKind::FinDim || dom.kind == SpaceKind::TailSeq) {
    w.route = "atomic domain";
    std::int64_t reach = t.explicit_reach() + t.stencil().modulus + 1;
    if (dom.kind == SpaceKind::FinDim) reach = dom.dim;
    for (std::int64_t m = 1; m <= reach; ++m) {
      Element img = t.image_of_atom({0, m});
      if (img.is_zero()) continue;
      w.x0 = Generator::of_atom({0, m});
      w.f = Functional::coordinate(dom, {0, m});
      w.v = img;
      break;
    }
    if (w.v.space() != t.codomain() || w.v.is_zero()) {
      // T kills every atom, so T(x) = lim(x) T(1) is itself rank one
      w.x0 = Generator::unit();
      w.f = Functional::limit(dom);
      w.v = t.unit_image();
      w.route = "atomic domain, T vanishes on atoms and is rank one";
    }
  } else {
    w.route = "atomic codomain";
    std::vector<Generator> candidates;
    std::int64_t rows = t.explicit_rows() + 1, reach = t.explicit_reach() + t.stencil().modulus + 1;
    for (std::int64_t n = 1; n <= rows; ++n)
      for (std::int64_t m = 1; m <= reach; ++m) candidates.push_back(Generator::of_atom({n, m}));
    if (dom.has_row_units())
      for (std::int64_t n = 1; n <= rows; ++n) candidates.push_back(Generator::of_row_unit(n));
    candidates.push_back(Generator::unit());
    for (const auto& g : candidates) {
      Element img = t.image(g);
      if (img.is_zero()) continue;
      auto j = find_coordinate(CompletionElement(img), [](const Scalar& v) { return v > 0; });
      AtomIndex coord = j ? *j : first_atom(t.codomain());
      if (img.value_at(coord) <= 0) continue;
      w.x0 = g;
      w.coordinate = coord;
      w.f = compose(Functional::coordinate(t.codomain(), coord), t);
      w.v = Element::atom(t.codomain(), coord);
      break;
    }
    if (!w.coordinate) throw PreconditionError("T not positive");
  }
  w.r = rank_one(w.f, w.v);
  w.transcript.push_back("x0 = " + w.x0.to_string(dom) + ", T(x0) = " + t.image(w.x0).to_string());
  if (w.coordinate) w.transcript.push_back("coordinate j = " + to_string(*w.coordinate, t.codomain()));
  w.transcript.push_back("R = " + w.f.to_string() + " (x) " + w.v.to_string());
  w.transcript.push_back(std::string("R != 0: ") + (w.r.is_zero() ? "fail" : "ok"));
  w.transcript.push_back(std::string("R >= 0 on the generator cone: ") + (is_positive(w.r) ? "ok" : "fail"));
  w.transcript.push_back(std::string("T - R >= 0 on the generator cone: ") + (is_positive(t - w.r) ? "ok" : "fail"));
  w.verified = verify_witness(w, t);
  return w;
}

// ---------------------------------------------------------------------------

bool PairClassification::holds(const std::string& key) const {
  for (const auto& c : conclusions)
    if (c.key == key) return c.holds;
  return false;
}

PairClassification classify_pair(const SpaceDesc& e, const SpaceDesc& f) {
  PairClassification out;
  out.e = e;
  out.f = f;
  // every supported codomain is atomic; E_K is the only domain whose atoms span a subspace of infinite codimension
  out.f_atomic = true;
  out.e_atomic_small_codim = !is_eken(e);
  out.pervasive = out.f_atomic || out.e_atomic_small_codim;

  bool f_is_l0 = f.kind == SpaceKind::TailSeq && !f.as_c;
  bool e_is_l0 = e.kind == SpaceKind::TailSeq;
  bool f_order_complete = f.kind == SpaceKind::FinDim;
  bool f_uniformly_complete = f.kind == SpaceKind::FinDim || f.kind == SpaceKind::FinDev || (f.kind == SpaceKind::TailSeq && f.as_c);

  auto add = [&](std::string key, bool holds, std::string basis, bool reconstructed = false) {
    out.conclusions.push_back({std::move(key), holds, std::move(basis), reconstructed});
  };
  add("pervasive", out.pervasive,
      out.f_atomic ? "codomain is atomic: (lambda_j o T) (x) e_j lies below every T > 0"
                   : "domain is atomic with span of codimension <= 1");
  add("riesz_kantorovich", out.pervasive || f_is_l0,
      out.pervasive ? "regular operators into F are pervasive in those into the completion"
                    : "codomain is l0^inf");
  add("oc_band", out.pervasive || e_is_l0,
      out.pervasive ? "pervasiveness makes order continuous regular operators a band"
                    : "domain is l0^inf, where order continuity is read off partial sums");
  if (f_order_complete) {
    add("riesz_space", true, "codomain is order complete");
  } else if (e.kind == SpaceKind::FinDim && f_uniformly_complete) {
    add("riesz_space", true, "domain is the closed span of its atoms and codomain is uniformly complete", true);
  } else {
    add("riesz_space", false, "no supported criterion applies", e.kind == SpaceKind::FinDim);
  }
  add("order_continuity_by_partial_sums", e_is_l0 || e.kind == SpaceKind::FinDim,
      e_is_l0 ? "T is order continuous iff sum_{i<=n} T(e_i) ->o T(1)"
              : (e.kind == SpaceKind::FinDim ? "every operator on R^n is order continuous" : "domain is not l0^inf or c"));
  add("order_complete_codomain", f_order_complete, f_order_complete ? "R^m" : "codomain is not order complete");
  return out;
}

}  // namespace rieszkit
