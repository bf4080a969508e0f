#include "rieszkit/convergence.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rieszkit {

namespace {

std::int64_t window_end(std::int64_t h, std::int64_t period) { return h + 2 * period; }

// Indices that cover the probe range and one regular period window.
std::vector<std::int64_t> check_indices(std::int64_t from, int probe, std::int64_t horizon, std::int64_t period) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = from; n <= from + probe; ++n) out.push_back(n);
  for (std::int64_t n = std::max(horizon, from); n <= window_end(std::max(horizon, from), period); ++n) out.push_back(n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<AtomIndex> nonzero_coordinate(const Element& x) {
  return find_coordinate(CompletionElement(x), [](const Scalar& v) { return v != 0; });
}

std::string locate(const std::optional<AtomIndex>& at, const SpaceDesc& space) {
  return at ? "e" + to_string(*at, space) : std::string("an untouched token");
}

std::int64_t max_family(const Element& x) {
  std::int64_t m = 0;
  if (x.space().kind == SpaceKind::FinDev)
    for (const auto& [index, v] : x.dev().values) m = std::max(m, index.row);
  if (x.space().kind == SpaceKind::RowBlock) m = static_cast<std::int64_t>(x.grid().rows.size());
  return m;
}

Element sum_atoms(const SpaceDesc& space, const std::map<AtomIndex, Scalar>& coefs) {
  return add_many(Element::zero(space), coefs);
}

std::map<AtomIndex, Scalar> abs_map(std::map<AtomIndex, Scalar> m) {
  for (auto& [k, v] : m) v = abs_value(v);
  return m;
}

}  // namespace

std::string to_string(Verdict v) { return v == Verdict::Converges ? "converges" : "diverges"; }

std::optional<AtomIndex> find_coordinate(const CompletionElement& x, const std::function<bool(const Scalar&)>& pred) {
  auto scan = [&](std::int64_t row, const LinePattern& line) -> std::optional<AtomIndex> {
    auto len = static_cast<std::int64_t>(line.prefix.size() + line.period.size());
    for (std::int64_t c = 1; c <= len; ++c)
      if (pred(line.at(c))) return AtomIndex{row, c};
    return std::nullopt;
  };
  return std::visit(
      [&](const auto& p) -> std::optional<AtomIndex> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, FinVec>) {
          for (std::size_t i = 0; i < p.values.size(); ++i)
            if (pred(p.values[i])) return AtomIndex{0, static_cast<std::int64_t>(i) + 1};
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, LinePattern>) {
          return scan(0, p);
        } else if constexpr (std::is_same_v<T, DevPattern>) {
          for (const auto& [family, line] : p.families)
            if (auto hit = scan(family, line)) return hit;
          return std::nullopt;
        } else {
          for (std::size_t r = 0; r < p.rows.size(); ++r)
            if (auto hit = scan(static_cast<std::int64_t>(r) + 1, p.rows[r])) return hit;
          return scan(static_cast<std::int64_t>(p.rows.size()) + 1, p.generic);
        }
      },
      x.payload());
}

AtomIndex fresh_atom(const ElementSeq& x) {
  std::int64_t m = max_family(x.base());
  for (const auto& e : x.early()) m = std::max(m, max_family(e));
  for (const auto& p : x.pieces()) m = std::max(m, p.row);
  switch (x.space().kind) {
    case SpaceKind::FinDev:
    case SpaceKind::RowBlock:
      return {m + 1, 1};
    case SpaceKind::TailSeq:
      return {0, x.horizon() + 1};
    case SpaceKind::FinDim:
      break;
  }
  throw PreconditionError("R^n has no fresh coordinates");
}

Element DominatingFamily::net_at(const std::vector<AtomIndex>& beta, std::int64_t j) const {
  std::map<AtomIndex, Scalar> cut;
  for (const auto& c : beta) cut[c] = -bound;
  for (const auto& [c, d] : decay) cut[c] = -bound + d / Scalar(j);
  return add_many(bound * Element::unit(space), cut);
}

std::int64_t DominatingFamily::net_index(const std::vector<AtomIndex>& beta, std::int64_t j) const {
  std::int64_t n = std::max(from, j);
  for (const auto& c : beta) n = std::max(n, settle_offset + settle_rate * c.col);
  for (const auto& [c, d] : decay) n = std::max(n, settle_offset + settle_rate * c.col);
  return n;
}

std::string DominatingFamily::describe() const {
  std::ostringstream out;
  if (kind == Kind::Sequence) {
    out << "b_n = " << sequence->to_string() << " for n >= " << from;
    return out.str();
  }
  out << "y_(beta,j) = " << to_string(bound) << "*(1 - 1_(beta u D))";
  for (const auto& [c, d] : decay) out << " + (" << to_string(d) << "/j)e" << to_string(c, space);
  out << ", indexed by finite atom sets beta and j >= 1; dominates from n >= max(j, " << settle_offset << " + "
      << settle_rate << "*max col(beta))";
  return out.str();
}

ConvergenceCertificate decide_order_convergence(const ElementSeq& x, const Element& limit) {
  require_same_space(x.space(), limit.space(), "order limit");
  const SpaceDesc& space = x.space();
  ConvergenceCertificate cert;
  CompletionElement coordinatewise = x.limit();
  CompletionElement gap = coordinatewise - CompletionElement(limit);

  std::int64_t last = window_end(x.horizon(), x.period());
  Scalar bound = 0;
  for (std::int64_t n = 1; n <= last; ++n) bound = max_of(bound, (x.at(n) - limit).sup_norm());
  cert.order_bound = bound;

  if (!gap.is_zero()) {
    cert.verdict = Verdict::Diverges;
    cert.rule = "coordinatewise limit differs from the proposed limit";
    cert.witness = find_coordinate(gap, [](const Scalar& v) { return v != 0; });
    if (cert.witness) {
      cert.observed = coordinatewise.value_at(*cert.witness);
      cert.expected = limit.value_at(*cert.witness);
    } else {
      cert.ambient_witness = true;
      cert.observed = coordinatewise.ambient();
      cert.expected = limit.background();
    }
    cert.explanation = "at " + locate(cert.witness, space) + " the terms settle at " + to_string(cert.observed) +
                       " but the limit has " + to_string(cert.expected);
    return cert;
  }

  cert.verdict = Verdict::Converges;
  DominatingFamily fam;
  fam.space = space;
  fam.from = x.start();
  fam.bound = bound;
  fam.decay = abs_map(x.decay_columns());
  fam.settle_offset = x.settle_offset();
  fam.settle_rate = x.settle_rate();

  bool net_needed = x.has_moving_parts() && (space.kind == SpaceKind::FinDev ||
                                             (space.kind == SpaceKind::RowBlock && !space.free_rows));
  if (net_needed) {
    fam.kind = DominatingFamily::Kind::CofiniteNet;
    cert.rule = space.kind == SpaceKind::FinDev ? "C(K): coordinatewise limit with matching ambient value"
                                                : "l0^inf(NxN): coordinatewise limit with matching tail";
    cert.explanation = "order bounded by " + to_string(bound) +
                       " and every coordinate settles; no single sequence can cut away the moving atoms, "
                       "so the dominating family is indexed by finite atom sets";
  } else {
    fam.kind = DominatingFamily::Kind::Sequence;
    std::vector<SeqPiece> pieces;
    for (const auto& [c, d] : fam.decay) pieces.push_back(SeqPiece::fixed(c, 0, d));
    Element base = Element::zero(space);
    if (x.has_moving_parts()) {
      // b_n = bound on the moving rows, minus bound at every column that has settled by time n
      std::int64_t q = fam.settle_rate, r = floor_mod(fam.settle_offset, q), t = (fam.settle_offset - r) / q;
      std::vector<std::int64_t> rows;
      for (const auto& p : x.pieces())
        if (p.shape != SeqPiece::Shape::Fixed) rows.push_back(p.row);
      std::sort(rows.begin(), rows.end());
      rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
      for (auto row : rows) {
        base = base + (space.kind == SpaceKind::RowBlock ? Element::row_unit(space, row) : Element::unit(space));
        pieces.push_back(SeqPiece::run(row, -bound, 1, -t, 1 + t, q, r));
      }
      base = bound * base;
    }
    fam.sequence = ElementSeq(space, {}, base, std::move(pieces));
    cert.rule = "order bounded and coordinatewise convergent";
    cert.explanation = "|x_n - x| <= b_n with b_n decreasing to 0";
  }
  cert.family = std::move(fam);
  return cert;
}

namespace {

void require_decreasing(const ElementSeq& b) {
  std::int64_t last = window_end(b.horizon(), b.period());
  Element prev = b.at(1);
  for (std::int64_t n = 1; n <= last; ++n) {
    Element next = b.at(n + 1);
    Element step = prev - next;
    if (!step.is_positive()) {
      auto at = find_coordinate(CompletionElement(step), [](const Scalar& v) { return v < 0; });
      throw PreconditionError("sequence is not decreasing: b_" + std::to_string(n + 1) + " > b_" + std::to_string(n) +
                              " at " + locate(at, b.space()));
    }
    prev = std::move(next);
  }
}

}  // namespace

ConvergenceCertificate decide_monotone_limit(const ElementSeq& b) {
  require_decreasing(b);
  const SpaceDesc& space = b.space();
  ConvergenceCertificate cert;
  CompletionElement lim = b.limit();
  cert.order_bound = b.at(1).sup_norm();
  if (lim.is_zero()) {
    cert.verdict = Verdict::Converges;
    cert.rule = "decreasing with every coordinate tending to 0";
    DominatingFamily fam;
    fam.space = space;
    fam.sequence = b;
    cert.family = std::move(fam);
    cert.explanation = "any lower bound is <= 0 at every atom, hence <= 0";
    return cert;
  }
  cert.verdict = Verdict::Diverges;
  cert.expected = 0;
  if (!lim.is_positive()) {
    cert.rule = "coordinatewise infimum is negative somewhere";
    cert.witness = find_coordinate(lim, [](const Scalar& v) { return v < 0; });
    cert.ambient_witness = !cert.witness;
    cert.observed = cert.witness ? lim.value_at(*cert.witness) : lim.ambient();
    cert.explanation = "the terms settle below 0 at " + locate(cert.witness, space);
    return cert;
  }
  if (space.kind == SpaceKind::FinDev && lim.ambient() > 0) {
    AtomIndex gamma = fresh_atom(b);
    cert.ambient_witness = true;
    cert.observed = lim.ambient();
    cert.minorant = (lim.ambient() / 2) * Element::atom(space, gamma);
    cert.rule = "positive value at every untouched token";
    cert.explanation = "every b_n equals " + to_string(lim.ambient()) + " at the fresh token " + to_string(gamma, space) +
                       ", so h = " + cert.minorant->to_string() + " is a nonzero lower bound";
    return cert;
  }
  cert.witness = find_coordinate(lim, [](const Scalar& v) { return v > 0; });
  cert.observed = lim.value_at(*cert.witness);
  cert.minorant = (cert.observed / 2) * Element::atom(space, *cert.witness);
  cert.rule = "positive coordinatewise infimum";
  cert.explanation = "b_n stays >= " + to_string(cert.observed) + " at e" + to_string(*cert.witness, space) +
                     ", so h = " + cert.minorant->to_string() + " is a nonzero lower bound";
  return cert;
}

UniformCauchyResult decide_uniform_cauchy(const ElementSeq& x) {
  UniformCauchyResult out;
  auto decay = x.decay_columns();
  std::int64_t h = x.horizon();
  for (std::int64_t n = h; n <= window_end(h, x.period()); ++n) {
    Element d = x.at(n + 1) - x.at(n);
    std::map<AtomIndex, Scalar> strip;
    for (const auto& [c, v] : decay) strip[c] = -d.value_at(c);
    d = add_many(d, strip);
    if (!d.is_zero()) {
      out.cauchy = false;
      out.witness_n = n;
      out.witness = nonzero_coordinate(d);
      out.jump = out.witness ? d.value_at(*out.witness) : d.background();
      out.explanation = "x_(n+1) - x_n has a jump of " + to_string(out.jump) + " at " + locate(out.witness, x.space()) +
                        " for n = " + std::to_string(n) + ", and this repeats periodically";
      return out;
    }
  }
  out.cauchy = true;
  out.from = h;
  out.regulator = sum_atoms(x.space(), abs_map(decay));
  out.explanation = decay.empty() ? "constant from n = " + std::to_string(h)
                                  : "only 1/n terms move after n = " + std::to_string(h);
  return out;
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

bool verify_certificate(const ConvergenceCertificate& cert, const ElementSeq& x, const Element& limit, int probe,
                        std::string* why) {
  const SpaceDesc& space = x.space();
  if (cert.verdict == Verdict::Diverges) {
    auto value = [&](std::int64_t n) {
      return cert.witness ? x.at(n).value_at(*cert.witness) : x.at(n).value_at(fresh_atom(x));
    };
    Scalar expected = cert.witness ? limit.value_at(*cert.witness) : limit.value_at(fresh_atom(x));
    if (expected != cert.expected || cert.observed == cert.expected) return fail(why, "witness values inconsistent");
    std::int64_t from = std::max(x.horizon(), cert.witness ? x.settle_time(cert.witness->col) : 1);
    for (std::int64_t n = from; n <= window_end(from, x.period()); ++n)
      if (value(n) != cert.observed) return fail(why, "witness coordinate does not settle at the observed value");
    return true;
  }
  if (!cert.family) return fail(why, "missing dominating family");
  const DominatingFamily& fam = *cert.family;
  if (fam.kind == DominatingFamily::Kind::Sequence) {
    const ElementSeq& b = *fam.sequence;
    if (!b.limit().is_zero()) return fail(why, "dominating sequence does not tend to 0");
    auto indices = check_indices(fam.from, probe, std::max(x.horizon(), b.horizon()), std::lcm(x.period(), b.period()));
    for (auto n : indices) {
      Element bn = b.at(n);
      if (!bn.is_positive()) return fail(why, "b_" + std::to_string(n) + " is not positive");
      if (!leq(b.at(n + 1), bn)) return fail(why, "b is not decreasing at n = " + std::to_string(n));
      if (!leq(abs(x.at(n) - limit), bn)) return fail(why, "|x_n - x| exceeds b_n at n = " + std::to_string(n));
    }
    return true;
  }
  // cofinite net: sample atom sets built from what the sequence touches
  std::vector<AtomIndex> touched;
  for (std::int64_t n = 1; n <= std::max<std::int64_t>(probe, x.start()); ++n)
    for (const auto& c : (x.at(n) - limit).support()) touched.push_back(c);
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  AtomIndex fresh = fresh_atom(x);
  std::vector<std::vector<AtomIndex>> betas{{}, {fresh}, touched};
  if (touched.size() > 1) betas.emplace_back(touched.begin(), touched.begin() + touched.size() / 2);
  for (const auto& beta : betas) {
    for (std::int64_t j : {std::int64_t{1}, std::int64_t{2}, static_cast<std::int64_t>(probe)}) {
      Element y = fam.net_at(beta, j);
      if (!y.is_positive()) return fail(why, "net member is not positive");
      auto bigger = beta;
      bigger.push_back(fresh);
      if (!leq(fam.net_at(bigger, j + 1), y)) return fail(why, "net is not decreasing");
      std::int64_t n0 = fam.net_index(beta, j);
      for (auto n : check_indices(n0, probe, std::max(n0, x.horizon()), x.period()))
        if (!leq(abs(x.at(n) - limit), y)) return fail(why, "|x_n - x| exceeds the net member at n = " + std::to_string(n));
    }
  }
  touched.push_back(fresh);
  for (const auto& c : touched) {
    Scalar v = fam.net_at({c}, probe).value_at(c);
    auto d = fam.decay.find(c);
    if (v != (d == fam.decay.end() ? Scalar(0) : d->second / Scalar(probe)))
      return fail(why, "net does not shrink at e" + to_string(c, space));
  }
  return true;
}

bool verify_monotone_certificate(const ConvergenceCertificate& cert, const ElementSeq& b, int probe, std::string* why) {
  auto indices = check_indices(1, probe, b.horizon(), b.period());
  for (auto n : indices)
    if (!leq(b.at(n + 1), b.at(n))) return fail(why, "not decreasing at n = " + std::to_string(n));
  if (cert.verdict == Verdict::Converges) {
    if (!b.limit().is_zero()) return fail(why, "coordinatewise limit is not 0");
    return true;
  }
  if (cert.minorant) {
    const Element& h = *cert.minorant;
    if (!h.is_positive() || h.is_zero()) return fail(why, "minorant is not strictly positive");
    if (!leq(CompletionElement(h), b.limit())) return fail(why, "minorant exceeds the coordinatewise infimum");
    for (auto n : indices)
      if (!leq(h, b.at(n))) return fail(why, "minorant exceeds b_" + std::to_string(n));
    return true;
  }
  if (!cert.witness && !cert.ambient_witness) return fail(why, "no witness");
  Scalar v = cert.witness ? b.limit().value_at(*cert.witness) : b.limit().ambient();
  return v < 0 ? true : fail(why, "witness coordinate is not negative");
}

}  // namespace rieszkit
