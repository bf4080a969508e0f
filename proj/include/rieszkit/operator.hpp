#ifndef RIESZKIT_OPERATOR_HPP
#define RIESZKIT_OPERATOR_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rieszkit/sequence.hpp"

namespace rieszkit {

/// A generator of the domain: an atom, a row unit (E_K only) or the unit.
struct Generator {
  enum class Kind { Atom, RowUnit, Unit };
  Kind kind = Kind::Atom;
  AtomIndex atom;
  std::int64_t row = 0;

  static Generator of_atom(const AtomIndex& a) { return {Kind::Atom, a, 0}; }
  static Generator of_row_unit(std::int64_t n) { return {Kind::RowUnit, {}, n}; }
  static Generator unit() { return {Kind::Unit, {}, 0}; }
  std::string to_string(const SpaceDesc& space) const;
  auto operator<=>(const Generator&) const = default;
};

/// x as a finite combination of generators. Zero coefficients are dropped.
std::vector<std::pair<Generator, Scalar>> decompose(const Element& x);
Element generator_element(const SpaceDesc& space, const Generator& g);
Element recompose(const SpaceDesc& space, const std::vector<std::pair<Generator, Scalar>>& terms);

/// Image term of the tail rule: (coef + growth*m) at column slope*k + offset,
/// where m = q*k + r is the input column.
struct StencilTerm {
  Scalar coef;
  Scalar growth;
  std::int64_t slope = 1;
  std::int64_t offset = 0;
  std::int64_t row = 0;  // output row or token family; ignored by row-local stencils
  bool operator==(const StencilTerm&) const = default;
};

struct TailStencil {
  std::int64_t threshold = 0;  // applies to input columns m > threshold
  std::int64_t modulus = 1;
  std::vector<std::vector<StencilTerm>> terms{{}};  // indexed by m mod modulus

  bool empty() const;
  /// True when every output coordinate receives finitely many contributions.
  bool locally_finite() const;
  /// Merges equal terms, drops zeros and collapses the modulus when possible.
  void normalize();
  /// Same rule written with a larger modulus (a multiple of the current one).
  TailStencil with_modulus(std::int64_t q) const;
  std::vector<std::pair<AtomIndex, Scalar>> image(std::int64_t m, std::optional<std::int64_t> in_row) const;
  /// Input columns whose images collide inside one row (two terms on one column).
  std::vector<std::int64_t> crossings() const;
  bool operator==(const TailStencil&) const = default;
};

/// Operator given by generator images. Explicit atom images override the tail
/// rule. For RowBlock domains the rule is row-local: atom (n, m) maps into row n.
class Operator {
 public:
  Operator(SpaceDesc domain, SpaceDesc codomain);

  static Operator zero(const SpaceDesc& domain, const SpaceDesc& codomain);
  static Operator identity(const SpaceDesc& space);
  /// rows[i][j] is the coefficient of e_(i+1) in T(e_(j+1)).
  static Operator from_matrix(const std::vector<std::vector<Scalar>>& rows);

  Operator& set_atom_image(const AtomIndex& a, const Element& image);
  Operator& set_stencil(TailStencil stencil);
  Operator& set_unit_image(const Element& image);
  Operator& set_row_unit_image(std::int64_t row, const Element& image);
  Operator& set_row_unit_template(const Line& line);

  const SpaceDesc& domain() const { return domain_; }
  const SpaceDesc& codomain() const { return codomain_; }
  const std::map<AtomIndex, Element>& atom_images() const { return atoms_; }
  const TailStencil& stencil() const { return stencil_; }
  const Element& unit_image() const { return unit_; }
  const std::map<std::int64_t, Element>& row_unit_images() const { return row_units_; }
  const std::optional<Line>& row_unit_template() const { return row_template_; }
  bool row_local() const { return domain_.kind == SpaceKind::RowBlock; }

  Element image(const Generator& g) const;
  Element image_of_atom(const AtomIndex& a) const;
  Element image_of_row_unit(std::int64_t row) const;
  Element apply(const Element& x) const;

  /// Largest atom column that is not governed by the tail rule.
  std::int64_t explicit_reach() const;
  /// Largest domain row with explicit data; later rows are generic (RowBlock domains).
  std::int64_t explicit_rows() const;
  /// Every row up to this one may carry non-generic images in the codomain.
  std::int64_t touched_rows() const;

  bool is_zero() const;
  std::string to_string() const;

  friend Operator operator+(const Operator& s, const Operator& t);
  friend Operator operator*(const Scalar& c, const Operator& t);

 private:
  SpaceDesc domain_;
  SpaceDesc codomain_;
  std::map<AtomIndex, Element> atoms_;
  TailStencil stencil_;
  Element unit_;
  std::map<std::int64_t, Element> row_units_;
  std::optional<Line> row_template_;
};

Operator operator-(const Operator& s, const Operator& t);
Operator operator-(const Operator& t);
bool operator==(const Operator& s, const Operator& t);

/// Order bounded functional on a domain, by its values on generators.
struct Functional {
  SpaceDesc domain;
  std::map<AtomIndex, Scalar> atoms;
  std::map<std::int64_t, Scalar> row_units;
  Scalar unit;  // f(1)

  static Functional coordinate(const SpaceDesc& space, const AtomIndex& j);
  static Functional limit(const SpaceDesc& space);

  Scalar operator()(const Element& x) const;
  bool is_positive() const;
  bool is_zero() const;
  std::string to_string() const;
};

/// f o T as a functional on the domain of T.
Functional compose(const Functional& f, const Operator& t);
Operator rank_one(const Functional& f, const Element& v);

/// s_n = sum_{i<=n} T(e_i) for a TailSeq domain, in telescoped closed form.
ElementSeq partial_sum_seq(const Operator& t);
/// sum_{m<=n} T(e_(row,m)) for a RowBlock domain.
ElementSeq row_partial_sum_seq(const Operator& t, std::int64_t row);
/// Same sums with T(e) replaced by |T(e)| or T(e)^+.
ElementSeq partial_sum_seq(const Operator& t, std::int64_t row, Element (*part)(const Element&));

/// sum over every atom of f(T(e)) in the completion, for f = identity, pos or abs.
/// For TailSeq and l0^inf(NxN) domains this is the limit of the atom partial sums.
CompletionElement atom_sum(const Operator& t, Element (*part)(const Element&));
/// Row n's atom sum (RowBlock domains).
CompletionElement row_atom_sum(const Operator& t, std::int64_t row, Element (*part)(const Element&));
/// Row-atom sum of a generic row placed in every row beyond explicit_rows().
LinePattern generic_row_atom_sum(const Operator& t, Element (*part)(const Element&));
/// Sum of T(ru_n) over all rows (E_K domains), in the completion.
CompletionElement row_unit_sum(const Operator& t);

Element identity_part(const Element& x);

struct OrderBoundedResult {
  bool bounded = false;
  Element bound;  // positive u with |T(y)| <= u for y in [-1, 1] generated pieces
  Scalar scale;   // bound = scale * unit of the codomain
  std::string reason;
};

OrderBoundedResult order_bounded_test(const Operator& t);
bool is_positive(const Operator& t);
void require_order_bounded(const Operator& t);

}  // namespace rieszkit

#endif  // RIESZKIT_OPERATOR_HPP
