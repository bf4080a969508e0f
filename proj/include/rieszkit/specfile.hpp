#ifndef RIESZKIT_SPECFILE_HPP
#define RIESZKIT_SPECFILE_HPP

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rieszkit/operator.hpp"

namespace rieszkit {

/// Syntax or declaration error; what() reads "line L, column C: message".
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message, std::set<std::string> expected = {});
  int line, column;
  std::set<std::string> expected;
};

// Element literal: sum of coefficient * basis vector.
struct BasisRef {
  enum class Kind { Atom, Token, RowUnit, Unit };
  Kind kind = Kind::Unit;
  std::int64_t a = 0, b = 0;  // Atom: (0, i) or (n, m); Token: (family, i); RowUnit: (n, 0)
  bool two_index = false;
  bool operator==(const BasisRef&) const = default;
};

struct ElemExpr {
  std::vector<std::pair<Scalar, BasisRef>> terms;
  bool operator==(const ElemExpr&) const = default;
};

// a*var + b with integer coefficients
struct IndexForm {
  std::int64_t slope = 1, offset = 0;
  bool operator==(const IndexForm&) const = default;
};

struct StencilTermExpr {
  Scalar coef, growth;  // coef + growth*n
  char target = 'e';    // 'e' or 'g'
  bool row_variable = false;
  std::int64_t row = 0;  // constant output row / token family
  bool has_row = false;
  IndexForm index;
  bool operator==(const StencilTermExpr&) const = default;
};

struct AtomClause {
  std::int64_t row = 0, col = 0;
  bool two_index = false;
  ElemExpr image;
  bool operator==(const AtomClause&) const = default;
};
struct StencilClause {
  std::int64_t threshold = 0, modulus = 1, residue = 0;
  std::vector<StencilTermExpr> terms;
  bool operator==(const StencilClause&) const = default;
};
struct UnitClause {
  ElemExpr image;
  bool operator==(const UnitClause&) const = default;
};
struct RowUnitClause {
  std::int64_t row = 0;
  ElemExpr image;
  bool operator==(const RowUnitClause&) const = default;
};
struct RowTemplateClause {
  Line line;
  bool operator==(const RowTemplateClause&) const = default;
};
struct MatrixClause {
  std::vector<std::vector<Scalar>> rows;
  bool operator==(const MatrixClause&) const = default;
};
using Clause = std::variant<AtomClause, StencilClause, UnitClause, RowUnitClause, RowTemplateClause, MatrixClause>;

struct SpaceDecl {
  std::string name;
  SpaceDesc space;
  bool operator==(const SpaceDecl&) const = default;
};
struct OperatorDecl {
  std::string name, domain, codomain;
  std::vector<Clause> clauses;
  bool operator==(const OperatorDecl&) const = default;
};
struct Directive {
  std::string command;            // check, positive-part, project-oc, witness-pervasive, classify
  std::vector<std::string> args;  // e.g. {"order_continuous", "T"} or {"E", "F"}
  bool operator==(const Directive&) const = default;
};

struct SpecFile {
  std::vector<SpaceDecl> spaces;
  std::vector<OperatorDecl> operators;
  std::vector<Directive> directives;
  bool operator==(const SpecFile&) const = default;

  const SpaceDesc& space(const std::string& name) const;
  /// Builds the named operator (the first one when `name` is empty).
  Operator build(const std::string& name = {}) const;
};

SpecFile parse_spec(const std::string& text);
std::string print_spec(const SpecFile& spec);
/// Space kind keyword: R^n, l0inf, c, CK, E_K, grid.
SpaceDesc parse_space_kind(const std::string& word);
std::string space_keyword(const SpaceDesc& s);

}  // namespace rieszkit

#endif  // RIESZKIT_SPECFILE_HPP
