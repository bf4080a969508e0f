#ifndef RIESZKIT_PATTERN_HPP
#define RIESZKIT_PATTERN_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rieszkit/element.hpp"

namespace rieszkit {

/// Eventually periodic sequence: explicit prefix, then `period` repeated.
struct LinePattern {
  std::vector<Scalar> prefix;
  std::vector<Scalar> period{Scalar(0)};

  static LinePattern constant(const Scalar& c) { return {{}, {c}}; }
  static LinePattern from_line(const Line& line) { return {line.prefix, {line.tail}}; }

  Scalar at(std::int64_t col) const;
  bool is_eventually_constant() const { return period.size() == 1; }
  void canonicalize();
  bool operator==(const LinePattern&) const = default;
};

struct DevPattern {
  std::map<std::int64_t, LinePattern> families;  // token family -> values at cols >= 1
  Scalar ambient;                                // value at every untouched token
  bool operator==(const DevPattern&) const = default;
};

struct RowPattern {
  std::vector<LinePattern> rows;  // explicit rows 1..R
  LinePattern generic;            // every later row
  bool operator==(const RowPattern&) const = default;
};

/// An element of the order completion, restricted to the fragment reached by
/// stencil operators: coordinate values that are eventually periodic along
/// each line. Every Element embeds; membership in the original space is decidable.
class CompletionElement {
 public:
  using Payload = std::variant<FinVec, LinePattern, DevPattern, RowPattern>;

  CompletionElement() : CompletionElement(zero(SpaceDesc::tail_seq())) {}
  CompletionElement(SpaceDesc space, Payload payload);
  CompletionElement(const Element& x);  // NOLINT: embedding is implicit by intent

  static CompletionElement zero(const SpaceDesc& space);
  /// `line` placed in row n of a RowBlock space, zero elsewhere.
  static CompletionElement in_row(const SpaceDesc& space, std::int64_t row, const LinePattern& line);
  /// `line` placed in every row beyond `after_row` (and nowhere else).
  static CompletionElement in_rows_after(const SpaceDesc& space, std::int64_t after_row, const LinePattern& line);

  const SpaceDesc& space() const { return space_; }
  const Payload& payload() const { return payload_; }

  Scalar value_at(const AtomIndex& index) const;
  /// Value at coordinates no line touches (FinDev ambient); zero elsewhere.
  Scalar ambient() const;
  Scalar sup_norm() const;

  bool is_member() const;
  /// The represented Element; throws PreconditionError when not a member.
  Element to_element() const;
  std::optional<Element> as_element() const;

  bool is_zero() const;
  bool is_positive() const;
  std::string to_string() const;

  bool operator==(const CompletionElement&) const = default;

 private:
  SpaceDesc space_;
  Payload payload_;
};

CompletionElement map_values(const CompletionElement& x, const std::function<Scalar(const Scalar&)>& f);
CompletionElement combine(const CompletionElement& x, const CompletionElement& y,
                          const std::function<Scalar(const Scalar&, const Scalar&)>& f);

CompletionElement operator+(const CompletionElement& x, const CompletionElement& y);
CompletionElement operator-(const CompletionElement& x, const CompletionElement& y);
CompletionElement operator*(const Scalar& c, const CompletionElement& x);
CompletionElement pos(const CompletionElement& x);
CompletionElement sup2(const CompletionElement& x, const CompletionElement& y);
bool leq(const CompletionElement& x, const CompletionElement& y);

std::string to_string(const LinePattern& line);

}  // namespace rieszkit

#endif  // RIESZKIT_PATTERN_HPP
