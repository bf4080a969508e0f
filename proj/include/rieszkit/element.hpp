#ifndef RIESZKIT_ELEMENT_HPP
#define RIESZKIT_ELEMENT_HPP

#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rieszkit/scalar.hpp"
#include "rieszkit/space.hpp"

namespace rieszkit {

/// Eventually constant sequence: explicit prefix, then `tail` forever.
struct Line {
  std::vector<Scalar> prefix;
  Scalar tail;

  Scalar at(std::int64_t col) const;  // col >= 1
  bool operator==(const Line&) const = default;
};

struct FinVec {
  std::vector<Scalar> values;
  bool operator==(const FinVec&) const = default;
};

struct DevMap {
  std::map<AtomIndex, Scalar> values;  // deviations from the ambient value
  Scalar ambient;
  bool operator==(const DevMap&) const = default;
};

struct RowGrid {
  std::vector<Line> rows;  // rows[n-1] is row n; later rows are constant `tail`
  Scalar tail;
  bool operator==(const RowGrid&) const = default;
};

/// A vector of one of the supported spaces, always held in canonical form.
class Element {
 public:
  using Payload = std::variant<FinVec, Line, DevMap, RowGrid>;

  Element() : Element(zero(SpaceDesc::tail_seq())) {}
  Element(SpaceDesc space, Payload payload);

  static Element zero(const SpaceDesc& space);
  static Element unit(const SpaceDesc& space);
  static Element atom(const SpaceDesc& space, const AtomIndex& index);
  static Element row_unit(const SpaceDesc& space, std::int64_t row);

  static Element fin_dim(std::vector<Scalar> values);
  static Element tail_seq(std::vector<Scalar> prefix, Scalar tail, bool as_c = false);
  static Element fin_dev(std::map<AtomIndex, Scalar> values, Scalar ambient);
  static Element row_block(const SpaceDesc& space, std::vector<Line> rows, Scalar tail);

  const SpaceDesc& space() const { return space_; }
  const Payload& payload() const { return payload_; }
  const FinVec& fin() const { return std::get<FinVec>(payload_); }
  const Line& line() const { return std::get<Line>(payload_); }
  const DevMap& dev() const { return std::get<DevMap>(payload_); }
  const RowGrid& grid() const { return std::get<RowGrid>(payload_); }

  /// Coordinate functional: the coefficient of the band projection onto [e_index].
  Scalar value_at(const AtomIndex& index) const;
  /// Value taken at every coordinate not listed by support() (tail, ambient, global tail).
  Scalar background() const;
  /// Atoms whose value differs from the local background (row tail for RowBlock).
  std::vector<AtomIndex> support() const;
  /// Largest absolute value over all coordinates.
  Scalar sup_norm() const;

  bool is_zero() const;
  bool is_positive() const;           // x >= 0
  bool is_strictly_positive() const;  // x > 0
  std::string to_string() const;

  bool operator==(const Element&) const = default;

 private:
  SpaceDesc space_;
  Payload payload_;
};

Element map_values(const Element& x, const std::function<Scalar(const Scalar&)>& f);
Element combine(const Element& x, const Element& y, const std::function<Scalar(const Scalar&, const Scalar&)>& f);

Element sup2(const Element& x, const Element& y);
Element inf2(const Element& x, const Element& y);
Element pos(const Element& x);
Element neg(const Element& x);
Element abs(const Element& x);
bool is_disjoint(const Element& x, const Element& y);
bool leq(const Element& x, const Element& y);
Scalar coordinate_functional(const AtomIndex& index, const Element& x);

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator-(const Element& x);
Element operator*(const Scalar& c, const Element& x);

/// Adds `c` at one atom coordinate.
Element add_at(const Element& x, const AtomIndex& index, const Scalar& c);
/// Adds many atom coordinates at once.
Element add_many(const Element& x, const std::map<AtomIndex, Scalar>& deltas);

std::string to_string(const Line& line);

}  // namespace rieszkit

#endif  // RIESZKIT_ELEMENT_HPP
