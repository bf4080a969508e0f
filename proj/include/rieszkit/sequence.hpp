#ifndef RIESZKIT_SEQUENCE_HPP
#define RIESZKIT_SEQUENCE_HPP

#include <map>
#include <string>
#include <vector>

#include "rieszkit/element.hpp"
#include "rieszkit/pattern.hpp"

namespace rieszkit {

/// One symbolic summand of an ElementSeq. Column positions are affine in the
/// step k(n) = floor((n - residue) / modulus).
struct SeqPiece {
  enum class Shape {
    Fixed,   // (coef + decay/n) at column `offset`
    Moving,  // coef at column slope*k(n) + offset, once k(n) >= k_lo
    Run,     // coef at every column slope*k + offset, k_lo <= k <= k(n)
  };

  Shape shape = Shape::Fixed;
  Scalar coef;
  Scalar decay;
  std::int64_t row = 0;  // RowBlock row, FinDev token family, 0 otherwise
  std::int64_t slope = 1;
  std::int64_t offset = 0;
  std::int64_t modulus = 1;
  std::int64_t residue = 0;
  std::int64_t k_lo = 1;
  bool gated = false;  // Moving: present only when n = residue (mod modulus)

  static SeqPiece fixed(const AtomIndex& at, const Scalar& coef, const Scalar& decay = 0);
  static SeqPiece moving(std::int64_t row, const Scalar& coef, std::int64_t slope, std::int64_t offset,
                         std::int64_t modulus = 1, std::int64_t residue = 0, std::int64_t k_lo = 1);
  static SeqPiece run(std::int64_t row, const Scalar& coef, std::int64_t slope, std::int64_t offset, std::int64_t k_lo,
                      std::int64_t modulus = 1, std::int64_t residue = 0);

  std::int64_t step(std::int64_t n) const { return floor_div(n - residue, modulus); }
  bool active(std::int64_t n) const;
  std::string to_string(const SpaceDesc& space) const;
  bool operator==(const SeqPiece&) const = default;
};

/// Symbolic sequence of elements: explicit values for n < start, and
/// base + sum of pieces for n >= start.
class ElementSeq {
 public:
  ElementSeq(SpaceDesc space, std::vector<Element> early, Element base, std::vector<SeqPiece> pieces);

  static ElementSeq constant(const Element& x);

  const SpaceDesc& space() const { return space_; }
  std::int64_t start() const { return static_cast<std::int64_t>(early_.size()) + 1; }
  const std::vector<Element>& early() const { return early_; }
  const Element& base() const { return base_; }
  const std::vector<SeqPiece>& pieces() const { return pieces_; }

  /// x_n for n >= 1, exact.
  Element at(std::int64_t n) const;

  /// Beyond `horizon()` the sequence is translation-regular: the configuration
  /// around every moving column repeats with `period()`, and every column
  /// below the moving fronts has reached its final value up to decay terms.
  std::int64_t horizon() const;
  std::int64_t period() const;
  /// Every coordinate c (outside decay columns) equals its limit for n >= settle_time(c).
  std::int64_t settle_time(std::int64_t col) const;
  std::int64_t settle_rate() const;
  std::int64_t settle_offset() const;

  /// Coordinatewise limit, an element of the order completion.
  CompletionElement limit() const;
  /// Columns carrying decay terms, with the summed decay coefficient.
  std::map<AtomIndex, Scalar> decay_columns() const;
  bool has_moving_parts() const;
  /// Rows (or token families) that pieces touch.
  std::vector<std::int64_t> piece_rows() const;

  ElementSeq operator-(const Element& x) const;
  ElementSeq scaled(const Scalar& c) const;
  /// Merges cancelling Run pairs into moving and fixed atoms.
  ElementSeq telescoped() const;

  std::string to_string() const;

 private:
  SpaceDesc space_;
  std::vector<Element> early_;
  Element base_;
  std::vector<SeqPiece> pieces_;
};

}  // namespace rieszkit

#endif  // RIESZKIT_SEQUENCE_HPP
