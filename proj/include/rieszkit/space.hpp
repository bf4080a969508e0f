#ifndef RIESZKIT_SPACE_HPP
#define RIESZKIT_SPACE_HPP

#include <compare>
#include <cstdint>
#include <string>

namespace rieszkit {

enum class SpaceKind {
  FinDim,    // R^n
  TailSeq,   // eventually constant sequences (l0^inf); also stands in for c
  FinDev,    // C(K), K the one-point compactification of an uncountable discrete set
  RowBlock,  // double sequences: E_K, or l0^inf(N x N) when row tails are tied
};

/// Describes one of the supported concrete Riesz spaces.
struct SpaceDesc {
  SpaceKind kind = SpaceKind::TailSeq;
  int dim = 0;             // FinDim only
  bool free_rows = false;  // RowBlock: true for E_K, false for l0^inf(N x N)
  bool as_c = false;       // TailSeq: the space c, represented by its dense subspace l0^inf

  static SpaceDesc fin_dim(int n);
  static SpaceDesc tail_seq() { return {SpaceKind::TailSeq, 0, false, false}; }
  static SpaceDesc convergent() { return {SpaceKind::TailSeq, 0, false, true}; }
  static SpaceDesc fin_dev() { return {SpaceKind::FinDev, 0, false, false}; }
  static SpaceDesc e_k() { return {SpaceKind::RowBlock, 0, true, false}; }
  static SpaceDesc finite_grid() { return {SpaceKind::RowBlock, 0, false, false}; }

  /// The unit is a free generator beside the atoms (false only for R^n).
  bool unit_is_generator() const { return kind != SpaceKind::FinDim; }
  bool has_row_units() const { return kind == SpaceKind::RowBlock && free_rows; }
  std::string name() const;
  std::string atom_index_description() const;

  bool operator==(const SpaceDesc&) const = default;
};

/// Atom index. FinDim/TailSeq use (0, i) with i >= 1; FinDev tokens are
/// (family, i) where family 0 holds the distinguished sequence gamma_i and
/// families >= 1 are fresh; RowBlock uses (n, m) with n, m >= 1.
struct AtomIndex {
  std::int64_t row = 0;
  std::int64_t col = 0;

  auto operator<=>(const AtomIndex&) const = default;
};

std::string to_string(const AtomIndex& index, const SpaceDesc& space);

/// Throws InvalidIndex unless `index` names an atom of `space`.
void check_atom_index(const SpaceDesc& space, const AtomIndex& index);

/// Throws SpaceMismatch when the two descriptors differ.
void require_same_space(const SpaceDesc& a, const SpaceDesc& b, const char* what);

}  // namespace rieszkit

#endif  // RIESZKIT_SPACE_HPP
