#include "rieszkit/space.hpp"

#include "rieszkit/scalar.hpp"

namespace rieszkit {

SpaceDesc SpaceDesc::fin_dim(int n) {
  if (n < 1) throw PreconditionError("FinDim requires n >= 1");
  return {SpaceKind::FinDim, n, false, false};
}

std::string SpaceDesc::name() const {
  switch (kind) {
    case SpaceKind::FinDim:
      return "R^" + std::to_string(dim);
    case SpaceKind::TailSeq:
      return as_c ? "c" : "l0inf";
    case SpaceKind::FinDev:
      return "C(K)";
    case SpaceKind::RowBlock:
      return free_rows ? "E_K" : "l0inf(NxN)";
  }
  return "?";
}

std::string SpaceDesc::atom_index_description() const {
  switch (kind) {
    case SpaceKind::FinDim:
      return "e_i, 1 <= i <= " + std::to_string(dim);
    case SpaceKind::TailSeq:
      return "e_i, i >= 1; unit 1";
    case SpaceKind::FinDev:
      return "1_{gamma}, gamma a symbolic token; unit 1";
    case SpaceKind::RowBlock:
      return free_rows ? "e_(n,m); row units r_n; unit 1" : "e_(n,m); unit 1";
  }
  return "?";
}

std::string to_string(const AtomIndex& index, const SpaceDesc& space) {
  switch (space.kind) {
    case SpaceKind::FinDim:
    case SpaceKind::TailSeq:
      return "e" + std::to_string(index.col);
    case SpaceKind::FinDev:
      if (index.row == 0) return "g" + std::to_string(index.col);
      return "g" + std::to_string(index.row) + "." + std::to_string(index.col);
    case SpaceKind::RowBlock:
      return "e(" + std::to_string(index.row) + "," + std::to_string(index.col) + ")";
  }
  return "?";
}

void check_atom_index(const SpaceDesc& space, const AtomIndex& index) {
  bool ok = false;
  switch (space.kind) {
    case SpaceKind::FinDim:
      ok = index.row == 0 && index.col >= 1 && index.col <= space.dim;
      break;
    case SpaceKind::TailSeq:
      ok = index.row == 0 && index.col >= 1;
      break;
    case SpaceKind::FinDev:
      ok = index.row >= 0 && index.col >= 1;
      break;
    case SpaceKind::RowBlock:
      ok = index.row >= 1 && index.col >= 1;
      break;
  }
  if (!ok) throw InvalidIndex("invalid atom index (" + std::to_string(index.row) + "," +
                              std::to_string(index.col) + ") for " + space.name());
}

void require_same_space(const SpaceDesc& a, const SpaceDesc& b, const char* what) {
  if (!(a == b)) throw SpaceMismatch(std::string(what) + ": space mismatch (" + a.name() + " vs " + b.name() + ")");
}

}  // namespace rieszkit
