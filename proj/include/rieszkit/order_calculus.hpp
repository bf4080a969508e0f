#ifndef RIESZKIT_ORDER_CALCULUS_HPP
#define RIESZKIT_ORDER_CALCULUS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rieszkit/convergence.hpp"
#include "rieszkit/operator.hpp"

namespace rieszkit {

/// Operator whose unit-type images live in the order completion of the codomain.
/// Atom images always stay in the codomain.
struct CompletionOperator {
  Operator atoms;  // only the atom data is used
  CompletionElement unit;
  std::map<std::int64_t, CompletionElement> row_units;  // rows 1..generic_from
  std::optional<LinePattern> row_template;              // placed in row n for n > generic_from
  std::int64_t generic_from = 0;

  static CompletionOperator embed(const Operator& t);

  const SpaceDesc& domain() const { return atoms.domain(); }
  const SpaceDesc& codomain() const { return atoms.codomain(); }
  CompletionElement image(const Generator& g) const;
  CompletionElement image_of_row_unit(std::int64_t row) const;
  CompletionElement apply(const Element& x) const;

  /// Every image lies in the codomain itself.
  bool in_codomain() const;
  std::optional<Operator> to_operator() const;
  std::string to_string() const;
};

CompletionOperator operator+(const CompletionOperator& s, const CompletionOperator& t);
CompletionOperator operator-(const CompletionOperator& s, const CompletionOperator& t);
bool operator==(const CompletionOperator& s, const CompletionOperator& t);
bool is_positive(const CompletionOperator& t);

/// sup { T(y) : 0 <= y <= x } in the completion.
CompletionElement rk_value(const Operator& t, const Element& x);

struct PositivePartResult {
  CompletionOperator candidate;
  bool in_F = false;
  std::string verdict;
};

PositivePartResult positive_part(const Operator& t);

/// The order continuous part: atoms kept, unit-type images replaced by atom-sum limits.
CompletionOperator oc_projection(const Operator& t);
CompletionOperator oc_projection(const CompletionOperator& t);

struct OrderContinuityResult {
  bool order_continuous = false;
  std::string route;
  std::vector<std::pair<std::string, ConvergenceCertificate>> certificates;
  std::vector<std::pair<std::string, ElementSeq>> sequences;  // what each certificate is about
  std::vector<std::pair<std::string, Element>> limits;
  std::string unit_check;
  bool unit_ok = true;
};

OrderContinuityResult order_continuity_test(const Operator& t);
bool verify_order_continuity(const OrderContinuityResult& r, int probe, std::string* why = nullptr);

struct Witness {
  std::string route;
  Generator x0;
  std::optional<AtomIndex> coordinate;
  Functional f;
  Element v;
  Operator r{SpaceDesc::tail_seq(), SpaceDesc::tail_seq()};
  Scalar scale = 1;
  std::vector<std::string> transcript;
  bool verified = false;
};

Witness pervasive_witness(const Operator& t);
/// Re-runs the transcript checks 0 < R and R <= T.
bool verify_witness(const Witness& w, const Operator& t, std::string* why = nullptr);

struct Conclusion {
  std::string key;
  bool holds = false;
  std::string basis;
  bool reconstructed = false;
};

struct PairClassification {
  SpaceDesc e, f;
  bool f_atomic = false;
  bool e_atomic_small_codim = false;
  bool pervasive = false;
  std::vector<Conclusion> conclusions;
  bool holds(const std::string& key) const;
};

PairClassification classify_pair(const SpaceDesc& e, const SpaceDesc& f);

}  // namespace rieszkit

#endif  // RIESZKIT_ORDER_CALCULUS_HPP
