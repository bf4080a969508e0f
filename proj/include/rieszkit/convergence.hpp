#ifndef RIESZKIT_CONVERGENCE_HPP
#define RIESZKIT_CONVERGENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rieszkit/sequence.hpp"

namespace rieszkit {

enum class Verdict { Converges, Diverges };
std::string to_string(Verdict v);

/// A decreasing family with infimum 0 that dominates |x_n - x| eventually.
struct DominatingFamily {
  enum class Kind {
    Sequence,     // b_n, n >= from
    CofiniteNet,  // y_(beta,j) over finite atom sets beta and j >= 1
  };

  Kind kind = Kind::Sequence;
  SpaceDesc space;
  std::int64_t from = 1;
  std::optional<ElementSeq> sequence;

  // y_(beta,j) = bound*(1 - 1_(beta u D)) + sum_(c in D) (|d_c|/j) e_c
  Scalar bound;
  std::map<AtomIndex, Scalar> decay;
  // |x_n - x| vanishes at c outside D once n >= settle_offset + settle_rate*col(c)
  std::int64_t settle_offset = 1;
  std::int64_t settle_rate = 1;

  Element net_at(const std::vector<AtomIndex>& beta, std::int64_t j) const;
  /// First index from which |x_n - x| <= y_(beta,j).
  std::int64_t net_index(const std::vector<AtomIndex>& beta, std::int64_t j) const;
  std::string describe() const;
};

struct ConvergenceCertificate {
  Verdict verdict = Verdict::Diverges;
  std::string rule;
  std::optional<DominatingFamily> family;
  Scalar order_bound;               // sup_n |x_n - x| <= order_bound * 1
  std::optional<Element> minorant;  // 0 < h <= b_n for every n
  std::optional<AtomIndex> witness;
  bool ambient_witness = false;  // the offending value sits at every untouched token
  Scalar observed;               // coordinatewise limit at the witness
  Scalar expected;
  std::string explanation;
};

/// Decides x_n ->o x in the space of the sequence.
ConvergenceCertificate decide_order_convergence(const ElementSeq& x, const Element& limit);

/// Decides b_n decreasing to 0. Throws PreconditionError when b is not decreasing.
ConvergenceCertificate decide_monotone_limit(const ElementSeq& b);

struct UniformCauchyResult {
  bool cauchy = false;
  Element regulator;  // |x_n - x_m| <= (1/N) regulator for n, m >= max(N, from)
  std::int64_t from = 1;
  std::int64_t witness_n = 0;  // x_(n+1) - x_n keeps a fixed jump at this n
  std::optional<AtomIndex> witness;
  Scalar jump;
  std::string explanation;
};

UniformCauchyResult decide_uniform_cauchy(const ElementSeq& x);

/// Re-checks a certificate by direct element comparisons on the probe range
/// and on one full period beyond both horizons.
bool verify_certificate(const ConvergenceCertificate& cert, const ElementSeq& x, const Element& limit, int probe,
                        std::string* why = nullptr);
bool verify_monotone_certificate(const ConvergenceCertificate& cert, const ElementSeq& b, int probe,
                                 std::string* why = nullptr);

/// First coordinate where `pred` holds, scanning explicit lines first.
std::optional<AtomIndex> find_coordinate(const CompletionElement& x, const std::function<bool(const Scalar&)>& pred);
/// A token no element of the sequence mentions (FinDev) or the first untouched row (RowBlock).
AtomIndex fresh_atom(const ElementSeq& x);

}  // namespace rieszkit

#endif  // RIESZKIT_CONVERGENCE_HPP
