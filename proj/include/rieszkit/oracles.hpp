#ifndef RIESZKIT_ORACLES_HPP
#define RIESZKIT_ORACLES_HPP

// Brute-force references on finite truncations. Nothing in the main
// algorithms calls into this header; tests and the casebook compare against it.

#include <optional>
#include <string>
#include <vector>

#include "rieszkit/operator.hpp"
#include "rieszkit/sequence.hpp"

namespace rieszkit {

using Matrix = std::vector<std::vector<Scalar>>;

Matrix matrix_positive_part(const Matrix& m);
/// Matrix of an operator between R^n spaces, rows indexed by output coordinate.
Matrix to_matrix(const Operator& t);

/// Coordinatewise max of T(y) over y in the dyadic grid of [0,x]. For l0^inf
/// domains the first `level` coordinates move independently and the rest move
/// together (level 0 picks a level covering x and the explicit atom images).
CompletionElement grid_interval_sup(const Operator& t, const Element& x, int depth, int level = 0);

struct ProbeResult {
  std::vector<Scalar> mu;  // mu[N-1] for N = 1..max_level
  std::vector<std::string> notes;
};

/// Least sup-entry of S(1) over positive S >= T, S >= 0 on the level-N
/// truncation of E_K -> l0^inf(NxN) (rows 1..N, one far slot per output).
Scalar majorant_growth_probe(const Operator& t, int level);
ProbeResult majorant_growth_table(const Operator& t, int max_level);

struct SearchResult {
  bool found = false;
  std::string family;  // description of the dominating family found
  std::size_t candidates = 0;
  int checked_terms = 0;
};

/// Searches b_n = sum of (generator) * w(n), w in {1/n, 2^-n}, with at most
/// `bound` summands, decreasing with b_n >= |x_n - x| for n up to the check depth.
SearchResult bruteforce_dominating_search(const ElementSeq& xs, int bound, int check_terms = 24);

}  // namespace rieszkit

#endif  // RIESZKIT_ORACLES_HPP
