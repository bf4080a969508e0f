#ifndef RIESZKIT_EXAMPLES_HPP
#define RIESZKIT_EXAMPLES_HPP

#include <random>

#include "rieszkit/operator.hpp"

namespace rieszkit {

/// l0^inf -> C(K): T(e_1) = 1_{gamma_1}, T(e_n) = 1_{gamma_n} - 1_{gamma_(n-1)}, T(1) = 0.
Operator fremlin_operator();
/// E_K -> l0^inf(NxN): (Tx)_(n,m) = x_(n,2m-1) - x_(n,2m); row units and 1 map to 0.
Operator pair_difference_operator();
/// (limit functional) (x) e_1 on l0^inf.
Operator limit_rank_one();

struct RandomOperatorOptions {
  SpaceDesc domain = SpaceDesc::tail_seq();
  SpaceDesc codomain = SpaceDesc::tail_seq();
  bool positive = false;
  int max_explicit = 3;
};

/// Random operator with a nontrivial tail rule; positive ones satisfy is_positive().
Operator random_operator(std::mt19937_64& rng, const RandomOperatorOptions& opts = {});

}  // namespace rieszkit

#endif  // RIESZKIT_EXAMPLES_HPP
