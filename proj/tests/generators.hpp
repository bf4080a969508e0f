// Random generators shared by the property and acceptance suites.
#ifndef RIESZKIT_TESTS_GENERATORS_HPP
#define RIESZKIT_TESTS_GENERATORS_HPP

#include <random>
#include <vector>

#include "rieszkit/element.hpp"

namespace rieszkit::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t integer(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Small rationals with denominators up to 4, so ties between coordinates are common.
  Scalar scalar(std::int64_t range = 3) { return make_scalar(integer(-range * 2, range * 2), integer(1, 2) * (coin() ? 1 : 2)); }

  Line line(std::size_t max_len = 5) {
    Line l;
    l.tail = scalar();
    auto n = static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(max_len)));
    for (std::size_t i = 0; i < n; ++i) l.prefix.push_back(coin() ? l.tail : scalar());
    return l;
  }

  Element element(const SpaceDesc& space) {
    switch (space.kind) {
      case SpaceKind::FinDim: {
        std::vector<Scalar> v;
        for (int i = 0; i < space.dim; ++i) v.push_back(scalar());
        return Element(space, FinVec{v});
      }
      case SpaceKind::TailSeq:
        return Element(space, line());
      case SpaceKind::FinDev: {
        DevMap d;
        d.ambient = scalar();
        auto n = integer(0, 4);
        for (std::int64_t i = 0; i < n; ++i) d.values[{integer(0, 1), integer(1, 6)}] = scalar();
        return Element(space, d);
      }
      case SpaceKind::RowBlock: {
        RowGrid g;
        g.tail = scalar();
        auto rows = integer(0, 3);
        for (std::int64_t r = 0; r < rows; ++r) {
          Line l = line(4);
          if (!space.free_rows) l.tail = g.tail;
          g.rows.push_back(l);
        }
        return Element(space, g);
      }
    }
    return Element::zero(space);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::vector<SpaceDesc> all_space_kinds() {
  return {SpaceDesc::fin_dim(4), SpaceDesc::tail_seq(), SpaceDesc::fin_dev(), SpaceDesc::e_k(), SpaceDesc::finite_grid()};
}

}  // namespace rieszkit::testing

#endif
