#ifndef RIESZKIT_SCALAR_HPP
#define RIESZKIT_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rieszkit {

/// Exact rational scalar. GMP keeps every value in lowest terms with a
/// positive denominator, so equality is structural.
using Scalar = mpq_class;

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidIndex : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedHypothesis : public Error {
 public:
  using Error::Error;
};

inline Scalar make_scalar(std::int64_t num, std::int64_t den = 1) {
  Scalar q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

/// Renders "p" for integers and "p/q" otherwise.
inline std::string to_string(const Scalar& q) { return q.get_str(); }

/// Parses "p", "-p", "p/q" or a terminating decimal "1.25".
Scalar parse_scalar(std::string_view text);

inline Scalar pos_part(const Scalar& q) { return q > 0 ? q : Scalar(0); }
inline Scalar neg_part(const Scalar& q) { return q < 0 ? Scalar(-q) : Scalar(0); }
inline Scalar abs_value(const Scalar& q) { return q < 0 ? Scalar(-q) : q; }
inline const Scalar& max_of(const Scalar& a, const Scalar& b) { return a < b ? b : a; }
inline const Scalar& min_of(const Scalar& a, const Scalar& b) { return a < b ? a : b; }

/// Floor division for signed 64-bit values.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - b * floor_div(a, b); }

}  // namespace rieszkit

#endif  // RIESZKIT_SCALAR_HPP
