#ifndef QPB_RATIONAL_HPP
#define QPB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace qpb {

/// Exact rational scalar. GMP keeps values in lowest terms with a positive
/// denominator as long as every constructor from a (num, den) pair is
/// followed by canonicalize(); use make_rational for that.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

/// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);

Rational power(const Rational& base, std::uint64_t exponent);

double to_double(const Rational& r);

}  // namespace qpb

#endif
