#ifndef QPB_RANDOM_HPP
#define QPB_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qpb/expr.hpp"

namespace qpb {

/// Seeded generator of random expressions, vectors, operators and points.
/// Deterministic for a given seed.
class ExprSampler {
 public:
  struct Options {
    unsigned max_degree = 3;
    /// Finite-support indices are drawn from 1..max_support.
    unsigned max_support = 5;
    unsigned max_terms = 3;
    /// Allow geo/pow closed forms inside generated expressions.
    bool closed_forms = true;
  };

  explicit ExprSampler(std::uint64_t seed) : ExprSampler(seed, Options{}) {}
  ExprSampler(std::uint64_t seed, Options opts) : rng_(seed), opts_(opts) {}

  Rational rational(int max_num = 4, int max_den = 3, bool nonzero = false);
  SeqComb finite_vec(unsigned max_entries = 3);
  SeqComb vec();
  OperatorSymbol oper();
  Expression expression();
  /// Expression of exact polynomial degree at most `max_degree`.
  Expression monomial(unsigned degree);
  Point point();
  int uniform(int lo, int hi);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  Options opts_;
};

}  // namespace qpb

#endif
