#include "qpb/random.hpp"

#include <algorithm>
#include <set>

namespace qpb {

int ExprSampler::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

Rational ExprSampler::rational(int max_num, int max_den, bool nonzero) {
  int num = 0;
  do {
    num = uniform(-max_num, max_num);
  } while (nonzero && num == 0);
  return make_rational(num, uniform(1, max_den));
}

SeqComb ExprSampler::finite_vec(unsigned max_entries) {
  std::set<int> idx;
  const int count = uniform(1, static_cast<int>(std::min(max_entries, opts_.max_support)));
  while (static_cast<int>(idx.size()) < count)
    idx.insert(uniform(1, static_cast<int>(opts_.max_support)));
  SeqComb v;
  for (int k : idx) v += SeqComb::unit(static_cast<std::uint64_t>(k), rational(4, 3, true));
  return v;
}

SeqComb ExprSampler::vec() {
  if (!opts_.closed_forms) return finite_vec();
  switch (uniform(0, 5)) {
    case 0:
      return SeqVec::geometric(make_rational(uniform(1, 2) * (uniform(0, 1) == 0 ? 1 : -1), 3));
    case 1:
      return SeqVec::power(rational(3, 2, true), static_cast<unsigned>(uniform(1, 2)));
    default:
      return finite_vec();
  }
}

OperatorSymbol ExprSampler::oper() {
  Rational lambda = uniform(0, 2) == 0 ? Rational(0) : rational(3, 2);
  SeqComb diag;
  switch (opts_.closed_forms ? uniform(0, 3) : uniform(0, 1) * 3) {
    case 0:
      diag = SeqVec::geometric(make_rational(1, 2));
      break;
    case 1:
      diag = SeqVec::power(rational(2, 2, true), 1);
      break;
    case 2:
      diag = finite_vec();
      break;
    default:
      break;
  }
  std::vector<RankOne> pairs;
  const int n = uniform(0, 2);
  for (int i = 0; i < n; ++i) pairs.push_back({vec(), vec()});
  return OperatorSymbol(std::move(lambda), std::move(diag), std::move(pairs));
}

Expression ExprSampler::monomial(unsigned degree) {
  std::vector<Expression> factors{Expression::constant(rational(4, 3, true))};
  unsigned left = degree;
  while (left > 0) {
    const int pick = uniform(0, left >= 2 ? 2 : 1);
    if (pick == 0) {
      factors.push_back(Expression::x());
      left -= 1;
    } else if (pick == 1) {
      factors.push_back(Expression::lin(vec()));
      left -= 1;
    } else {
      factors.push_back(Expression::quad(oper()));
      left -= 2;
    }
  }
  return Expression::prod(std::move(factors));
}

Expression ExprSampler::expression() {
  const int terms = uniform(1, static_cast<int>(opts_.max_terms));
  std::vector<Expression> parts;
  for (int i = 0; i < terms; ++i)
    parts.push_back(monomial(static_cast<unsigned>(uniform(0, static_cast<int>(opts_.max_degree)))));
  return Expression::sum(std::move(parts));
}

Point ExprSampler::point() {
  SeqComb v;
  for (unsigned k = 1; k <= opts_.max_support; ++k)
    if (uniform(0, 2) != 0) v += SeqComb::unit(k, rational(3, 3));
  return Point(std::move(v), rational(3, 3));
}

}  // namespace qpb
