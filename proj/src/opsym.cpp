#include "qpb/opsym.hpp"

#include <sstream>

#include "qpb/errors.hpp"

namespace qpb {

OperatorSymbol::OperatorSymbol(Rational lambda, SeqComb diag, std::vector<RankOne> rank1)
    : lambda_(std::move(lambda)), diag_(std::move(diag)) {
  for (auto& r : rank1)
    if (!r.u.is_zero() && !r.w.is_zero()) rank1_.push_back(std::move(r));
}

OperatorSymbol OperatorSymbol::identity(const Rational& lambda) {
  return OperatorSymbol(lambda, {}, {});
}

OperatorSymbol OperatorSymbol::rank_one(SeqComb u, SeqComb w) {
  return OperatorSymbol(0, {}, {RankOne{std::move(u), std::move(w)}});
}

CanonicalOperator OperatorSymbol::canonical() const {
  CanonicalOperator c{lambda_, diag_, {}};
  for (const auto& r : rank1_) {
    for (const auto& [bu, cu] : r.u.terms()) {
      for (const auto& [bw, cw] : r.w.terms()) {
        if (bu.kind == SeqBasis::Kind::Unit && bu == bw) {
          c.diag.add(bu, cu * cw);
          continue;
        }
        auto [it, inserted] = c.rank1.try_emplace({bu, bw}, cu * cw);
        if (!inserted) {
          it->second += cu * cw;
          if (it->second == 0) c.rank1.erase(it);
        }
      }
    }
  }
  return c;
}

OperatorSymbol op_add(const OperatorSymbol& a, const OperatorSymbol& b) {
  std::vector<RankOne> r = a.rank1();
  r.insert(r.end(), b.rank1().begin(), b.rank1().end());
  return OperatorSymbol(a.lambda() + b.lambda(), a.diag() + b.diag(), std::move(r));
}

OperatorSymbol op_scale(const Rational& c, const OperatorSymbol& a) {
  if (c == 0) return {};
  std::vector<RankOne> r;
  r.reserve(a.rank1().size());
  for (const auto& t : a.rank1()) r.push_back({c * t.u, t.w});
  return OperatorSymbol(c * a.lambda(), c * a.diag(), std::move(r));
}

OperatorSymbol op_transpose(const OperatorSymbol& a) {
  std::vector<RankOne> r;
  r.reserve(a.rank1().size());
  for (const auto& t : a.rank1()) r.push_back({t.w, t.u});
  return OperatorSymbol(a.lambda(), a.diag(), std::move(r));
}

OperatorSymbol op_symmetrize(const OperatorSymbol& a) {
  return op_add(a, op_transpose(a));
}

SeqComb op_apply(const OperatorSymbol& a, const SeqComb& v) {
  if (!v.is_finite()) throw DomainError("operator applied to a non-finite vector");
  SeqComb out = a.lambda() * v;
  out += a.diag().pointwise(v);
  for (const auto& t : a.rank1()) out += dot(v, t.w) * t.u;
  return out;
}

Rational op_quadratic_form(const OperatorSymbol& a, const SeqComb& v) {
  return dot(op_apply(a, v), v);
}

Rational ell(const OperatorSymbol& a) { return a.lambda(); }

Rational diagonal_entry(const OperatorSymbol& a, std::uint64_t n) {
  if (n == 0) throw DomainError("diagonal index starts at 1");
  Rational s = a.lambda() + a.diag().entry(n);
  for (const auto& t : a.rank1()) s += t.u.entry(n) * t.w.entry(n);
  return s;
}

Rational matrix_entry(const OperatorSymbol& a, std::uint64_t i, std::uint64_t j) {
  Rational s = 0;
  if (i == j) s = a.lambda() + a.diag().entry(i);
  for (const auto& t : a.rank1()) s += t.u.entry(i) * t.w.entry(j);
  return s;
}

bool is_compact(const OperatorSymbol& a) { return a.lambda() == 0; }

std::string to_string(const OperatorSymbol& a) {
  const CanonicalOperator c = a.canonical();
  std::ostringstream os;
  os << "op(" << to_string(c.lambda) << ';';
  if (!c.diag.is_zero()) os << to_string(c.diag);
  os << ';';
  // Group by left factor so each printed pair is (basis, combination).
  std::map<SeqBasis, SeqComb> grouped;
  for (const auto& [pair, coeff] : c.rank1) grouped[pair.first].add(pair.second, coeff);
  bool first = true;
  for (const auto& [left, right] : grouped) {
    if (!first) os << ',';
    os << '(' << to_string(SeqComb::basis(left)) << ',' << to_string(right) << ')';
    first = false;
  }
  os << ')';
  return os.str();
}

}  // namespace qpb
