#ifndef QPB_OPSYM_HPP
#define QPB_OPSYM_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qpb/rational.hpp"
#include "qpb/seq.hpp"

namespace qpb {

/// (u ⊗ w)(a) = ⟨a, w⟩ u.
struct RankOne {
  SeqComb u;
  SeqComb w;
};

/// Unique representation of an OperatorSymbol. Rank-one terms are expanded
/// over basis pairs; terms e_k ⊗ e_k are folded into the diagonal.
struct CanonicalOperator {
  Rational lambda;
  SeqComb diag;
  std::map<std::pair<SeqBasis, SeqBasis>, Rational> rank1;

  friend bool operator==(const CanonicalOperator&, const CanonicalOperator&) = default;
};

/// Bounded operator λ·I + D + F on ℓ², D diagonal with entries tending to
/// zero and F of finite rank. Every Hessian of the expression class lives in
/// this subalgebra, which is where the singular functional ℓ is computable.
class OperatorSymbol {
 public:
  OperatorSymbol() = default;
  OperatorSymbol(Rational lambda, SeqComb diag, std::vector<RankOne> rank1);

  static OperatorSymbol identity(const Rational& lambda = Rational(1));
  static OperatorSymbol rank_one(SeqComb u, SeqComb w);

  const Rational& lambda() const { return lambda_; }
  const SeqComb& diag() const { return diag_; }
  const std::vector<RankOne>& rank1() const { return rank1_; }

  CanonicalOperator canonical() const;

  friend bool operator==(const OperatorSymbol& a, const OperatorSymbol& b) {
    return a.canonical() == b.canonical();
  }

 private:
  Rational lambda_;
  SeqComb diag_;
  std::vector<RankOne> rank1_;
};

OperatorSymbol op_add(const OperatorSymbol& a, const OperatorSymbol& b);
OperatorSymbol op_scale(const Rational& c, const OperatorSymbol& a);
OperatorSymbol op_transpose(const OperatorSymbol& a);
/// A + Aᵀ.
OperatorSymbol op_symmetrize(const OperatorSymbol& a);

/// Av for finitely supported v: λv + Dv + Σ⟨v,wᵢ⟩uᵢ.
SeqComb op_apply(const OperatorSymbol& a, const SeqComb& v);

/// ⟨Av, v⟩ for finitely supported v.
Rational op_quadratic_form(const OperatorSymbol& a, const SeqComb& v);

/// The singular functional: ℓ(I) = 1, ℓ(compact) = 0. On λI + D + F this is
/// λ, which is also lim_n ⟨A e_n, e_n⟩.
Rational ell(const OperatorSymbol& a);

/// ⟨A e_n, e_n⟩ = λ + d_n + Σ uᵢ(n) wᵢ(n).
Rational diagonal_entry(const OperatorSymbol& a, std::uint64_t n);

/// ⟨A e_j, e_i⟩.
Rational matrix_entry(const OperatorSymbol& a, std::uint64_t i, std::uint64_t j);

bool is_compact(const OperatorSymbol& a);

/// "op(λ; diag; (u,w),...)" in canonical form.
std::string to_string(const OperatorSymbol& a);

}  // namespace qpb

#endif
