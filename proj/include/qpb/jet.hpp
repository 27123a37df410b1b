#ifndef QPB_JET_HPP
#define QPB_JET_HPP

#include <string>

#include "qpb/expr.hpp"
#include "qpb/opsym.hpp"
#include "qpb/seq.hpp"

namespace qpb {

/// f′_m on ℓ² × ℝ: the v-differential by its Riesz representative, plus ∂f/∂x.
struct DualVector {
  SeqComb vpart;
  Rational xpart;

  friend bool operator==(const DualVector&, const DualVector&) = default;
};

/// f″_m in blocks. `vv` is symmetric.
struct HessianSymbol {
  OperatorSymbol vv;
  SeqComb vx;
  Rational xx;
};

DualVector gradient(const Expression& f, const Point& m);
HessianSymbol hessian(const Expression& f, const Point& m);

/// m ↦ ℓ(f″_m), by structural recursion. Constants, x and ⟨v,w⟩ go to 0,
/// ⟨Av,v⟩ goes to ℓ(A + Aᵀ), and products obey the Leibniz rule because ℓ
/// kills the rank-one cross terms of the product's Hessian.
Expression delta_ell(const Expression& f);

Expression ddx(const Expression& f);

/// Derivative along a constant, finitely supported direction u.
Expression directional(const Expression& f, const SeqComb& u);

std::string to_string(const DualVector& d);

}  // namespace qpb

#endif
