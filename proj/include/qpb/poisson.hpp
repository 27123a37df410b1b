#ifndef QPB_POISSON_HPP
#define QPB_POISSON_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qpb/expr.hpp"
#include "qpb/jet.hpp"

namespace qpb {

/// Operational vector field Σ_k a_k ∂/∂v_k + b ∂/∂x + c δ_ℓ with expression
/// coefficients. The kinematic part is stored per coordinate direction e_k,
/// which makes the representation canonical.
class OperationalField {
 public:
  OperationalField() = default;

  static OperationalField queer(const Expression& coeff = Expression::constant(1));
  static OperationalField dx(const Expression& coeff = Expression::constant(1));
  /// coeff · (derivative along `direction`); direction must be finite.
  static OperationalField kinematic(const SeqComb& direction,
                                    const Expression& coeff = Expression::constant(1));

  const std::map<std::uint64_t, Expression>& kin() const { return kin_; }
  const Expression& dx_coeff() const { return dx_; }
  const Expression& queer_coeff() const { return queer_; }
  bool is_zero() const;

  /// Largest coordinate index touched by directions or coefficients.
  std::uint64_t max_index() const;

  OperationalField& operator+=(const OperationalField& o);
  friend OperationalField operator+(OperationalField a, const OperationalField& b) {
    return a += b;
  }
  friend OperationalField operator-(const OperationalField& a, const OperationalField& b);
  /// Pointwise product with a function.
  friend OperationalField operator*(const Expression& c, const OperationalField& d);
  friend bool operator==(const OperationalField& a, const OperationalField& b);

 private:
  void normalize();
  std::map<std::uint64_t, Expression> kin_;
  Expression dx_;
  Expression queer_;
};

Expression apply_field(const OperationalField& d, const Expression& f);

/// field(kin=<expr>*<vec>; dx=<expr>; queer=<expr>), every part optional and
/// kin repeatable. A bare kin=<vec> means coefficient 1.
OperationalField parse_field(std::string_view text);
std::string to_string(const OperationalField& d);

/// Exact check that d1∘d2 = d2∘d1 on the generators touched by either field,
/// plus `samples` random expressions.
bool commute_check(const OperationalField& d1, const OperationalField& d2, unsigned samples,
                   std::uint64_t seed = 0);

/// {f,g} = d1(f)·d2(g) − d2(f)·d1(g) for commuting d1, d2.
class BracketSpec {
 public:
  BracketSpec(OperationalField d1, OperationalField d2, unsigned samples = 8);

  /// Skips commute_check; the caller vouches for commutativity. Used to
  /// probe what the axiom checker reports when that precondition is false.
  static BracketSpec unchecked(OperationalField d1, OperationalField d2);

  const OperationalField& d1() const { return d1_; }
  const OperationalField& d2() const { return d2_; }
  bool commuting() const { return commuting_; }

 private:
  BracketSpec(OperationalField d1, OperationalField d2, bool commuting)
      : d1_(std::move(d1)), d2_(std::move(d2)), commuting_(commuting) {}

  OperationalField d1_;
  OperationalField d2_;
  bool commuting_;
};

/// Throws NonCommutingFields when the bracket's fields failed commute_check.
Expression bracket(const BracketSpec& b, const Expression& f, const Expression& g);

/// X_h = {h, ·} = d1(h)·d2 − d2(h)·d1.
OperationalField hamiltonian_field(const BracketSpec& b, const Expression& h);

struct AxiomResult {
  std::string axiom;
  unsigned trials = 0;
  unsigned failures = 0;
  /// First failing (f, g, h, point), if any.
  std::optional<std::string> counterexample;
};

struct AxiomReport {
  std::vector<AxiomResult> results;  // skew, jacobi, leibniz
  bool ok() const;
  /// Throws AxiomViolation carrying the first counterexample.
  void raise_if_failed() const;
};

/// Skew-symmetry, Jacobi and Leibniz on `trials` random triples, each checked
/// as an exact identity of canonical forms and at 5 random points.
AxiomReport check_axioms(const BracketSpec& b, unsigned trials, std::uint64_t seed);

enum class Order { Kinematic, Order1, Queer };
std::string to_string(Order o);

/// Queer iff the δ_ℓ coefficient is nonzero at m. Order-one vectors on
/// ℓ² × ℝ are kinematic because ℓ² is reflexive, so Order1 is not produced.
Order order_at(const OperationalField& d, const Point& m);

struct DxDirection {
  friend bool operator==(const DxDirection&, const DxDirection&) = default;
};
/// A kinematic direction: a vector in ℓ² or the unit ∂/∂x.
using Direction = std::variant<SeqComb, DxDirection>;

struct TensorTerm {
  Direction first;
  Direction second;
  Rational coeff;
};

/// Π_m = Σ coeff · first ∧ second.
struct TensorAtPoint {
  std::vector<TensorTerm> terms;
  Rational operator()(const DualVector& mu, const DualVector& nu) const;
};

/// Pairing of a differential with a kinematic direction.
Rational pairing(const DualVector& mu, const Direction& d);

/// Π_m for brackets of order one at m. Throws QueerAtPoint when the fields
/// are independent at m and one of them is queer there.
TensorAtPoint tensor_at(const BracketSpec& b, const Point& m);
std::string to_string(const TensorAtPoint& t);

struct Witness {
  Expression h;
  Expression f;
  Rational value;
};

/// Searches for (h, f) with f′_m = 0 and {h, f}(m) ≠ 0, which no order-one
/// bracket can produce. Throws WitnessNotFound if the family is exhausted.
Witness queer_witness(const BracketSpec& b, const Point& m);

struct KinematicVector {
  SeqComb vpart;
  Rational xpart;
  friend bool operator==(const KinematicVector&, const KinematicVector&) = default;
};

/// ♯μ = Π_m(μ, ·).
KinematicVector sharp(const TensorAtPoint& t, const DualVector& mu);
std::string to_string(const KinematicVector& k);

struct ObstructionResult {
  Rational lhs;
  Rational rhs;
};

/// Both sides of D(B(f,g)) = B(Df, g) + B(f, Dg) at v = 0 for f(v) = ⟨v,·⟩,
/// g = id and B the duality pairing. Any candidate values of Df(0), Dg(0)
/// may be supplied; the right side pairs them with v = 0.
ObstructionResult extension_obstruction_demo(const SeqComb& df_at_zero = SeqComb::unit(1),
                                             const SeqComb& dg_at_zero = SeqComb::unit(2));

}  // namespace qpb

#endif
