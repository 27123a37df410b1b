#include <doctest.h>

#include "oracle.hpp"
#include "qpb/errors.hpp"
#include "qpb/parse.hpp"
#include "qpb/poisson.hpp"
#include "qpb/random.hpp"

using namespace qpb;

namespace {

const Expression kRho = Expression::rho();
const Expression kX = Expression::x();
const SeqComb kE1 = SeqComb::unit(1);
const SeqComb kE2 = SeqComb::unit(2);

const OperationalField kQueer = OperationalField::queer();
const OperationalField kDx = OperationalField::dx();

BracketSpec queer_bracket() { return BracketSpec(kQueer, kDx); }
BracketSpec kinematic_bracket() {
  return BracketSpec(OperationalField::kinematic(kE1), OperationalField::kinematic(kE2));
}
// x·δ_ℓ + ∂/∂v_1 with ∂/∂x. These do not commute, but the bracket formula and
// Π_m are still defined pointwise.
BracketSpec mixed_bracket() {
  return BracketSpec::unchecked(OperationalField::queer(kX) + OperationalField::kinematic(kE1),
                                kDx);
}

Expression c(long n, long d = 1) { return Expression::constant(make_rational(n, d)); }

}  // namespace

TEST_CASE("apply_field examples") {
  CHECK(equivalent(apply_field(kQueer, kRho), c(2)));
  CHECK(equivalent(apply_field(kDx, kX * kRho), kRho));
  const Expression lin = Expression::lin(SeqVec::geometric(Rational(1, 2)));
  CHECK(equivalent(apply_field(OperationalField::kinematic(kE1), lin), c(1, 2)));
  CHECK(oracle::d1(lin, Point(SeqComb{}, 0), 1) == Rational(1, 2));
}

TEST_CASE("commute_check examples") {
  CHECK(commute_check(kQueer, kDx, 8));
  const OperationalField d = OperationalField::kinematic(kE1, kX) + kQueer;
  CHECK(commute_check(d, d, 8));
  CHECK_FALSE(commute_check(OperationalField::queer(kX), kDx, 8));
  CHECK(commute_check(OperationalField::kinematic(kE1), OperationalField::kinematic(kE2), 8));
}

TEST_CASE("bracket examples") {
  const BracketSpec b = queer_bracket();
  CHECK(equivalent(bracket(b, -kX, kRho), c(2)));
  ExprSampler s(41);
  for (int i = 0; i < 20; ++i) {
    const Expression f = s.expression();
    CHECK(is_zero(bracket(b, f, f)));
    CHECK(is_zero(bracket(b, kX, Expression::lin(s.vec()))));
  }
  CHECK_THROWS_AS(bracket(BracketSpec(OperationalField::queer(kX), kDx), kX, kRho),
                  NonCommutingFields);
}

TEST_CASE("hamiltonian_field examples") {
  const BracketSpec b = queer_bracket();
  CHECK(hamiltonian_field(b, -kX) == kQueer);
  CHECK(hamiltonian_field(b, c(7)).is_zero());
  CHECK(hamiltonian_field(b, kRho) == OperationalField::dx(c(2)));
  CHECK(hamiltonian_field(kinematic_bracket(), c(-3, 2)).is_zero());
}

TEST_CASE("property: X_h acts as the bracket with h") {
  ExprSampler s(42);
  for (const BracketSpec& b : {queer_bracket(), kinematic_bracket()}) {
    for (int i = 0; i < 40; ++i) {
      const Expression h = s.expression(), f = s.expression();
      CHECK(equivalent(apply_field(hamiltonian_field(b, h), f), bracket(b, h, f)));
    }
  }
}

TEST_CASE("check_axioms examples") {
  CHECK(check_axioms(queer_bracket(), 30, 1).ok());
  CHECK(check_axioms(BracketSpec(kDx, kDx), 10, 2).ok());
  const AxiomReport kin = check_axioms(kinematic_bracket(), 30, 3);
  CHECK(kin.ok());
  REQUIRE(kin.results.size() == 3);
  CHECK(kin.results[0].axiom == "skew");
  CHECK(kin.results[1].axiom == "jacobi");
  CHECK(kin.results[2].axiom == "leibniz");
  CHECK_NOTHROW(kin.raise_if_failed());
}

TEST_CASE("check_axioms catches Jacobi failures for non-commuting fields") {
  // [∂/∂x, δ_ℓ + x·∂/∂v_1] = ∂/∂v_1 lies outside the span of the pair.
  const AxiomReport r = check_axioms(
      BracketSpec::unchecked(kQueer + OperationalField::kinematic(kE1, kX), kDx), 40, 4);
  CHECK_FALSE(r.ok());
  CHECK(r.results[0].failures == 0);  // skew holds for any pair
  CHECK(r.results[2].failures == 0);  // so does Leibniz
  CHECK(r.results[1].failures > 0);
  CHECK(r.results[1].counterexample.has_value());
  CHECK_THROWS_AS(r.raise_if_failed(), AxiomViolation);
}

TEST_CASE("order_at examples") {
  ExprSampler s(43);
  for (int i = 0; i < 10; ++i) {
    const Point m = s.point();
    CHECK(order_at(kQueer, m) == Order::Queer);
    CHECK(order_at(kDx, m) == Order::Kinematic);
  }
  const OperationalField d = OperationalField::queer(kX) + kDx;
  CHECK(order_at(d, parse_point("point([1:1],0)")) == Order::Kinematic);
  CHECK(order_at(d, parse_point("point([1:1],1)")) == Order::Queer);
  CHECK(to_string(Order::Queer) == "Queer");
  CHECK(to_string(Order::Kinematic) == "Kinematic");
}

TEST_CASE("tensor_at examples") {
  CHECK_THROWS_AS(tensor_at(queer_bracket(), Point(SeqComb{}, 0)), QueerAtPoint);

  ExprSampler s(44);
  for (int i = 0; i < 5; ++i) {
    const TensorAtPoint t = tensor_at(kinematic_bracket(), s.point());
    REQUIRE(t.terms.size() == 1);
    CHECK(to_string(t) == "1*([1:1] ^ [2:1])");
  }

  const BracketSpec mixed = mixed_bracket();
  const Point m0 = parse_point("point([1:2],0)");
  const TensorAtPoint t = tensor_at(mixed, m0);
  CHECK(to_string(t) == "1*([1:1] ^ dx)");
  CHECK_THROWS_AS(tensor_at(mixed, parse_point("point([1:2],1)")), QueerAtPoint);

  // Dependent fields: δ_ℓ paired with itself has the zero tensor.
  CHECK(tensor_at(BracketSpec(kQueer, kQueer), m0).terms.empty());
}

TEST_CASE("property: Π_m reproduces bracket values") {
  ExprSampler s(45);
  const BracketSpec mixed = mixed_bracket();
  for (int i = 0; i < 50; ++i) {
    Point m = s.point();
    m = Point(m.v, 0);
    const TensorAtPoint t = tensor_at(mixed, m);
    const Expression f = s.expression(), g = s.expression();
    CHECK(eval(bracket(mixed, f, g), m) == t(gradient(f, m), gradient(g, m)));
    // Skew-symmetry of the tensor itself.
    CHECK(t(gradient(f, m), gradient(g, m)) == -t(gradient(g, m), gradient(f, m)));
  }
  const BracketSpec kin = kinematic_bracket();
  for (int i = 0; i < 50; ++i) {
    const Point m = s.point();
    const Expression f = s.expression(), g = s.expression();
    CHECK(eval(bracket(kin, f, g), m) == tensor_at(kin, m)(gradient(f, m), gradient(g, m)));
  }
}

TEST_CASE("property: queerness criterion over a coefficient family") {
  // Fields a·δ_ℓ + ∂/∂v_1 paired with ∂/∂x: queer at m iff a(m) ≠ 0.
  ExprSampler s(46);
  for (int i = 0; i < 30; ++i) {
    const Expression a = s.monomial(1);
    const BracketSpec b =
        BracketSpec::unchecked(OperationalField::queer(a) + OperationalField::kinematic(kE1), kDx);
    const Point m = s.point();
    if (eval(a, m) != 0) {
      CHECK_THROWS_AS(tensor_at(b, m), QueerAtPoint);
      CHECK_NOTHROW(queer_witness(b, m));
    } else {
      CHECK_NOTHROW(tensor_at(b, m));
    }
  }
}

TEST_CASE("queer_witness examples") {
  const BracketSpec b = queer_bracket();
  const Witness w0 = queer_witness(b, Point(SeqComb{}, 0));
  CHECK(equivalent(w0.h, -kX));
  CHECK(equivalent(w0.f, kRho));
  CHECK(w0.value == 2);

  const Point m1(kE1, 0);
  const Witness w1 = queer_witness(b, m1);
  CHECK(equivalent(w1.h, -kX));
  CHECK(equivalent(w1.f, kRho - c(2) * Expression::lin(kE1) + c(1)));
  CHECK(w1.value == 2);
  CHECK(gradient(w1.f, m1) == DualVector{});
  CHECK(eval(bracket(b, w1.h, w1.f), m1) == 2);

  CHECK_THROWS_AS(queer_witness(kinematic_bracket(), m1), WitnessNotFound);
}

TEST_CASE("property: witnesses have vanishing differential") {
  ExprSampler s(47);
  const BracketSpec b = queer_bracket();
  for (int i = 0; i < 20; ++i) {
    const Point m = s.point();
    const Witness w = queer_witness(b, m);
    CHECK(gradient(w.f, m) == DualVector{});
    CHECK(w.value != 0);
    CHECK(eval(bracket(b, w.h, w.f), m) == w.value);
  }
}

TEST_CASE("sharp examples") {
  const TensorAtPoint e12 = tensor_at(kinematic_bracket(), Point(SeqComb{}, 0));
  CHECK(sharp(e12, DualVector{kE1, 0}) == KinematicVector{kE2, 0});
  CHECK(sharp(e12, DualVector{SeqComb::unit(3), 0}) == KinematicVector{});

  const TensorAtPoint e1dx = tensor_at(mixed_bracket(), Point(SeqComb{}, 0));
  CHECK(sharp(e1dx, DualVector{SeqComb::unit(1, 2), 3}) == KinematicVector{SeqComb::unit(1, -3), 2});
  CHECK(to_string(KinematicVector{SeqComb::unit(1, -3), 2}) == "kvec([1:-3],2)");
}

TEST_CASE("property: sharp agrees with the tensor") {
  ExprSampler s(48);
  const TensorAtPoint t = tensor_at(mixed_bracket(), Point(SeqComb{}, 0));
  for (int i = 0; i < 30; ++i) {
    const DualVector mu{s.finite_vec(), s.rational()}, nu{s.finite_vec(), s.rational()};
    const KinematicVector k = sharp(t, mu);
    CHECK(dot(nu.vpart, k.vpart) + nu.xpart * k.xpart == t(mu, nu));
  }
}

TEST_CASE("extension obstruction") {
  const ObstructionResult r = extension_obstruction_demo();
  CHECK(r.lhs == 2);
  CHECK(r.rhs == 0);
  ExprSampler s(49);
  for (int i = 0; i < 10; ++i) {
    const ObstructionResult ri = extension_obstruction_demo(s.finite_vec(), s.finite_vec());
    CHECK(ri.lhs == 2);
    CHECK(ri.rhs == 0);
  }
}

TEST_CASE("property: locality at a point") {
  ExprSampler s(50);
  const BracketSpec b = queer_bracket();
  for (int i = 0; i < 30; ++i) {
    const Point m = s.point();
    const Expression f = s.expression(), g = s.expression();
    // (x - x_m)^3 vanishes at m together with its first and second jets.
    const Expression shift = kX - Expression::constant(m.x);
    const Expression k = shift * shift * shift;
    CHECK(eval(bracket(b, f + k, g), m) == eval(bracket(b, f, g), m));
  }
}

TEST_CASE("field text round trip") {
  const OperationalField d = parse_field("field(kin=x*[1:1]; kin=[2:1]; dx=2; queer=x)");
  CHECK(d == OperationalField::kinematic(kE1, kX) + OperationalField::kinematic(kE2) +
                 OperationalField::dx(c(2)) + OperationalField::queer(kX));
  CHECK(parse_field(to_string(d)) == d);
  CHECK(parse_field("field()").is_zero());
  CHECK(to_string(OperationalField::dx(c(2))) == "field(dx=2)");
  CHECK_THROWS_AS(parse_field("field(kin=geo(1/2))"), SyntaxError);
  CHECK_THROWS_AS(parse_field("field(spin=1)"), SyntaxError);
}
