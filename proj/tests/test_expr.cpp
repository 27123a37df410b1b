#include <doctest.h>

#include "qpb/errors.hpp"
#include "qpb/expr.hpp"
#include "qpb/parse.hpp"
#include "qpb/random.hpp"

using namespace qpb;

namespace {

Point pt(const char* text) { return parse_point(text); }

}  // namespace

TEST_CASE("parse: identity literal is rho") {
  const Expression e = parse_expr("q(op(1;;))");
  const auto* quad = std::get_if<ast::Quad>(&e.node().v);
  REQUIRE(quad != nullptr);
  CHECK(quad->a == OperatorSymbol::identity());
  CHECK(equivalent(e, Expression::rho()));
}

TEST_CASE("parse: product of inner product and x") {
  const Expression e = parse_expr("ip(v,[1:1/2,3:-2]) * x");
  const auto* prod = std::get_if<ast::Prod>(&e.node().v);
  REQUIRE(prod != nullptr);
  REQUIRE(prod->factors.size() == 2);
  const auto* lin = std::get_if<ast::Lin>(&prod->factors[0].node().v);
  REQUIRE(lin != nullptr);
  CHECK(lin->w == SeqComb::unit(1, Rational(1, 2)) + SeqComb::unit(3, -2));
  CHECK(std::holds_alternative<ast::X>(prod->factors[1].node().v));
}

TEST_CASE("parse: operator literal with a diagonal part") {
  const Expression e = parse_expr("q(op(2; pow(1,1) ;))");
  const auto* quad = std::get_if<ast::Quad>(&e.node().v);
  REQUIRE(quad != nullptr);
  CHECK(quad->a.lambda() == 2);
  CHECK(quad->a.diag() == SeqComb(SeqVec::power(1, 1)));
  CHECK(quad->a.rank1().empty());
}

TEST_CASE("parse: whitespace is ignored") {
  CHECK(equivalent(parse_expr(" ip ( v , [ 1 : 2 ] ) * x + q( op( 1 ; ; ) ) "),
                   parse_expr("ip(v,[1:2])*x+q(op(1;;))")));
}

TEST_CASE("parse: syntax errors carry a position") {
  auto position_of = [](const char* text) -> std::size_t {
    try {
      parse_expr(text);
    } catch (const SyntaxError& e) {
      return e.position();
    }
    FAIL("expected SyntaxError for " << text);
    return 0;
  };
  CHECK(position_of("x +") == 3);
  CHECK(position_of("ip(v,[1:1)") == 9);
  CHECK(position_of("q(op(1;;)") == 9);
  CHECK(position_of("x y") == 2);
  CHECK(position_of("ip(v,[2:1,1:1])") == 10);
  CHECK(position_of("1/0") == 2);
  CHECK_THROWS_AS(parse_expr("ip(v,[0:1])"), SyntaxError);
  CHECK_THROWS_AS(parse_expr("ip(v,[1:0])"), SyntaxError);
  CHECK_THROWS_AS(parse_point("point(geo(1/2),0)"), SyntaxError);
}

TEST_CASE("parse: geometric ratio must be inside the unit interval") {
  CHECK_THROWS_AS(parse_expr("ip(v,geo(1))"), DomainError);
  CHECK_THROWS_AS(parse_expr("ip(v,geo(-3/2))"), DomainError);
  CHECK_NOTHROW(parse_expr("ip(v,geo(-1/2))"));
}

TEST_CASE("eval examples") {
  CHECK(eval(Expression::rho(), pt("point([1:2],0)")) == 4);

  // Brute force: 4 * (1/2)^2.
  const Rational lin_oracle = Rational(4) * Rational(1, 2) * Rational(1, 2);
  CHECK(lin_oracle == 1);
  CHECK(eval(parse_expr("ip(v,geo(1/2))"), pt("point([2:4],0)")) == lin_oracle);

  // ⟨(2I + diag(1/k)) e1, e1⟩ = 2 + 1/1.
  CHECK(eval(parse_expr("q(op(2;pow(1,1);))"), pt("point([1:1],0)")) == 3);
}

TEST_CASE("print examples") {
  CHECK(print_expr(Expression::rho()) == "q(op(1;;))");
  CHECK(print_expr(Expression::constant(0)) == "0");
  CHECK(print_expr(Expression::scale(2, Expression::x())) == "2*x");
  CHECK(print_expr(parse_expr("0-x")) == "-1*x");
  CHECK(print_expr(parse_expr("x*x - 3/2 + x")) == "-3/2 + x + x*x");
}

TEST_CASE("canonical form identifies equal functions") {
  // ⟨(e1⊗e1)v, v⟩ = v1²
  CHECK(equivalent(parse_expr("q(op(0;;([1:1],[1:1])))"), parse_expr("ip(v,[1:1])*ip(v,[1:1])")));
  CHECK(equivalent(parse_expr("q(op(0;[2:3];))"), parse_expr("3*ip(v,[2:1])*ip(v,[2:1])")));
  CHECK(equivalent(parse_expr("q(op(1;;)) + q(op(2;geo(1/2);))"),
                   parse_expr("q(op(5;geo(1/2);))") - parse_expr("2*q(op(1;;))")));
  CHECK(equivalent(parse_expr("ip(v,[1:1]+[2:1])"), parse_expr("ip(v,[1:1,2:1])")));
  CHECK_FALSE(equivalent(parse_expr("q(op(1;;))"), parse_expr("ip(v,[1:1])*ip(v,[1:1])")));
  CHECK(is_zero(parse_expr("x*ip(v,[1:2]) - 2*ip(v,[1:1])*x")));
}

TEST_CASE("property: print/parse round trip evaluates identically") {
  ExprSampler s(11);
  for (int i = 0; i < 200; ++i) {
    const Expression e = s.expression();
    const std::string text = print_expr(e);
    const Expression back = parse_expr(text);
    CHECK(equivalent(back, e));
    CHECK(print_expr(back) == text);
    for (int k = 0; k < 20; ++k) {
      const Point m = s.point();
      REQUIRE(eval(back, m) == eval(e, m));
    }
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  ExprSampler s(12);
  for (int i = 0; i < 100; ++i) {
    const Expression f = s.expression();
    const Expression g = s.expression();
    const Point m = s.point();
    CHECK(eval(f + g, m) == eval(f, m) + eval(g, m));
    CHECK(eval(f * g, m) == eval(f, m) * eval(g, m));
    // The canonical polynomial evaluates to the same value.
    CHECK(eval(to_poly(f * g), m) == eval(f * g, m));
  }
}

TEST_CASE("property: Lin and Quad vanish at v = 0") {
  ExprSampler s(13);
  for (int i = 0; i < 50; ++i) {
    const Point zero(SeqComb{}, s.rational());
    CHECK(eval(Expression::lin(s.vec()), zero) == 0);
    CHECK(eval(Expression::quad(s.oper()), zero) == 0);
  }
}

TEST_CASE("points must be finitely supported") {
  CHECK_THROWS_AS(Point(SeqVec::geometric(Rational(1, 2)), 0), DomainError);
  CHECK(to_string(pt("point([1:2,3:-1/2],5)")) == "point([1:2,3:-1/2],5)");
}
