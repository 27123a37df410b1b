#ifndef QPB_EXPR_HPP
#define QPB_EXPR_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qpb/opsym.hpp"
#include "qpb/rational.hpp"
#include "qpb/seq.hpp"

namespace qpb {

/// A point (v, x) of ℓ² × ℝ. v is finitely supported.
struct Point {
  SeqComb v;
  Rational x;

  Point() = default;
  /// Throws DomainError if v is not finitely supported.
  Point(SeqComb v, Rational x);
};

struct ExprNode;

/// Immutable handle to an expression tree. Polynomials in the generators
/// x, ⟨v,w⟩ and ⟨Av,v⟩ with rational coefficients; the class is closed under
/// every derivation used by the engine.
class Expression {
 public:
  Expression();  // Const(0)

  static Expression constant(Rational c);
  static Expression x();
  static Expression lin(SeqComb w);
  static Expression quad(OperatorSymbol a);
  static Expression sum(std::vector<Expression> terms);
  static Expression prod(std::vector<Expression> factors);
  static Expression scale(Rational c, Expression e);
  /// ⟨v, v⟩.
  static Expression rho();

  const ExprNode& node() const { return *node_; }

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator*(const Rational& c, const Expression& e);
  friend Expression operator-(const Expression& e);

 private:
  explicit Expression(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

namespace ast {
struct Const { Rational value; };
struct X {};
/// ⟨v, w⟩
struct Lin { SeqComb w; };
/// ⟨Av, v⟩
struct Quad { OperatorSymbol a; };
struct Sum { std::vector<Expression> terms; };
struct Prod { std::vector<Expression> factors; };
struct Scale { Rational c; Expression e; };
}  // namespace ast

struct ExprNode {
  std::variant<ast::Const, ast::X, ast::Lin, ast::Quad, ast::Sum, ast::Prod, ast::Scale> v;
};

/// Algebraically independent generators the canonical form is built on.
/// Lin atoms carry one basis sequence; QuadDiag carries a Geo or Pow basis
/// (finite diagonals fold into Lin(e_k)²).
struct Atom {
  enum class Kind : std::uint8_t { X, Lin, QuadI, QuadDiag };
  Kind kind = Kind::X;
  SeqBasis basis;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.kind == b.kind && (a.kind == Kind::X || a.kind == Kind::QuadI || a.basis == b.basis);
  }
  friend bool operator<(const Atom& a, const Atom& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Kind::X || a.kind == Kind::QuadI) return false;
    return a.basis < b.basis;
  }
};

/// Sorted by atom, exponents >= 1.
using Monomial = std::vector<std::pair<Atom, unsigned>>;

/// Canonical polynomial form of an Expression.
class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rational& c);
  static Poly atom(const Atom& a);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  unsigned degree() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  void add_term(const Monomial& m, const Rational& c);

 private:
  std::map<Monomial, Rational> terms_;
};

Poly to_poly(const Expression& e);
Expression to_expression(const Poly& p);
/// Flattened, sorted sum of monomials over the atoms.
Expression canonical(const Expression& e);
/// Identity as functions on ℓ² × ℝ (equality of canonical forms).
bool equivalent(const Expression& a, const Expression& b);
bool is_zero(const Expression& e);

/// Exact value at a point, computed directly on the tree.
Rational eval(const Expression& f, const Point& m);
Rational eval(const Poly& f, const Point& m);

/// Canonical text form, re-parseable by parse_expr.
std::string print_expr(const Expression& f);
std::string to_string(const Point& m);

}  // namespace qpb

#endif
