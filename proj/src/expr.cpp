#include "qpb/expr.hpp"

#include <sstream>

#include "qpb/errors.hpp"

namespace qpb {

Point::Point(SeqComb v_, Rational x_) : v(std::move(v_)), x(std::move(x_)) {
  if (!v.is_finite()) throw DomainError("point coordinates must be finitely supported");
}

Expression::Expression() : node_(std::make_shared<const ExprNode>(ExprNode{ast::Const{0}})) {}

Expression Expression::constant(Rational c) {
  return Expression(std::make_shared<const ExprNode>(ExprNode{ast::Const{std::move(c)}}));
}
Expression Expression::x() {
  return Expression(std::make_shared<const ExprNode>(ExprNode{ast::X{}}));
}
Expression Expression::lin(SeqComb w) {
  return Expression(std::make_shared<const ExprNode>(ExprNode{ast::Lin{std::move(w)}}));
}
Expression Expression::quad(OperatorSymbol a) {
  return Expression(std::make_shared<const ExprNode>(ExprNode{ast::Quad{std::move(a)}}));
}
Expression Expression::sum(std::vector<Expression> terms) {
  if (terms.empty()) return constant(0);
  if (terms.size() == 1) return terms.front();
  return Expression(std::make_shared<const ExprNode>(ExprNode{ast::Sum{std::move(terms)}}));
}
Expression Expression::prod(std::vector<Expression> factors) {
  if (factors.empty()) return constant(1);
  if (factors.size() == 1) return factors.front();
  return Expression(std::make_shared<const ExprNode>(ExprNode{ast::Prod{std::move(factors)}}));
}
Expression Expression::scale(Rational c, Expression e) {
  return Expression(
      std::make_shared<const ExprNode>(ExprNode{ast::Scale{std::move(c), std::move(e)}}));
}
Expression Expression::rho() { return quad(OperatorSymbol::identity()); }

Expression operator+(const Expression& a, const Expression& b) {
  return Expression::sum({a, b});
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression::sum({a, Expression::scale(-1, b)});
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression::prod({a, b});
}
Expression operator*(const Rational& c, const Expression& e) { return Expression::scale(c, e); }
Expression operator-(const Expression& e) { return Expression::scale(-1, e); }

// ---------------------------------------------------------------- Poly

Poly Poly::constant(const Rational& c) {
  Poly p;
  p.add_term({}, c);
  return p;
}

Poly Poly::atom(const Atom& a) {
  Poly p;
  p.add_term({{a, 1}}, 1);
  return p;
}

unsigned Poly::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) {
    unsigned k = 0;
    for (const auto& [a, e] : m) k += e;
    d = std::max(d, k);
  }
  return d;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      out.push_back(*i++);
    } else if (j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

}  // namespace

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

namespace {

Poly lin_poly(const SeqComb& w) {
  Poly p;
  for (const auto& [b, c] : w.terms()) p.add_term({{Atom{Atom::Kind::Lin, b}, 1}}, c);
  return p;
}

Poly quad_poly(const OperatorSymbol& a) {
  const CanonicalOperator c = a.canonical();
  Poly p;
  if (c.lambda != 0) p.add_term({{Atom{Atom::Kind::QuadI, {}}, 1}}, c.lambda);
  for (const auto& [b, d] : c.diag.terms()) {
    if (b.kind == SeqBasis::Kind::Unit)
      p.add_term({{Atom{Atom::Kind::Lin, b}, 2}}, d);
    else
      p.add_term({{Atom{Atom::Kind::QuadDiag, b}, 1}}, d);
  }
  // ⟨(u⊗w)v, v⟩ = ⟨v,w⟩⟨u,v⟩
  for (const auto& [pair, k] : c.rank1)
    p += k * (lin_poly(SeqComb::basis(pair.first)) * lin_poly(SeqComb::basis(pair.second)));
  return p;
}

Expression atom_expression(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::X:
      return Expression::x();
    case Atom::Kind::Lin:
      return Expression::lin(SeqComb::basis(a.basis));
    case Atom::Kind::QuadI:
      return Expression::rho();
    case Atom::Kind::QuadDiag:
      return Expression::quad(OperatorSymbol(0, SeqComb::basis(a.basis), {}));
  }
  return {};
}

std::string atom_text(const Atom& a) {
  switch (a.kind) {
    case Atom::Kind::X:
      return "x";
    case Atom::Kind::Lin:
      return "ip(v," + to_string(SeqComb::basis(a.basis)) + ")";
    case Atom::Kind::QuadI:
      return "q(op(1;;))";
    case Atom::Kind::QuadDiag:
      return "q(op(0;" + to_string(SeqComb::basis(a.basis)) + ";))";
  }
  return {};
}

Rational atom_value(const Atom& a, const Point& m) {
  switch (a.kind) {
    case Atom::Kind::X:
      return m.x;
    case Atom::Kind::Lin:
      return dot(m.v, SeqComb::basis(a.basis));
    case Atom::Kind::QuadI:
      return dot(m.v, m.v);
    case Atom::Kind::QuadDiag: {
      Rational s = 0;
      for (const auto& [b, c] : m.v.terms()) s += a.basis.entry(b.index) * c * c;
      return s;
    }
  }
  return 0;
}

}  // namespace

Poly to_poly(const Expression& e) {
  return std::visit(
      [](const auto& n) -> Poly {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Const>) {
          return Poly::constant(n.value);
        } else if constexpr (std::is_same_v<T, ast::X>) {
          return Poly::atom(Atom{Atom::Kind::X, {}});
        } else if constexpr (std::is_same_v<T, ast::Lin>) {
          return lin_poly(n.w);
        } else if constexpr (std::is_same_v<T, ast::Quad>) {
          return quad_poly(n.a);
        } else if constexpr (std::is_same_v<T, ast::Sum>) {
          Poly p;
          for (const auto& t : n.terms) p += to_poly(t);
          return p;
        } else if constexpr (std::is_same_v<T, ast::Prod>) {
          Poly p = Poly::constant(1);
          for (const auto& f : n.factors) {
            p = p * to_poly(f);
            if (p.is_zero()) break;
          }
          return p;
        } else {
          return n.c * to_poly(n.e);
        }
      },
      e.node().v);
}

Expression to_expression(const Poly& p) {
  std::vector<Expression> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Expression> factors;
    if (c != 1 || m.empty()) factors.push_back(Expression::constant(c));
    for (const auto& [a, k] : m)
      for (unsigned i = 0; i < k; ++i) factors.push_back(atom_expression(a));
    terms.push_back(Expression::prod(std::move(factors)));
  }
  return Expression::sum(std::move(terms));
}

Expression canonical(const Expression& e) { return to_expression(to_poly(e)); }

bool equivalent(const Expression& a, const Expression& b) { return to_poly(a) == to_poly(b); }

bool is_zero(const Expression& e) { return to_poly(e).is_zero(); }

Rational eval(const Expression& f, const Point& m) {
  return std::visit(
      [&m](const auto& n) -> Rational {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Const>) {
          return n.value;
        } else if constexpr (std::is_same_v<T, ast::X>) {
          return m.x;
        } else if constexpr (std::is_same_v<T, ast::Lin>) {
          return dot(m.v, n.w);
        } else if constexpr (std::is_same_v<T, ast::Quad>) {
          return op_quadratic_form(n.a, m.v);
        } else if constexpr (std::is_same_v<T, ast::Sum>) {
          Rational s = 0;
          for (const auto& t : n.terms) s += eval(t, m);
          return s;
        } else if constexpr (std::is_same_v<T, ast::Prod>) {
          Rational s = 1;
          for (const auto& f : n.factors) s *= eval(f, m);
          return s;
        } else {
          return n.c * eval(n.e, m);
        }
      },
      f.node().v);
}

Rational eval(const Poly& f, const Point& m) {
  std::map<Atom, Rational> cache;
  Rational total = 0;
  for (const auto& [mono, c] : f.terms()) {
    Rational t = c;
    for (const auto& [a, k] : mono) {
      auto it = cache.find(a);
      if (it == cache.end()) it = cache.emplace(a, atom_value(a, m)).first;
      t *= power(it->second, k);
    }
    total += t;
  }
  return total;
}

std::string print_expr(const Expression& f) {
  const Poly p = to_poly(f);
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = c;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      mag = abs(c);
    }
    if (m.empty()) {
      os << to_string(mag);
    } else {
      if (mag == -1) os << "-1*";
      else if (mag != 1) os << to_string(mag) << '*';
      bool first_factor = true;
      for (const auto& [a, k] : m) {
        for (unsigned i = 0; i < k; ++i) {
          if (!first_factor) os << '*';
          os << atom_text(a);
          first_factor = false;
        }
      }
    }
    first = false;
  }
  return os.str();
}

std::string to_string(const Point& m) {
  return "point(" + to_string(m.v) + "," + to_string(m.x) + ")";
}

}  // namespace qpb
