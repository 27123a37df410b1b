#include "qpb/jet.hpp"

#include <variant>

#include "qpb/errors.hpp"

namespace qpb {

namespace {

struct Jet {
  Rational value;
  SeqComb gv;
  Rational gx;
  OperatorSymbol vv;
  SeqComb vx;
  Rational xx;
};

Jet jet_constant(const Rational& c) { return Jet{c, {}, 0, {}, {}, 0}; }

Jet jet_scale(const Rational& c, const Jet& a) {
  return Jet{c * a.value, c * a.gv, c * a.gx, op_scale(c, a.vv), c * a.vx, c * a.xx};
}

Jet jet_add(const Jet& a, const Jet& b) {
  return Jet{a.value + b.value, a.gv + b.gv,        a.gx + b.gx,
             op_add(a.vv, b.vv), a.vx + b.vx, a.xx + b.xx};
}

// (ab)″ = a b″ + b a″ + a′⊗b′ + b′⊗a′
Jet jet_mul(const Jet& a, const Jet& b, bool second_order) {
  Jet out;
  out.value = a.value * b.value;
  out.gv = a.value * b.gv + b.value * a.gv;
  out.gx = a.value * b.gx + b.value * a.gx;
  if (!second_order) return out;
  out.vv = op_add(op_scale(a.value, b.vv), op_scale(b.value, a.vv));
  out.vv = op_add(out.vv, OperatorSymbol::rank_one(a.gv, b.gv));
  out.vv = op_add(out.vv, OperatorSymbol::rank_one(b.gv, a.gv));
  out.vx = a.value * b.vx + b.value * a.vx + b.gx * a.gv + a.gx * b.gv;
  out.xx = a.value * b.xx + b.value * a.xx + 2 * a.gx * b.gx;
  return out;
}

Jet jet(const Expression& f, const Point& m, bool second_order) {
  return std::visit(
      [&](const auto& n) -> Jet {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Const>) {
          return jet_constant(n.value);
        } else if constexpr (std::is_same_v<T, ast::X>) {
          Jet j = jet_constant(m.x);
          j.gx = 1;
          return j;
        } else if constexpr (std::is_same_v<T, ast::Lin>) {
          Jet j = jet_constant(dot(m.v, n.w));
          j.gv = n.w;
          return j;
        } else if constexpr (std::is_same_v<T, ast::Quad>) {
          const OperatorSymbol sym = op_symmetrize(n.a);
          Jet j = jet_constant(op_quadratic_form(n.a, m.v));
          j.gv = op_apply(sym, m.v);
          if (second_order) j.vv = sym;
          return j;
        } else if constexpr (std::is_same_v<T, ast::Sum>) {
          Jet j = jet_constant(0);
          for (const auto& t : n.terms) j = jet_add(j, jet(t, m, second_order));
          return j;
        } else if constexpr (std::is_same_v<T, ast::Prod>) {
          Jet j = jet_constant(1);
          for (const auto& t : n.factors) j = jet_mul(j, jet(t, m, second_order), second_order);
          return j;
        } else {
          return jet_scale(n.c, jet(n.e, m, second_order));
        }
      },
      f.node().v);
}

// Leibniz expansion shared by the three derivations.
template <class Leaf>
Expression derive(const Expression& f, const Leaf& leaf) {
  return std::visit(
      [&](const auto& n) -> Expression {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ast::Sum>) {
          std::vector<Expression> terms;
          terms.reserve(n.terms.size());
          for (const auto& t : n.terms) terms.push_back(derive(t, leaf));
          return Expression::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, ast::Prod>) {
          std::vector<Expression> terms;
          for (std::size_t i = 0; i < n.factors.size(); ++i) {
            Expression d = derive(n.factors[i], leaf);
            if (is_zero(d)) continue;
            std::vector<Expression> factors = n.factors;
            factors[i] = d;
            terms.push_back(Expression::prod(std::move(factors)));
          }
          return Expression::sum(std::move(terms));
        } else if constexpr (std::is_same_v<T, ast::Scale>) {
          return Expression::scale(n.c, derive(n.e, leaf));
        } else {
          return leaf(n);
        }
      },
      f.node().v);
}

}  // namespace

DualVector gradient(const Expression& f, const Point& m) {
  Jet j = jet(f, m, false);
  return DualVector{std::move(j.gv), std::move(j.gx)};
}

HessianSymbol hessian(const Expression& f, const Point& m) {
  Jet j = jet(f, m, true);
  return HessianSymbol{std::move(j.vv), std::move(j.vx), std::move(j.xx)};
}

Expression delta_ell(const Expression& f) {
  return derive(f, [](const auto& n) -> Expression {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, ast::Quad>) {
      return Expression::constant(ell(op_symmetrize(n.a)));
    } else {
      return Expression::constant(0);
    }
  });
}

Expression ddx(const Expression& f) {
  return derive(f, [](const auto& n) -> Expression {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, ast::X>) {
      return Expression::constant(1);
    } else {
      return Expression::constant(0);
    }
  });
}

Expression directional(const Expression& f, const SeqComb& u) {
  if (!u.is_finite()) throw DomainError("kinematic directions must be finitely supported");
  return derive(f, [&u](const auto& n) -> Expression {
    using T = std::decay_t<decltype(n)>;
    if constexpr (std::is_same_v<T, ast::Lin>) {
      return Expression::constant(dot(u, n.w));
    } else if constexpr (std::is_same_v<T, ast::Quad>) {
      // D_u ⟨Av,v⟩ = ⟨Au,v⟩ + ⟨Av,u⟩ = ⟨v, (A + Aᵀ)u⟩
      SeqComb w = op_apply(op_symmetrize(n.a), u);
      if (w.is_zero()) return Expression::constant(0);
      return Expression::lin(std::move(w));
    } else {
      return Expression::constant(0);
    }
  });
}

std::string to_string(const DualVector& d) {
  return "dual(" + to_string(d.vpart) + "," + to_string(d.xpart) + ")";
}

}  // namespace qpb
