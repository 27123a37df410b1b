#include "qpb/poisson.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "qpb/errors.hpp"
#include "qpb/parse.hpp"
#include "qpb/random.hpp"

namespace qpb {

namespace {

std::uint64_t max_unit_index(const Expression& e) {
  std::uint64_t m = 0;
  const Poly p = to_poly(e);
  for (const auto& [mono, c] : p.terms())
    for (const auto& [a, k] : mono)
      if (a.kind == Atom::Kind::Lin && a.basis.kind == SeqBasis::Kind::Unit)
        m = std::max(m, a.basis.index);
  return m;
}

Expression times(const Expression& a, const Expression& b) { return canonical(a * b); }

}  // namespace

// ------------------------------------------------------------ fields

OperationalField OperationalField::queer(const Expression& coeff) {
  OperationalField d;
  d.queer_ = coeff;
  d.normalize();
  return d;
}

OperationalField OperationalField::dx(const Expression& coeff) {
  OperationalField d;
  d.dx_ = coeff;
  d.normalize();
  return d;
}

OperationalField OperationalField::kinematic(const SeqComb& direction, const Expression& coeff) {
  if (!direction.is_finite())
    throw DomainError("kinematic directions must be finitely supported");
  OperationalField d;
  for (const auto& [b, c] : direction.terms()) d.kin_[b.index] = c * coeff;
  d.normalize();
  return d;
}

void OperationalField::normalize() {
  for (auto it = kin_.begin(); it != kin_.end();) {
    it->second = canonical(it->second);
    if (qpb::is_zero(it->second))
      it = kin_.erase(it);
    else
      ++it;
  }
  dx_ = canonical(dx_);
  queer_ = canonical(queer_);
}

bool OperationalField::is_zero() const {
  return kin_.empty() && qpb::is_zero(dx_) && qpb::is_zero(queer_);
}

std::uint64_t OperationalField::max_index() const {
  std::uint64_t m = std::max(max_unit_index(dx_), max_unit_index(queer_));
  for (const auto& [k, c] : kin_) m = std::max({m, k, max_unit_index(c)});
  return m;
}

OperationalField& OperationalField::operator+=(const OperationalField& o) {
  for (const auto& [k, c] : o.kin_) {
    auto it = kin_.find(k);
    if (it == kin_.end())
      kin_.emplace(k, c);
    else
      it->second = it->second + c;
  }
  dx_ = dx_ + o.dx_;
  queer_ = queer_ + o.queer_;
  normalize();
  return *this;
}

OperationalField operator-(const OperationalField& a, const OperationalField& b) {
  return a + Expression::constant(-1) * b;
}

OperationalField operator*(const Expression& c, const OperationalField& d) {
  OperationalField out = d;
  for (auto& [k, coeff] : out.kin_) coeff = times(c, coeff);
  out.dx_ = times(c, d.dx_);
  out.queer_ = times(c, d.queer_);
  out.normalize();
  return out;
}

bool operator==(const OperationalField& a, const OperationalField& b) {
  if (a.kin_.size() != b.kin_.size()) return false;
  for (const auto& [k, c] : a.kin_) {
    auto it = b.kin_.find(k);
    if (it == b.kin_.end() || !equivalent(c, it->second)) return false;
  }
  return equivalent(a.dx_, b.dx_) && equivalent(a.queer_, b.queer_);
}

Expression apply_field(const OperationalField& d, const Expression& f) {
  std::vector<Expression> parts;
  for (const auto& [k, c] : d.kin()) parts.push_back(c * directional(f, SeqComb::unit(k)));
  if (!is_zero(d.dx_coeff())) parts.push_back(d.dx_coeff() * ddx(f));
  if (!is_zero(d.queer_coeff())) parts.push_back(d.queer_coeff() * delta_ell(f));
  return canonical(Expression::sum(std::move(parts)));
}

OperationalField parse_field(std::string_view text) {
  Parser p(text);
  p.expect("field");
  p.expect("(");
  OperationalField d;
  if (!p.accept(")")) {
    do {
      if (p.accept("kin")) {
        p.expect("=");
        Expression coeff = Expression::constant(1);
        if (!p.at_vec_literal()) {
          coeff = p.expr(true);
          p.expect("*");
        }
        std::size_t at = p.position();
        SeqComb dir = p.vec();
        if (!dir.is_finite())
          throw SyntaxError(at, "kinematic direction must be a finite-support vector");
        d += OperationalField::kinematic(dir, coeff);
      } else if (p.accept("dx")) {
        p.expect("=");
        d += OperationalField::dx(p.expr());
      } else if (p.accept("queer")) {
        p.expect("=");
        d += OperationalField::queer(p.expr());
      } else {
        p.fail("expected kin=, dx= or queer=");
      }
    } while (p.accept(";"));
    p.expect(")");
  }
  p.finish();
  return d;
}

std::string to_string(const OperationalField& d) {
  auto coeff_text = [](const Expression& c) {
    std::string s = print_expr(c);
    return to_poly(c).terms().size() > 1 ? "(" + s + ")" : s;
  };
  std::vector<std::string> parts;
  for (const auto& [k, c] : d.kin())
    parts.push_back("kin=" + coeff_text(c) + "*" + to_string(SeqComb::unit(k)));
  if (!is_zero(d.dx_coeff())) parts.push_back("dx=" + print_expr(d.dx_coeff()));
  if (!is_zero(d.queer_coeff())) parts.push_back("queer=" + print_expr(d.queer_coeff()));
  std::string out = "field(";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  return out + ")";
}

// ------------------------------------------------------------ commutation

bool commute_check(const OperationalField& d1, const OperationalField& d2, unsigned samples,
                   std::uint64_t seed) {
  const std::uint64_t top = std::max(d1.max_index(), d2.max_index()) + 1;
  std::vector<Expression> probes{Expression::x(), Expression::rho(),
                                 Expression::lin(SeqVec::geometric(make_rational(1, 2))),
                                 Expression::lin(SeqVec::geometric(make_rational(-1, 3))),
                                 Expression::lin(SeqVec::power(1, 1)),
                                 Expression::quad(OperatorSymbol(0, SeqVec::geometric(make_rational(1, 2)), {})),
                                 Expression::quad(OperatorSymbol(0, SeqVec::power(1, 2), {}))};
  for (std::uint64_t k = 1; k <= top; ++k) probes.push_back(Expression::lin(SeqComb::unit(k)));
  ExprSampler sampler(seed);
  for (unsigned i = 0; i < samples; ++i) probes.push_back(sampler.expression());

  for (const auto& f : probes) {
    const Poly a = to_poly(apply_field(d1, apply_field(d2, f)));
    const Poly b = to_poly(apply_field(d2, apply_field(d1, f)));
    if (!(a == b)) return false;
  }
  return true;
}

BracketSpec::BracketSpec(OperationalField d1, OperationalField d2, unsigned samples)
    : d1_(std::move(d1)), d2_(std::move(d2)), commuting_(commute_check(d1_, d2_, samples)) {}

BracketSpec BracketSpec::unchecked(OperationalField d1, OperationalField d2) {
  return BracketSpec(std::move(d1), std::move(d2), true);
}

Expression bracket(const BracketSpec& b, const Expression& f, const Expression& g) {
  if (!b.commuting())
    throw NonCommutingFields("fields " + to_string(b.d1()) + " and " + to_string(b.d2()) +
                             " do not commute");
  const Expression d1f = apply_field(b.d1(), f);
  const Expression d2f = apply_field(b.d2(), f);
  const Expression d1g = apply_field(b.d1(), g);
  const Expression d2g = apply_field(b.d2(), g);
  return canonical(d1f * d2g - d2f * d1g);
}

OperationalField hamiltonian_field(const BracketSpec& b, const Expression& h) {
  return apply_field(b.d1(), h) * b.d2() - apply_field(b.d2(), h) * b.d1();
}

// ------------------------------------------------------------ axioms

bool AxiomReport::ok() const {
  return std::all_of(results.begin(), results.end(),
                     [](const AxiomResult& r) { return r.failures == 0; });
}

void AxiomReport::raise_if_failed() const {
  for (const auto& r : results)
    if (r.failures > 0)
      throw AxiomViolation(r.axiom + " failed " + std::to_string(r.failures) + "/" +
                           std::to_string(r.trials) + ": " + r.counterexample.value_or(""));
}

AxiomReport check_axioms(const BracketSpec& b, unsigned trials, std::uint64_t seed) {
  ExprSampler sampler(seed);
  AxiomReport report;
  report.results = {{"skew", trials, 0, {}}, {"jacobi", trials, 0, {}}, {"leibniz", trials, 0, {}}};

  auto record = [](AxiomResult& r, const Expression& residual, const std::vector<Point>& points,
                   const std::string& triple) {
    bool bad = !is_zero(residual);
    std::string where;
    for (const auto& p : points) {
      if (eval(residual, p) != 0) {
        bad = true;
        where = " at " + to_string(p);
        break;
      }
    }
    if (!bad) return;
    ++r.failures;
    if (!r.counterexample) r.counterexample = triple + where;
  };

  for (unsigned t = 0; t < trials; ++t) {
    const Expression f = canonical(sampler.expression());
    const Expression g = canonical(sampler.expression());
    const Expression h = canonical(sampler.expression());
    std::vector<Point> points;
    for (int i = 0; i < 5; ++i) points.push_back(sampler.point());
    const std::string triple =
        "f=" + print_expr(f) + "; g=" + print_expr(g) + "; h=" + print_expr(h);

    const Expression fg = bracket(b, f, g);
    const Expression gh = bracket(b, g, h);
    const Expression hf = bracket(b, h, f);

    record(report.results[0], fg + bracket(b, g, f), points, triple);
    record(report.results[1], bracket(b, fg, h) + bracket(b, gh, f) + bracket(b, hf, g), points,
           triple);
    record(report.results[2], bracket(b, f, g * h) - fg * h - g * bracket(b, f, h), points,
           triple);
  }
  return report;
}

// ------------------------------------------------------------ order, tensor

std::string to_string(Order o) {
  switch (o) {
    case Order::Kinematic:
      return "Kinematic";
    case Order::Order1:
      return "Order1";
    case Order::Queer:
      return "Queer";
  }
  return {};
}

Order order_at(const OperationalField& d, const Point& m) {
  return eval(d.queer_coeff(), m) != 0 ? Order::Queer : Order::Kinematic;
}

Rational pairing(const DualVector& mu, const Direction& d) {
  if (const auto* v = std::get_if<SeqComb>(&d)) return dot(mu.vpart, *v);
  return mu.xpart;
}

Rational TensorAtPoint::operator()(const DualVector& mu, const DualVector& nu) const {
  Rational s = 0;
  for (const auto& t : terms)
    s += t.coeff * (pairing(mu, t.first) * pairing(nu, t.second) -
                    pairing(mu, t.second) * pairing(nu, t.first));
  return s;
}

namespace {

constexpr std::uint64_t kDxKey = std::numeric_limits<std::uint64_t>::max() - 1;
constexpr std::uint64_t kQueerKey = std::numeric_limits<std::uint64_t>::max();

std::map<std::uint64_t, Rational> value_at(const OperationalField& d, const Point& m) {
  std::map<std::uint64_t, Rational> out;
  auto put = [&out](std::uint64_t k, Rational v) {
    if (v != 0) out[k] = std::move(v);
  };
  for (const auto& [k, c] : d.kin()) put(k, eval(c, m));
  put(kDxKey, eval(d.dx_coeff(), m));
  put(kQueerKey, eval(d.queer_coeff(), m));
  return out;
}

Rational component(const std::map<std::uint64_t, Rational>& v, std::uint64_t k) {
  auto it = v.find(k);
  return it == v.end() ? Rational(0) : it->second;
}

Direction direction_for(std::uint64_t key) {
  if (key == kDxKey) return DxDirection{};
  return SeqComb::unit(key);
}

std::string direction_text(const Direction& d) {
  if (const auto* v = std::get_if<SeqComb>(&d)) return to_string(*v);
  return "dx";
}

}  // namespace

TensorAtPoint tensor_at(const BracketSpec& b, const Point& m) {
  const auto a = value_at(b.d1(), m);
  const auto c = value_at(b.d2(), m);
  std::vector<std::uint64_t> keys;
  for (const auto& [k, v] : a) keys.push_back(k);
  for (const auto& [k, v] : c) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  TensorAtPoint t;
  bool independent = false;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      Rational minor = component(a, keys[i]) * component(c, keys[j]) -
                       component(a, keys[j]) * component(c, keys[i]);
      if (minor == 0) continue;
      independent = true;
      if (keys[j] != kQueerKey)
        t.terms.push_back({direction_for(keys[i]), direction_for(keys[j]), minor});
    }
  }
  if (!independent) return {};
  if (a.count(kQueerKey) || c.count(kQueerKey))
    throw QueerAtPoint("bracket is queer at " + to_string(m) +
                       ": fields are independent and one has a nonzero delta_ell part");
  return t;
}

std::string to_string(const TensorAtPoint& t) {
  if (t.terms.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < t.terms.size(); ++i) {
    const auto& term = t.terms[i];
    if (i) os << " + ";
    os << to_string(term.coeff) << "*(" << direction_text(term.first) << " ^ "
       << direction_text(term.second) << ')';
  }
  return os.str();
}

// ------------------------------------------------------------ witness, sharp

Witness queer_witness(const BracketSpec& b, const Point& m) {
  const std::uint64_t top =
      std::max({b.d1().max_index(), b.d2().max_index(), m.v.max_finite_index()}) + 1;
  const Expression x = Expression::x();
  const Expression xm = x - Expression::constant(m.x);

  std::vector<Expression> hs{-x, x};
  for (std::uint64_t k = 1; k <= top; ++k) hs.push_back(Expression::lin(SeqComb::unit(k)));
  hs.push_back(Expression::rho());

  // Functions with vanishing differential at m: quadratic forms re-centered at m.
  auto recentered = [&m](const OperatorSymbol& a) {
    return Expression::quad(a) - Expression::lin(op_apply(op_symmetrize(a), m.v)) +
           Expression::constant(op_quadratic_form(a, m.v));
  };
  std::vector<Expression> fs{recentered(OperatorSymbol::identity()), xm * xm};
  for (std::uint64_t k = 1; k <= top; ++k) {
    const Expression vk = Expression::lin(SeqComb::unit(k)) - Expression::constant(m.v.entry(k));
    fs.push_back(vk * vk);
    fs.push_back(xm * vk);
  }
  fs.push_back(recentered(OperatorSymbol(0, SeqVec::geometric(make_rational(1, 2)), {})));

  const DualVector zero{};
  for (const auto& h : hs) {
    for (const auto& f : fs) {
      if (!(gradient(f, m) == zero)) continue;
      Rational value = eval(bracket(b, h, f), m);
      if (value != 0) return Witness{canonical(h), canonical(f), std::move(value)};
    }
  }
  throw WitnessNotFound("no pair with vanishing differential separates the bracket at " +
                        to_string(m));
}

KinematicVector sharp(const TensorAtPoint& t, const DualVector& mu) {
  KinematicVector out;
  auto add = [&out](const Direction& d, const Rational& c) {
    if (const auto* v = std::get_if<SeqComb>(&d))
      out.vpart += c * *v;
    else
      out.xpart += c;
  };
  for (const auto& term : t.terms) {
    add(term.second, term.coeff * pairing(mu, term.first));
    add(term.first, -term.coeff * pairing(mu, term.second));
  }
  return out;
}

std::string to_string(const KinematicVector& k) {
  return "kvec(" + to_string(k.vpart) + "," + to_string(k.xpart) + ")";
}

ObstructionResult extension_obstruction_demo(const SeqComb& df_at_zero,
                                             const SeqComb& dg_at_zero) {
  const Point origin(SeqComb{}, 0);
  // Left side: B(f, g)(v) = ⟨v, v⟩ = ρ(v), so D(B(f,g))(0) = δ_ℓ(ρ)(0).
  Rational lhs = eval(delta_ell(Expression::rho()), origin);
  // Right side: B(Df(v), v) + ⟨v, Dg(v)⟩ at v = 0.
  Rational rhs = dot(df_at_zero, origin.v) + dot(origin.v, dg_at_zero);
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace qpb
