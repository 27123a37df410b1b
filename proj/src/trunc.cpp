#include "qpb/trunc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpb/errors.hpp"
#include "qpb/jet.hpp"

namespace qpb {

TruncPoly TruncPoly::constant(unsigned n, const Rational& c) {
  TruncPoly p(n);
  p.add_term(Exponents(n + 1, 0), c);
  return p;
}

TruncPoly TruncPoly::variable(unsigned n, unsigned index) {
  TruncPoly p(n);
  Exponents e(n + 1, 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

void TruncPoly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TruncPoly& TruncPoly::operator+=(const TruncPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

TruncPoly& TruncPoly::operator*=(const Rational& c) {
  if (c == 0) terms_.clear();
  for (auto& t : terms_) t.second *= c;
  return *this;
}

TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
  TruncPoly out(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      TruncPoly::Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Rational TruncPoly::eval(const std::vector<Rational>& z) const {
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t *= power(z.at(i), e[i]);
    s += t;
  }
  return s;
}

double TruncPoly::eval(const std::vector<double>& z) const {
  double s = 0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= z.at(i);
    s += t;
  }
  return s;
}

TruncPoly TruncPoly::partial(unsigned index) const {
  TruncPoly out(n_);
  for (const auto& [e, c] : terms_) {
    if (e.at(index) == 0) continue;
    Exponents d = e;
    --d[index];
    out.add_term(d, c * e[index]);
  }
  return out;
}

std::string to_string(const TruncPoly& p) {
  if (p.terms().empty()) return "0";
  std::ostringstream os;
  // Lower degree first; within a degree, earlier variables first.
  std::vector<std::pair<TruncPoly::Exponents, Rational>> terms(p.terms().begin(), p.terms().end());
  auto degree = [](const TruncPoly::Exponents& e) {
    unsigned d = 0;
    for (unsigned k : e) d += k;
    return d;
  };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    const unsigned da = degree(a.first), db = degree(b.first);
    return da != db ? da < db : a.first > b.first;
  });
  bool first = true;
  for (const auto& [e, c] : terms) {
    Rational mag = c;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      mag = abs(c);
    }
    std::vector<std::string> vars;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      std::string name = i == p.n() ? "x" : "v" + std::to_string(i + 1);
      if (e[i] > 1) name += "^" + std::to_string(e[i]);
      vars.push_back(name);
    }
    if (vars.empty()) {
      os << to_string(mag);
    } else {
      if (mag == -1) os << "-";
      else if (mag != 1) os << to_string(mag) << '*';
      for (std::size_t i = 0; i < vars.size(); ++i) os << (i ? "*" : "") << vars[i];
    }
    first = false;
  }
  return os.str();
}

namespace {

TruncPoly truncate_atom(const Atom& a, unsigned n) {
  TruncPoly p(n);
  switch (a.kind) {
    case Atom::Kind::X:
      return TruncPoly::variable(n, n);
    case Atom::Kind::Lin:
      for (unsigned k = 1; k <= n; ++k) {
        TruncPoly v = TruncPoly::variable(n, k - 1);
        v *= a.basis.entry(k);
        p += v;
      }
      return p;
    case Atom::Kind::QuadI:
    case Atom::Kind::QuadDiag:
      for (unsigned k = 1; k <= n; ++k) {
        TruncPoly v = TruncPoly::variable(n, k - 1);
        TruncPoly sq = v * v;
        sq *= a.kind == Atom::Kind::QuadI ? Rational(1) : a.basis.entry(k);
        p += sq;
      }
      return p;
  }
  return p;
}

double rel_err(double approx, const Rational& exact) {
  const double e = to_double(exact);
  return std::abs(approx - e) / std::max(1.0, std::abs(e));
}

}  // namespace

Truncation truncate(const Expression& f, unsigned n) {
  if (n == 0) throw DomainError("truncation size must be positive");
  TruncPoly out(n);
  const Poly poly = to_poly(f);
  for (const auto& [mono, c] : poly.terms()) {
    TruncPoly t = TruncPoly::constant(n, c);
    for (const auto& [a, k] : mono) {
      const TruncPoly base = truncate_atom(a, n);
      for (unsigned i = 0; i < k; ++i) t = t * base;
    }
    out += t;
  }
  return Truncation{n, std::move(out)};
}

std::vector<Rational> coordinates(const Point& m, unsigned n) {
  if (m.v.max_finite_index() > n)
    throw DomainError("point support exceeds truncation size " + std::to_string(n));
  std::vector<Rational> z(n + 1);
  for (unsigned k = 1; k <= n; ++k) z[k - 1] = m.v.entry(k);
  z[n] = m.x;
  return z;
}

double FdReport::max_rel_err() const {
  double m = 0;
  for (const auto& b : blocks) m = std::max(m, b.max_rel_err);
  return m;
}

FdReport fd_check(const Expression& f, const Point& m, unsigned n, double h, double tolerance) {
  if (!(h > 0)) throw DomainError("finite-difference step must be positive");
  const Truncation t = truncate(f, n);
  const std::vector<Rational> zq = coordinates(m, n);
  std::vector<double> z(zq.size());
  std::transform(zq.begin(), zq.end(), z.begin(), [](const Rational& r) { return to_double(r); });

  const DualVector grad = gradient(f, m);
  const HessianSymbol hess = hessian(f, m);
  const unsigned dim = n + 1;

  // Exact symbolic values in the truncated coordinates.
  std::vector<Rational> g_exact(dim);
  std::vector<std::vector<Rational>> h_exact(dim, std::vector<Rational>(dim));
  for (unsigned i = 0; i < n; ++i) {
    g_exact[i] = grad.vpart.entry(i + 1);
    for (unsigned j = 0; j < n; ++j) h_exact[i][j] = matrix_entry(hess.vv, i + 1, j + 1);
    h_exact[i][n] = h_exact[n][i] = hess.vx.entry(i + 1);
  }
  g_exact[n] = grad.xpart;
  h_exact[n][n] = hess.xx;

  FdReport report;
  report.n = n;
  report.h = h;
  report.value_match = t.poly.eval(zq) == eval(f, m);

  bool exact = true;
  for (unsigned i = 0; i < dim; ++i) {
    const TruncPoly di = t.poly.partial(i);
    if (di.eval(zq) != g_exact[i]) exact = false;
    for (unsigned j = 0; j < dim; ++j)
      if (di.partial(j).eval(zq) != h_exact[i][j]) exact = false;
  }
  report.exact_match = exact;

  auto at = [&](std::initializer_list<std::pair<unsigned, double>> shifts) {
    std::vector<double> y = z;
    for (const auto& [i, d] : shifts) y[i] += d;
    return t.poly.eval(y);
  };
  const double f0 = t.poly.eval(z);
  report.fd_gradient.resize(dim);
  report.fd_hessian.assign(dim, std::vector<double>(dim));
  for (unsigned i = 0; i < dim; ++i) {
    report.fd_gradient[i] = (at({{i, h}}) - at({{i, -h}})) / (2 * h);
    report.fd_hessian[i][i] = (at({{i, h}}) - 2 * f0 + at({{i, -h}})) / (h * h);
    for (unsigned j = 0; j < i; ++j) {
      const double v = (at({{i, h}, {j, h}}) - at({{i, h}, {j, -h}}) - at({{i, -h}, {j, h}}) +
                        at({{i, -h}, {j, -h}})) /
                       (4 * h * h);
      report.fd_hessian[i][j] = report.fd_hessian[j][i] = v;
    }
  }

  BlockError gv{"grad_v", 0}, gx{"grad_x", 0}, vv{"hess_vv", 0}, vx{"hess_vx", 0}, xx{"hess_xx", 0};
  for (unsigned i = 0; i < n; ++i) {
    gv.max_rel_err = std::max(gv.max_rel_err, rel_err(report.fd_gradient[i], g_exact[i]));
    for (unsigned j = 0; j < n; ++j)
      vv.max_rel_err = std::max(vv.max_rel_err, rel_err(report.fd_hessian[i][j], h_exact[i][j]));
    vx.max_rel_err = std::max(vx.max_rel_err, rel_err(report.fd_hessian[i][n], h_exact[i][n]));
  }
  gx.max_rel_err = rel_err(report.fd_gradient[n], g_exact[n]);
  xx.max_rel_err = rel_err(report.fd_hessian[n][n], h_exact[n][n]);
  report.blocks = {gv, gx, vv, vx, xx};

  if (report.max_rel_err() > tolerance) {
    std::ostringstream os;
    os << "max relative error " << report.max_rel_err() << " exceeds " << tolerance << " for "
       << print_expr(f) << " at " << to_string(m);
    throw ToleranceExceeded(os.str());
  }
  return report;
}

std::vector<ConvergenceRow> ell_convergence(const OperatorSymbol& a,
                                            const std::vector<std::uint64_t>& ns) {
  if (ns.empty()) throw DomainError("ell_convergence needs at least one n");
  std::vector<ConvergenceRow> rows;
  const Rational target = ell(a);
  for (std::uint64_t n : ns) {
    ConvergenceRow r;
    r.n = n;
    r.ell_n_exact = diagonal_entry(a, n);
    r.target = target;
    r.abs_err_exact = abs(r.ell_n_exact - target);
    r.ell_n = to_double(r.ell_n_exact);
    r.abs_err = to_double(r.abs_err_exact);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

struct TruncatedField {
  unsigned n;
  std::vector<TruncPoly> kin;  // per coordinate 1..n
  TruncPoly dx;

  std::vector<double> velocity(const std::vector<double>& z) const {
    std::vector<double> out(n + 1, 0.0);
    for (unsigned k = 0; k < n; ++k) out[k] = kin[k].eval(z);
    out[n] = dx.eval(z);
    return out;
  }
};

// The δ_ℓ part is dropped: at finite n it has no kinematic component.
TruncatedField truncate_field(const OperationalField& d, unsigned n) {
  TruncatedField t{n, std::vector<TruncPoly>(n, TruncPoly(n)), truncate(d.dx_coeff(), n).poly};
  for (const auto& [k, c] : d.kin())
    if (k <= n) t.kin[k - 1] = truncate(c, n).poly;
  return t;
}

double rho_n(const std::vector<double>& z, unsigned n) {
  double s = 0;
  for (unsigned k = 0; k < n; ++k) s += z[k] * z[k];
  return s;
}

}  // namespace

IllPosednessReport ill_posedness_demo(const BracketSpec& b, const Expression& h,
                                      const Point& start, const std::vector<unsigned>& ns) {
  IllPosednessReport r;
  r.hamiltonian = canonical(h);
  r.field = hamiltonian_field(b, h);
  r.start = start;
  r.drho_dt = bracket(b, h, Expression::rho());

  std::uint64_t top = std::max(r.field.max_index(), start.v.max_finite_index());
  for (unsigned n : ns) top = std::max<std::uint64_t>(top, n);
  Expression chain = r.drho_dt;
  for (std::uint64_t k = 1; k <= top; ++k) {
    const Expression vk = Expression::lin(SeqComb::unit(k));
    Expression rate = bracket(b, h, vk);
    chain = chain - Expression::constant(2) * vk * rate;
    r.dv_dt.emplace_back(k, std::move(rate));
  }
  r.chain_rule_residual = canonical(chain);
  r.consistent = is_zero(r.chain_rule_residual);

  const int steps = static_cast<int>(std::lround(r.horizon / r.step));
  for (unsigned n : ns) {
    const TruncatedField field = truncate_field(r.field, n);
    std::vector<double> z(n + 1);
    for (unsigned k = 1; k <= n; ++k) z[k - 1] = to_double(start.v.entry(k));
    z[n] = to_double(start.x);

    FlowRow row;
    row.n = n;
    const std::vector<double> v0 = field.velocity(z);
    for (unsigned k = 0; k < n; ++k) row.drho_dt_start += 2 * z[k] * v0[k];
    const double rho0 = rho_n(z, n);

    auto axpy = [](const std::vector<double>& y, double a, const std::vector<double>& k) {
      std::vector<double> out(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
      return out;
    };
    for (int s = 0; s < steps; ++s) {
      const double dt = r.step;
      const auto k1 = field.velocity(z);
      const auto k2 = field.velocity(axpy(z, dt / 2, k1));
      const auto k3 = field.velocity(axpy(z, dt / 2, k2));
      const auto k4 = field.velocity(axpy(z, dt, k3));
      for (std::size_t i = 0; i < z.size(); ++i)
        z[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    row.drho_dt_mean = (rho_n(z, n) - rho0) / r.horizon;
    row.final_v.assign(z.begin(), z.begin() + n);
    row.final_x = z[n];
    r.truncated.push_back(std::move(row));
  }
  return r;
}

}  // namespace qpb
