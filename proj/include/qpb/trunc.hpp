#ifndef QPB_TRUNC_HPP
#define QPB_TRUNC_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qpb/expr.hpp"
#include "qpb/opsym.hpp"
#include "qpb/poisson.hpp"

namespace qpb {

/// Polynomial in v_1..v_n and x. Variable i < n is v_{i+1}; variable n is x.
class TruncPoly {
 public:
  using Exponents = std::vector<unsigned>;

  explicit TruncPoly(unsigned n = 0) : n_(n) {}
  static TruncPoly constant(unsigned n, const Rational& c);
  static TruncPoly variable(unsigned n, unsigned index);

  unsigned n() const { return n_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  TruncPoly& operator+=(const TruncPoly& o);
  TruncPoly& operator*=(const Rational& c);
  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b);
  friend bool operator==(const TruncPoly& a, const TruncPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  Rational eval(const std::vector<Rational>& z) const;
  double eval(const std::vector<double>& z) const;
  TruncPoly partial(unsigned index) const;

  void add_term(const Exponents& e, const Rational& c);

 private:
  unsigned n_;
  std::map<Exponents, Rational> terms_;
};

std::string to_string(const TruncPoly& p);

struct Truncation {
  unsigned n = 0;
  TruncPoly poly;
};

/// The restriction of f to span(e_1..e_n) × ℝ.
Truncation truncate(const Expression& f, unsigned n);

/// (v_1..v_n, x). Throws DomainError if m has support beyond n.
std::vector<Rational> coordinates(const Point& m, unsigned n);

struct BlockError {
  std::string block;
  double max_rel_err = 0;
};

struct FdReport {
  unsigned n = 0;
  double h = 0;
  /// grad_v, grad_x, hess_vv, hess_vx, hess_xx
  std::vector<BlockError> blocks;
  std::vector<double> fd_gradient;
  std::vector<std::vector<double>> fd_hessian;
  /// Exact derivatives of the truncated polynomial equal the symbolic jets.
  bool exact_match = false;
  /// eval(f, m) equals the truncated polynomial's value at m.
  bool value_match = false;
  double max_rel_err() const;
};

inline constexpr double kFdTolerance = 1e-5;

/// Central differences of truncate(f, n) at m against the symbolic gradient
/// and Hessian. Relative error is |fd - exact| / max(1, |exact|). Throws
/// ToleranceExceeded if any block exceeds `tolerance`.
FdReport fd_check(const Expression& f, const Point& m, unsigned n, double h = 1e-4,
                  double tolerance = kFdTolerance);

struct ConvergenceRow {
  std::uint64_t n = 0;
  double ell_n = 0;
  Rational target;
  double abs_err = 0;
  Rational ell_n_exact;
  Rational abs_err_exact;
};

std::vector<ConvergenceRow> ell_convergence(const OperatorSymbol& a,
                                            const std::vector<std::uint64_t>& ns);

struct FlowRow {
  unsigned n = 0;
  /// 2⟨v, dv/dt⟩ at the start of the truncated flow.
  double drho_dt_start = 0;
  /// (ρ(T) − ρ(0)) / T along the integrated truncated flow.
  double drho_dt_mean = 0;
  std::vector<double> final_v;
  double final_x = 0;
};

struct IllPosednessReport {
  Expression hamiltonian;
  OperationalField field;
  Point start;
  /// {h, ρ}
  Expression drho_dt;
  /// {h, ⟨v, e_k⟩} for the sampled basis.
  std::vector<std::pair<std::uint64_t, Expression>> dv_dt;
  /// {h, ρ} − Σ_k 2⟨v,e_k⟩{h, ⟨v,e_k⟩}: zero iff X_h acts on ρ by the chain rule
  /// through its action on coordinates.
  Expression chain_rule_residual;
  bool consistent = false;
  std::vector<FlowRow> truncated;
  double horizon = 1.0;
  double step = 1e-2;
};

/// Contrasts the symbolic Hamiltonian action of h with flows of its
/// finite-dimensional truncations. The δ_ℓ part has no kinematic component,
/// so it contributes nothing at any finite n.
IllPosednessReport ill_posedness_demo(const BracketSpec& b, const Expression& h,
                                      const Point& start = Point(SeqComb::unit(1), 0),
                                      const std::vector<unsigned>& ns = {2, 4, 8});

}  // namespace qpb

#endif
