#ifndef QPB_SEQ_HPP
#define QPB_SEQ_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qpb/rational.hpp"

namespace qpb {

/// Closed-form square-summable sequences, indexed from 1.
struct FiniteSupport {
  /// Strictly increasing indices, nonzero values.
  std::vector<std::pair<std::uint64_t, Rational>> entries;
};

/// Entry k is ratio^k, |ratio| < 1.
struct Geometric {
  Rational ratio;
};

/// Entry k is scale / k^exponent, exponent >= 1.
struct Power {
  Rational scale;
  unsigned exponent = 1;
};

/// A single literal sequence in one of the three closed forms.
class SeqVec {
 public:
  using Form = std::variant<FiniteSupport, Geometric, Power>;

  /// Entries are sorted and zero values dropped; duplicate indices throw.
  static SeqVec finite(std::vector<std::pair<std::uint64_t, Rational>> entries);
  static SeqVec geometric(Rational ratio);
  static SeqVec power(Rational scale, unsigned exponent);
  static SeqVec unit(std::uint64_t index);

  const Form& form() const { return form_; }
  bool is_finite() const { return std::holds_alternative<FiniteSupport>(form_); }
  Rational entry(std::uint64_t k) const;

 private:
  explicit SeqVec(Form f) : form_(std::move(f)) {}
  Form form_;
};

/// One basis sequence: e_k, the geometric sequence r^k, or 1/k^s.
/// These are linearly independent, so coefficients over them are a
/// canonical form for finite combinations of SeqVecs.
struct SeqBasis {
  enum class Kind : std::uint8_t { Unit, Geo, Pow };
  Kind kind = Kind::Unit;
  std::uint64_t index = 0;  // Unit
  Rational ratio;           // Geo, nonzero, |ratio| < 1
  unsigned exponent = 0;    // Pow

  static SeqBasis unit(std::uint64_t k);
  static SeqBasis geo(Rational r);
  static SeqBasis pow(unsigned s);

  Rational entry(std::uint64_t k) const;

  friend bool operator==(const SeqBasis& a, const SeqBasis& b);
  friend bool operator<(const SeqBasis& a, const SeqBasis& b);
};

/// Finite rational combination of basis sequences, kept canonical (no zero
/// coefficients). This is the vector type used for gradients, operator
/// applications and rank-one factors.
class SeqComb {
 public:
  SeqComb() = default;
  SeqComb(const SeqVec& v);  // NOLINT(google-explicit-constructor)

  static SeqComb unit(std::uint64_t k, const Rational& c = Rational(1));
  static SeqComb basis(const SeqBasis& b, const Rational& c = Rational(1));

  const std::map<SeqBasis, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  /// Largest Unit index present, 0 if none.
  std::uint64_t max_finite_index() const;

  Rational entry(std::uint64_t k) const;

  SeqComb& operator+=(const SeqComb& o);
  SeqComb& operator-=(const SeqComb& o);
  SeqComb& operator*=(const Rational& c);
  friend SeqComb operator+(SeqComb a, const SeqComb& b) { return a += b; }
  friend SeqComb operator-(SeqComb a, const SeqComb& b) { return a -= b; }
  friend SeqComb operator*(const Rational& c, SeqComb a) { return a *= c; }
  friend bool operator==(const SeqComb& a, const SeqComb& b) {
    return a.terms_ == b.terms_;
  }

  void add(const SeqBasis& b, const Rational& c);

  /// Pointwise product with a finitely supported sequence.
  SeqComb pointwise(const SeqComb& finite) const;

 private:
  std::map<SeqBasis, Rational> terms_;
};

/// ⟨a, b⟩ in ℓ². At least one side must be finitely supported so the
/// result is a finite exact sum; otherwise DomainError.
Rational dot(const SeqComb& a, const SeqComb& b);

std::string to_string(const SeqVec& v);
/// Printed as a sum of vector literals, e.g. "[1:2,3:-1] + 1/2*geo(1/3)".
/// The zero vector prints as "[]".
std::string to_string(const SeqComb& v);

}  // namespace qpb

#endif
