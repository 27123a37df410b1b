#include "qpb/seq.hpp"

#include <algorithm>
#include <sstream>

#include "qpb/errors.hpp"

namespace qpb {

SeqVec SeqVec::finite(std::vector<std::pair<std::uint64_t, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  FiniteSupport fs;
  for (auto& [k, v] : entries) {
    if (k == 0) throw DomainError("sequence indices start at 1");
    if (!fs.entries.empty() && fs.entries.back().first == k)
      throw DomainError("duplicate index " + std::to_string(k));
    if (v != 0) fs.entries.emplace_back(k, std::move(v));
  }
  return SeqVec(std::move(fs));
}

SeqVec SeqVec::geometric(Rational ratio) {
  if (abs(ratio) >= 1)
    throw DomainError("geometric ratio " + to_string(ratio) + " has |r| >= 1");
  return SeqVec(Geometric{std::move(ratio)});
}

SeqVec SeqVec::power(Rational scale, unsigned exponent) {
  if (exponent < 1) throw DomainError("power exponent must be >= 1");
  return SeqVec(Power{std::move(scale), exponent});
}

SeqVec SeqVec::unit(std::uint64_t index) {
  return finite({{index, Rational(1)}});
}

Rational SeqVec::entry(std::uint64_t k) const {
  return SeqComb(*this).entry(k);
}

SeqBasis SeqBasis::unit(std::uint64_t k) {
  SeqBasis b;
  b.kind = Kind::Unit;
  b.index = k;
  return b;
}

SeqBasis SeqBasis::geo(Rational r) {
  SeqBasis b;
  b.kind = Kind::Geo;
  b.ratio = std::move(r);
  return b;
}

SeqBasis SeqBasis::pow(unsigned s) {
  SeqBasis b;
  b.kind = Kind::Pow;
  b.exponent = s;
  return b;
}

Rational SeqBasis::entry(std::uint64_t k) const {
  switch (kind) {
    case Kind::Unit:
      return k == index ? Rational(1) : Rational(0);
    case Kind::Geo:
      return power(ratio, k);
    case Kind::Pow:
      return Rational(1) / power(Rational(static_cast<unsigned long>(k)), exponent);
  }
  return 0;
}

bool operator==(const SeqBasis& a, const SeqBasis& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case SeqBasis::Kind::Unit:
      return a.index == b.index;
    case SeqBasis::Kind::Geo:
      return a.ratio == b.ratio;
    case SeqBasis::Kind::Pow:
      return a.exponent == b.exponent;
  }
  return false;
}

bool operator<(const SeqBasis& a, const SeqBasis& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  switch (a.kind) {
    case SeqBasis::Kind::Unit:
      return a.index < b.index;
    case SeqBasis::Kind::Geo:
      return a.ratio < b.ratio;
    case SeqBasis::Kind::Pow:
      return a.exponent < b.exponent;
  }
  return false;
}

SeqComb::SeqComb(const SeqVec& v) {
  std::visit(
      [this](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, FiniteSupport>) {
          for (const auto& [k, val] : f.entries) add(SeqBasis::unit(k), val);
        } else if constexpr (std::is_same_v<T, Geometric>) {
          if (f.ratio != 0) add(SeqBasis::geo(f.ratio), 1);
        } else {
          add(SeqBasis::pow(f.exponent), f.scale);
        }
      },
      v.form());
}

SeqComb SeqComb::unit(std::uint64_t k, const Rational& c) {
  return basis(SeqBasis::unit(k), c);
}

SeqComb SeqComb::basis(const SeqBasis& b, const Rational& c) {
  SeqComb out;
  out.add(b, c);
  return out;
}

bool SeqComb::is_finite() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return t.first.kind == SeqBasis::Kind::Unit;
  });
}

std::uint64_t SeqComb::max_finite_index() const {
  std::uint64_t m = 0;
  for (const auto& [b, c] : terms_)
    if (b.kind == SeqBasis::Kind::Unit) m = std::max(m, b.index);
  return m;
}

Rational SeqComb::entry(std::uint64_t k) const {
  Rational s = 0;
  for (const auto& [b, c] : terms_) s += c * b.entry(k);
  return s;
}

void SeqComb::add(const SeqBasis& b, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SeqComb& SeqComb::operator+=(const SeqComb& o) {
  for (const auto& [b, c] : o.terms_) add(b, c);
  return *this;
}

SeqComb& SeqComb::operator-=(const SeqComb& o) {
  for (const auto& [b, c] : o.terms_) add(b, -c);
  return *this;
}

SeqComb& SeqComb::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

SeqComb SeqComb::pointwise(const SeqComb& finite) const {
  if (!finite.is_finite()) throw DomainError("pointwise product needs finite support");
  SeqComb out;
  for (const auto& [b, c] : finite.terms_) out.add(b, c * entry(b.index));
  return out;
}

Rational dot(const SeqComb& a, const SeqComb& b) {
  const SeqComb* fin = &a;
  const SeqComb* other = &b;
  if (!fin->is_finite()) std::swap(fin, other);
  if (!fin->is_finite())
    throw DomainError("inner product of two infinitely supported sequences");
  Rational s = 0;
  for (const auto& [basis, c] : fin->terms()) s += c * other->entry(basis.index);
  return s;
}

std::string to_string(const SeqVec& v) { return to_string(SeqComb(v)); }

std::string to_string(const SeqComb& v) {
  std::ostringstream os;
  bool any_finite = false;
  for (const auto& [b, c] : v.terms()) {
    if (b.kind != SeqBasis::Kind::Unit) continue;
    os << (any_finite ? "," : "[") << b.index << ':' << to_string(c);
    any_finite = true;
  }
  if (any_finite) os << ']';
  bool first = !any_finite;
  for (const auto& [b, c] : v.terms()) {
    if (b.kind == SeqBasis::Kind::Geo) {
      Rational mag = c;
      if (first) {
        if (c == -1) os << "-1*";
        else if (c != 1) os << to_string(c) << '*';
      } else {
        os << (c < 0 ? " - " : " + ");
        mag = abs(c);
        if (mag != 1) os << to_string(mag) << '*';
      }
      os << "geo(" << to_string(b.ratio) << ')';
      first = false;
    } else if (b.kind == SeqBasis::Kind::Pow) {
      if (!first) os << " + ";
      os << "pow(" << to_string(c) << ',' << b.exponent << ')';
      first = false;
    }
  }
  if (v.is_zero()) return "[]";
  return os.str();
}

}  // namespace qpb
