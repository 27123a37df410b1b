#include "qpb/parse.hpp"

#include <cctype>

#include "qpb/errors.hpp"

namespace qpb {

void Parser::skip_ws() {
  while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Parser::at_end() {
  skip_ws();
  return pos_ >= text_.size();
}

void Parser::fail(const std::string& what) const { throw SyntaxError(pos_, what); }

bool Parser::accept(std::string_view token) {
  skip_ws();
  if (text_.substr(pos_, token.size()) == token) {
    pos_ += token.size();
    return true;
  }
  return false;
}

void Parser::expect(std::string_view token) {
  if (!accept(token)) fail("expected '" + std::string(token) + "'");
}

void Parser::finish() {
  if (!at_end()) fail("unexpected trailing input");
}

std::string Parser::identifier() {
  skip_ws();
  std::size_t start = pos_;
  while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  return std::string(text_.substr(start, pos_ - start));
}

std::string Parser::digits() {
  skip_ws();
  std::size_t start = pos_;
  while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  if (start == pos_) fail("expected digits");
  return std::string(text_.substr(start, pos_ - start));
}

Rational Parser::rational() {
  skip_ws();
  bool negative = false;
  if (pos_ < text_.size() && text_[pos_] == '-') {
    negative = true;
    ++pos_;
  }
  mpz_class num(digits());
  mpz_class den = 1;
  if (accept("/")) {
    std::size_t at = pos_;
    den = mpz_class(digits());
    if (den == 0) throw SyntaxError(at, "zero denominator");
  }
  Rational r(negative ? mpz_class(-num) : num, den);
  r.canonicalize();
  return r;
}

bool Parser::at_vec_literal() {
  skip_ws();
  auto rest = text_.substr(pos_);
  auto starts = [&rest](std::string_view p) { return rest.substr(0, p.size()) == p; };
  if (starts("[")) return true;
  for (std::string_view name : {"geo", "pow"}) {
    if (!starts(name)) continue;
    std::size_t k = name.size();
    while (k < rest.size() && std::isspace(static_cast<unsigned char>(rest[k]))) ++k;
    if (k < rest.size() && rest[k] == '(') return true;
  }
  return false;
}

SeqVec Parser::literal() {
  skip_ws();
  std::size_t start = pos_;
  if (accept("[")) {
    std::vector<std::pair<std::uint64_t, Rational>> entries;
    if (!accept("]")) {
      do {
        std::size_t at = pos_;
        std::uint64_t k = std::stoull(digits());
        if (k == 0) throw SyntaxError(at, "sequence indices start at 1");
        if (!entries.empty() && k <= entries.back().first)
          throw SyntaxError(at, "indices must be strictly increasing");
        expect(":");
        at = pos_;
        Rational v = rational();
        if (v == 0) throw SyntaxError(at, "finite-support values must be nonzero");
        entries.emplace_back(k, std::move(v));
      } while (accept(","));
      expect("]");
    }
    return SeqVec::finite(std::move(entries));
  }
  std::string name = identifier();
  if (name == "geo") {
    expect("(");
    Rational r = rational();
    expect(")");
    return SeqVec::geometric(std::move(r));
  }
  if (name == "pow") {
    expect("(");
    Rational c = rational();
    expect(",");
    std::size_t at = pos_;
    unsigned long s = std::stoul(digits());
    if (s < 1) throw SyntaxError(at, "power exponent must be >= 1");
    expect(")");
    return SeqVec::power(std::move(c), static_cast<unsigned>(s));
  }
  pos_ = start;
  fail("expected vector literal");
}

SeqComb Parser::vec() {
  SeqComb out;
  Rational sign = 1;
  while (true) {
    Rational c = sign;
    if (!at_vec_literal()) {
      c *= rational();
      expect("*");
    }
    out += c * SeqComb(literal());
    if (accept("+")) {
      sign = 1;
    } else if (accept("-")) {
      sign = -1;
    } else {
      break;
    }
  }
  return out;
}

OperatorSymbol Parser::oper() {
  expect("op");
  expect("(");
  Rational lambda = rational();
  expect(";");
  SeqComb diag;
  if (!accept(";")) {
    diag = vec();
    expect(";");
  }
  std::vector<RankOne> pairs;
  if (!accept(")")) {
    do {
      expect("(");
      SeqComb u = vec();
      expect(",");
      SeqComb w = vec();
      expect(")");
      pairs.push_back({std::move(u), std::move(w)});
    } while (accept(","));
    expect(")");
  }
  return OperatorSymbol(std::move(lambda), std::move(diag), std::move(pairs));
}

Point Parser::point() {
  expect("point");
  expect("(");
  std::size_t at = pos_;
  SeqComb v = vec();
  if (!v.is_finite()) throw SyntaxError(at, "point coordinates must be a finite-support vector");
  expect(",");
  Rational x = rational();
  expect(")");
  return Point(std::move(v), std::move(x));
}

DualVector Parser::dual() {
  expect("dual");
  expect("(");
  SeqComb v = vec();
  expect(",");
  Rational x = rational();
  expect(")");
  return DualVector{std::move(v), std::move(x)};
}

Expression Parser::expr(bool stop_before_vec) {
  std::vector<Expression> terms{term(stop_before_vec)};
  while (true) {
    if (accept("+")) {
      terms.push_back(term(stop_before_vec));
    } else if (accept("-")) {
      terms.push_back(Expression::scale(-1, term(stop_before_vec)));
    } else {
      break;
    }
  }
  return Expression::sum(std::move(terms));
}

Expression Parser::term(bool stop_before_vec) {
  std::vector<Expression> factors{factor()};
  while (true) {
    skip_ws();
    std::size_t save = pos_;
    if (!accept("*")) break;
    if (stop_before_vec && at_vec_literal()) {
      pos_ = save;
      break;
    }
    factors.push_back(factor());
  }
  return Expression::prod(std::move(factors));
}

Expression Parser::factor() {
  skip_ws();
  if (pos_ >= text_.size()) fail("unexpected end of input");
  char c = text_[pos_];
  if (std::isdigit(static_cast<unsigned char>(c))) return Expression::constant(rational());
  if (c == '-') {
    if (pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
      return Expression::constant(rational());
    ++pos_;
    return Expression::scale(-1, factor());
  }
  if (accept("(")) {
    Expression e = expr();
    expect(")");
    return e;
  }
  std::size_t start = pos_;
  std::string name = identifier();
  if (name == "x") return Expression::x();
  if (name == "ip") {
    expect("(");
    expect("v");
    expect(",");
    SeqComb w = vec();
    expect(")");
    return Expression::lin(std::move(w));
  }
  if (name == "q") {
    expect("(");
    OperatorSymbol a = oper();
    expect(")");
    return Expression::quad(std::move(a));
  }
  pos_ = start;
  fail(name.empty() ? "unexpected character '" + std::string(1, c) + "'"
                    : "unknown name '" + name + "'");
}

Expression parse_expr(std::string_view text) {
  Parser p(text);
  Expression e = p.expr();
  p.finish();
  return e;
}

Point parse_point(std::string_view text) {
  Parser p(text);
  Point m = p.point();
  p.finish();
  return m;
}

SeqComb parse_vec(std::string_view text) {
  Parser p(text);
  SeqComb v = p.vec();
  p.finish();
  return v;
}

OperatorSymbol parse_operator(std::string_view text) {
  Parser p(text);
  OperatorSymbol a = p.oper();
  p.finish();
  return a;
}

DualVector parse_dual(std::string_view text) {
  Parser p(text);
  DualVector d = p.dual();
  p.finish();
  return d;
}

}  // namespace qpb
