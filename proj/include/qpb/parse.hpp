#ifndef QPB_PARSE_HPP
#define QPB_PARSE_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "qpb/expr.hpp"
#include "qpb/jet.hpp"
#include "qpb/opsym.hpp"
#include "qpb/seq.hpp"

namespace qpb {

/// Recursive-descent reader for the expression DSL. Whitespace is ignored
/// between tokens. Errors carry the byte offset where parsing stopped.
///
///   expr     := term {('+'|'-') term}
///   term     := factor {'*' factor}
///   factor   := rational | 'x' | 'ip(v,' vec ')' | 'q(' oper ')' | '(' expr ')'
///   rational := ['-'] digits ['/' digits]
///   vec      := [rational '*'] lit {('+'|'-') [rational '*'] lit}
///   lit      := '[' [idx ':' rational {',' idx ':' rational}] ']'
///             | 'geo(' rational ')' | 'pow(' rational ',' digits ')'
///   oper     := 'op(' rational ';' [vec] ';' [pairs] ')'
///   pairs    := '(' vec ',' vec ')' {',' '(' vec ',' vec ')'}
///   point    := 'point(' vec ',' rational ')'
///   dual     := 'dual(' vec ',' rational ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  /// With `stop_before_vec`, a '*' directly followed by a vector literal ends
  /// the expression instead of being consumed (used by field literals).
  Expression expr(bool stop_before_vec = false);
  Rational rational();
  SeqComb vec();
  SeqVec literal();
  OperatorSymbol oper();
  Point point();
  DualVector dual();

  void skip_ws();
  bool at_end();
  /// Consumes `token` if it is next (after whitespace).
  bool accept(std::string_view token);
  void expect(std::string_view token);
  /// True if the next token starts a vector literal.
  bool at_vec_literal();
  void finish();
  std::size_t position() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const;

 private:
  Expression term(bool stop_before_vec);
  Expression factor();
  std::string identifier();
  std::string digits();

  std::string_view text_;
  std::size_t pos_ = 0;
};

Expression parse_expr(std::string_view text);
Point parse_point(std::string_view text);
SeqComb parse_vec(std::string_view text);
OperatorSymbol parse_operator(std::string_view text);
DualVector parse_dual(std::string_view text);

}  // namespace qpb

#endif
