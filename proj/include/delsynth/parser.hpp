#pragma once

#include <stdexcept>
#include <string>

#include "delsynth/formula.hpp"

namespace delsynth {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& detail);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses the concrete formula syntax:
///
///   formula := or_expr ('->' formula)?          right-associative
///   or_expr := and_expr ('|' and_expr)*
///   and_expr := unary ('&' unary)*
///   unary := '~' unary | 'B' <agent> unary | primary
///   primary := 'top' | 'bot' | <atom> | '(' formula ')'
///
/// Atom and agent tokens are [A-Za-z0-9_]+ except the reserved words
/// B, top, bot. Conjunction and disjunction chains fold to the right,
/// and the sugar connectives |, -> are rewritten away, so the result is
/// always a desugared formula and parse(to_string(f)) == desugar(f).
///
/// Throws ParseError with the byte offset of the offending token.
Formula parse(const std::string& text);

}  // namespace delsynth
