#include "delsynth/parser.hpp"

#include <cctype>
#include <vector>

namespace delsynth {

ParseError::ParseError(std::size_t offset, const std::string& detail)
    : std::runtime_error("syntax error at offset " + std::to_string(offset) +
                         ": " + detail),
      offset_(offset) {}

namespace {

enum class Tok { Ident, Believes, Top, Bot, Not, And, Or, Implies, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '~':
        out.push_back({Tok::Not, "~", start});
        ++i;
        continue;
      case '&':
        out.push_back({Tok::And, "&", start});
        ++i;
        continue;
      case '|':
        out.push_back({Tok::Or, "|", start});
        ++i;
        continue;
      case '(':
        out.push_back({Tok::LParen, "(", start});
        ++i;
        continue;
      case ')':
        out.push_back({Tok::RParen, ")", start});
        ++i;
        continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Implies, "->", start});
          i += 2;
          continue;
        }
        throw ParseError(start, "stray '-' (did you mean '->'?)");
      default:
        break;
    }
    if (!ident_char(c))
      throw ParseError(start, std::string("unexpected character '") + c + "'");
    while (i < text.size() && ident_char(text[i])) ++i;
    std::string word = text.substr(start, i - start);
    if (word == "B")
      out.push_back({Tok::Believes, word, start});
    else if (word == "top")
      out.push_back({Tok::Top, word, start});
    else if (word == "bot")
      out.push_back({Tok::Bot, word, start});
    else
      out.push_back({Tok::Ident, word, start});
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula run() {
    Formula f = formula();
    if (peek().kind != Tok::End)
      throw ParseError(peek().offset, "unexpected input after formula");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  Token advance() { return tokens_[pos_++]; }

  bool accept(Tok kind) {
    if (peek().kind == kind) {
      ++pos_;
      return true;
    }
    return false;
  }

  Formula formula() {
    Formula lhs = or_expr();
    if (accept(Tok::Implies)) return Formula::impl(std::move(lhs), formula());
    return lhs;
  }

  Formula or_expr() {
    std::vector<Formula> parts{and_expr()};
    while (accept(Tok::Or)) parts.push_back(and_expr());
    return fold(std::move(parts), &Formula::disj);
  }

  Formula and_expr() {
    std::vector<Formula> parts{unary()};
    while (accept(Tok::And)) parts.push_back(unary());
    return fold(std::move(parts), &Formula::conj);
  }

  static Formula fold(std::vector<Formula> parts,
                      Formula (*combine)(Formula, Formula)) {
    Formula acc = std::move(parts.back());
    for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it)
      acc = combine(std::move(*it), std::move(acc));
    return acc;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::neg(unary());
    if (peek().kind == Tok::Believes) {
      advance();
      if (peek().kind != Tok::Ident)
        throw ParseError(peek().offset, "expected an agent name after 'B'");
      AgentId agent = advance().text;
      return Formula::believes(std::move(agent), unary());
    }
    return primary();
  }

  Formula primary() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Top:
        advance();
        return Formula::top();
      case Tok::Bot:
        advance();
        return Formula::bot();
      case Tok::Ident:
        return Formula::atom(advance().text);
      case Tok::LParen: {
        advance();
        Formula inner = formula();
        if (!accept(Tok::RParen))
          throw ParseError(peek().offset, "expected ')'");
        return inner;
      }
      default:
        throw ParseError(tok.offset, "expected a formula");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(const std::string& text) {
  Parser parser(lex(text));
  return desugar(parser.run());
}

}  // namespace delsynth
