#include "kvn/parser.hpp"

#include <cctype>

namespace kvn {

namespace {

struct Token {
  enum Kind { Ident, Int, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind;
  std::string text;
  long pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_])))
      ++i_;
    long pos = static_cast<long>(i_);
    if (i_ >= text_.size()) {
      current_ = {Token::End, "", pos};
      return;
    }
    char c = text_[i_];
    auto single = [&](Token::Kind k) {
      ++i_;
      current_ = {k, std::string(1, c), pos};
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i_;
      while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j])))
        ++j;
      current_ = {Token::Int, text_.substr(i_, j - i_), pos};
      i_ = j;
      return;
    }
    if (c >= 'a' && c <= 'z') {
      size_t j = i_ + 1;
      while (j < text_.size() &&
             (std::islower(static_cast<unsigned char>(text_[j])) ||
              std::isdigit(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
        ++j;
      if (j < text_.size() && text_[j] == '~') ++j;  // tilde suffix is part of the name
      current_ = {Token::Ident, text_.substr(i_, j - i_), pos};
      i_ = j;
      return;
    }
    switch (c) {
      case '+': return single(Token::Plus);
      case '-': return single(Token::Minus);
      case '*': return single(Token::Star);
      case '/': return single(Token::Slash);
      case '^': return single(Token::Caret);
      case '(': return single(Token::LParen);
      case ')': return single(Token::RParen);
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos);
    }
  }

  const std::string& text_;
  size_t i_ = 0;
  Token current_{Token::End, "", 0};
};

class Parser {
 public:
  Parser(const std::string& text, const SymbolScope& scope)
      : lex_(text), scope_(scope) {}

  Expr parse() {
    Expr e = sum();
    if (lex_.peek().kind != Token::End)
      throw ParseError("trailing input", lex_.peek().pos);
    return e;
  }

 private:
  Expr sum() {
    Expr acc = product();
    while (true) {
      auto k = lex_.peek().kind;
      if (k == Token::Plus) {
        lex_.take();
        acc += product();
      } else if (k == Token::Minus) {
        lex_.take();
        acc -= product();
      } else {
        return acc;
      }
    }
  }

  Expr product() {
    Expr acc = unary();
    while (true) {
      auto k = lex_.peek().kind;
      if (k == Token::Star) {
        lex_.take();
        acc *= unary();
      } else if (k == Token::Slash) {
        Token t = lex_.take();
        Expr d = unary();
        try {
          acc = acc.divided_by(d);
        } catch (const Error& err) {
          throw ParseError(err.what(), t.pos);
        }
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (lex_.peek().kind == Token::Minus) {
      lex_.take();
      return -unary();
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (lex_.peek().kind == Token::Caret) {
      Token t = lex_.take();
      if (lex_.peek().kind != Token::Int)
        throw ParseError("exponent must be a nonnegative integer", t.pos);
      Token e = lex_.take();
      base = base.pow(std::stoi(e.text));
    }
    return base;
  }

  Expr primary() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Int:
        return Expr::scalar(Scalar(CRational(Rational(t.text))));
      case Token::LParen: {
        Expr e = sum();
        if (lex_.peek().kind != Token::RParen)
          throw ParseError("expected ')'", lex_.peek().pos);
        lex_.take();
        return e;
      }
      case Token::Ident: {
        if (t.text == "hbar") return Expr::scalar(Scalar::hbar());
        if (t.text == "i") return Expr::scalar(Scalar::i());
        if (auto sym = scope_.lookup(t.text)) return Expr(*sym);
        throw ParseError("undeclared identifier '" + t.text + "'", t.pos);
      }
      default:
        throw ParseError("expected a value", t.pos);
    }
  }

  Lexer lex_;
  const SymbolScope& scope_;
};

}  // namespace

Expr parse_expr(const std::string& text, const SymbolScope& scope) {
  return Parser(text, scope).parse();
}

}  // namespace kvn
