#include <cctype>
#include <map>
#include <optional>

#include "poslab/expr.hpp"

namespace poslab {
namespace {

enum class Tok { ident, number, plus, star, slash, caret, lparen, rparen, comma, semi, equals, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::ident, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::number, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::plus; break;
      case '*': k = Tok::star; break;
      case '/': k = Tok::slash; break;
      case '^': k = Tok::caret; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ',': k = Tok::comma; break;
      case ';': k = Tok::semi; break;
      case '=': k = Tok::equals; break;
      case '-': throw MinusSignRejected("minus sign at offset " + std::to_string(i) + ": expressions must be subtraction-free");
      default: throw SyntaxError(std::string("unexpected character '") + c + "' at offset " + std::to_string(i));
    }
    out.push_back({k, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

std::optional<std::size_t> variable_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 't') return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  return std::stoul(name.substr(1));
}

class Parser {
 public:
  Parser(const std::string& text, std::size_t arity) : toks_(lex(text)), b_(arity), arity_(arity) {}

  Expr program() {
    while (peek().kind == Tok::ident && toks_[pos_ + 1].kind == Tok::equals) {
      const std::string name = next().text;
      if (variable_index(name)) throw SyntaxError("cannot rebind variable " + name);
      if (bindings_.count(name)) throw SyntaxError("duplicate binding " + name);
      next();  // '='
      bindings_[name] = expr();
      expect(Tok::semi, "';' after binding");
    }
    std::vector<std::uint32_t> outs;
    if (is_tuple()) {
      next();
      outs.push_back(expr());
      while (peek().kind == Tok::comma) {
        next();
        outs.push_back(expr());
      }
      expect(Tok::rparen, "')' closing the output tuple");
    } else {
      outs.push_back(expr());
    }
    if (peek().kind == Tok::semi) next();
    if (peek().kind != Tok::end) fail("trailing input");
    return b_.finish(std::move(outs));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError(what + " at offset " + std::to_string(peek().pos));
  }

  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail("expected " + what);
    next();
  }

  // A top-level '(' whose matching ')' ends the statement and which contains a comma.
  bool is_tuple() const {
    if (peek().kind != Tok::lparen) return false;
    int depth = 0;
    bool comma = false;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      const Tok k = toks_[i].kind;
      if (k == Tok::lparen) ++depth;
      if (k == Tok::rparen && --depth == 0) {
        const Tok after = toks_[i + 1].kind;
        return comma && (after == Tok::end || after == Tok::semi);
      }
      if (k == Tok::comma && depth == 1) comma = true;
      if (k == Tok::end) return false;
    }
    return false;
  }

  std::uint32_t expr() {
    std::uint32_t r = term();
    while (peek().kind == Tok::plus) {
      next();
      r = b_.add(r, term());
    }
    return r;
  }

  std::uint32_t term() {
    std::uint32_t r = factor();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      const bool is_div = next().kind == Tok::slash;
      const std::uint32_t f = factor();
      r = is_div ? b_.div(r, f) : b_.mul(r, f);
    }
    return r;
  }

  std::uint32_t factor() {
    std::uint32_t r = primary();
    if (peek().kind == Tok::caret) {
      next();
      if (peek().kind != Tok::number) fail("expected integer exponent");
      const unsigned long k = std::stoul(next().text);
      if (k == 0 || k > 64) fail("exponent out of range");
      r = b_.pow(r, static_cast<unsigned>(k));
    }
    return r;
  }

  std::uint32_t primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::number: {
        next();
        if (t.text.size() > 18) throw SyntaxError("constant too large: " + t.text);
        return b_.constant(std::stoull(t.text));
      }
      case Tok::ident: {
        next();
        if (auto it = bindings_.find(t.text); it != bindings_.end()) return it->second;
        if (auto v = variable_index(t.text)) {
          if (*v < 1 || *v > arity_) throw UnknownVariable("unknown variable " + t.text + " (arity " + std::to_string(arity_) + ")");
          return b_.variable(*v - 1);
        }
        throw UnknownVariable("unknown name " + t.text);
      }
      case Tok::lparen: {
        next();
        const std::uint32_t r = expr();
        expect(Tok::rparen, "')'");
        return r;
      }
      default:
        fail("unexpected token '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Expr::Builder b_;
  std::size_t arity_;
  std::map<std::string, std::uint32_t> bindings_;
};

}  // namespace

Expr parse_expr(const std::string& text, std::size_t arity) { return Parser(text, arity).program(); }

}  // namespace poslab
