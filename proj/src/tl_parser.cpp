#include "fgdict/tl_parser.hpp"

#include <cctype>
#include <sstream>

namespace fgdict::tl {

std::string TLSyntaxError::to_string() const {
  std::ostringstream os;
  os << "tl syntax error at " << line << ':' << column << ": " << message;
  return os.str();
}

namespace {

enum class Tok {
  Ident,
  KwLet,
  KwIn,
  KwCase,
  KwOf,
  Lambda,
  Dot,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Semi,
  Arrow,
  Assign,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

struct ParseFail {
  TLSyntaxError err;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '%';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '%';
}

class Parser {
 public:
  explicit Parser(const std::string& src) {
    lex(src);
    for (const auto& t : toks_) {
      if (t.kind != Tok::Ident || t.text.size() < 2 || t.text[0] != '%') continue;
      bool digits = true;
      std::uint64_t v = 0;
      for (std::size_t i = 1; i < t.text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(t.text[i]))) {
          digits = false;
          break;
        }
        v = v * 10 + static_cast<std::uint64_t>(t.text[i] - '0');
      }
      if (digits && v > fresh_) fresh_ = v;
    }
  }

  TLProgram program() {
    TLProgram p;
    if (at(Tok::KwLet)) {
      advance();
      while (!at(Tok::KwIn)) {
        std::string name = ident();
        expect(Tok::Assign, "'='");
        p.bindings.add(name, expr());
        if (at(Tok::Semi)) {
          advance();
          continue;
        }
        break;
      }
      expect(Tok::KwIn, "'in'");
    }
    p.main = expr();
    expect(Tok::End, "end of input");
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::uint64_t fresh_ = 0;

  std::string fresh_var() { return "%" + std::to_string(++fresh_); }

  void lex(const std::string& src) {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto bump = [&](char c) {
      if (c == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    };
    while (i < src.size()) {
      char c = src[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump(c);
        ++i;
        continue;
      }
      if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
        while (i < src.size() && src[i] != '\n') {
          bump(src[i]);
          ++i;
        }
        continue;
      }
      int tl = line, tc = col;
      if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
        toks_.push_back({Tok::Arrow, "->", tl, tc});
        bump(c);
        bump('>');
        i += 2;
        continue;
      }
      if (ident_start(c)) {
        std::size_t j = i + 1;
        bump(c);
        while (j < src.size() && ident_char(src[j])) {
          bump(src[j]);
          ++j;
        }
        std::string word = src.substr(i, j - i);
        Tok kind = Tok::Ident;
        if (word == "let") kind = Tok::KwLet;
        else if (word == "in") kind = Tok::KwIn;
        else if (word == "case") kind = Tok::KwCase;
        else if (word == "of") kind = Tok::KwOf;
        toks_.push_back({kind, std::move(word), tl, tc});
        i = j;
        continue;
      }
      Tok kind;
      switch (c) {
        case '\\': kind = Tok::Lambda; break;
        case '.': kind = Tok::Dot; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case ',': kind = Tok::Comma; break;
        case ';': kind = Tok::Semi; break;
        case '=': kind = Tok::Assign; break;
        default:
          throw ParseFail{{tl, tc, std::string("unexpected character '") + c + "'"}};
      }
      toks_.push_back({kind, std::string(1, c), tl, tc});
      bump(c);
      ++i;
    }
    toks_.push_back({Tok::End, "", line, col});
  }

  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok k) const { return cur().kind == k; }
  void advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseFail{{cur().line, cur().column, "expected " + expected}};
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    Token t = cur();
    advance();
    return t;
  }

  std::string ident() { return expect(Tok::Ident, "identifier").text; }

  static bool is_con_name(const std::string& name) {
    if (name.rfind("K_", 0) == 0) return true;
    return tuple_arity(name).has_value();
  }

  TLExprPtr name_to_expr(const std::string& name) {
    if (name.find('$') != std::string::npos) return make_method_var(name);
    if (is_con_name(name)) return make_con(name);
    return make_var(name);
  }

  TLExprPtr expr() {
    if (at(Tok::Lambda)) {
      advance();
      if (at(Tok::LParen)) {
        // \(x1,...,xn). E  desugars to  \%f. case %f of (x1,...,xn) -> E
        advance();
        std::vector<std::string> vars;
        if (!at(Tok::RParen)) {
          for (;;) {
            vars.push_back(ident());
            if (at(Tok::Comma)) {
              advance();
              if (at(Tok::RParen)) break;  // trailing comma (1-tuple)
              continue;
            }
            break;
          }
        }
        expect(Tok::RParen, "')'");
        expect(Tok::Dot, "'.'");
        TLExprPtr body = expr();
        std::string scrut = fresh_var();
        return make_lam(scrut,
                        make_case(make_var(scrut),
                                  {Clause{tuple_con(vars.size()), std::move(vars), std::move(body)}}));
      }
      std::string param = ident();
      expect(Tok::Dot, "'.'");
      return make_lam(std::move(param), expr());
    }
    if (at(Tok::KwCase)) {
      advance();
      TLExprPtr scrut = expr();
      expect(Tok::KwOf, "'of'");
      expect(Tok::LBrace, "'{'");
      std::vector<Clause> clauses;
      if (!at(Tok::RBrace)) {
        for (;;) {
          append_clause(clauses);
          if (at(Tok::Semi)) {
            advance();
            continue;
          }
          break;
        }
      }
      expect(Tok::RBrace, "'}'");
      return make_case(std::move(scrut), std::move(clauses));
    }
    // Application chain.
    TLExprPtr e = atom();
    while (at(Tok::Ident) || at(Tok::LParen)) e = make_app(e, atom());
    return e;
  }

  TLExprPtr atom() {
    if (at(Tok::Ident)) {
      std::string name = ident();
      return name_to_expr(name);
    }
    expect(Tok::LParen, "expression");
    if (at(Tok::RParen)) {
      advance();
      return make_con(tuple_con(0));
    }
    std::vector<TLExprPtr> items;
    items.push_back(expr());
    bool tuple = false;
    while (at(Tok::Comma)) {
      tuple = true;
      advance();
      if (at(Tok::RParen)) break;  // trailing comma
      items.push_back(expr());
    }
    expect(Tok::RParen, "')'");
    if (!tuple) return items.front();
    return make_tuple(items);
  }

  void append_clause(std::vector<Clause>& out) {
    if (at(Tok::LParen)) {
      // Bare tuple pattern.
      advance();
      std::vector<std::string> vars;
      if (!at(Tok::RParen)) {
        for (;;) {
          vars.push_back(ident());
          if (at(Tok::Comma)) {
            advance();
            if (at(Tok::RParen)) break;
            continue;
          }
          break;
        }
      }
      expect(Tok::RParen, "')'");
      expect(Tok::Arrow, "'->'");
      out.push_back({tuple_con(vars.size()), std::move(vars), expr()});
      return;
    }
    std::string con = ident();
    if (at(Tok::LParen)) {
      // K (x1,...,xn) -> E  desugars to  K %f -> case %f of (x1,...,xn) -> E
      advance();
      std::vector<std::string> vars;
      if (!at(Tok::RParen)) {
        for (;;) {
          vars.push_back(ident());
          if (at(Tok::Comma)) {
            advance();
            if (at(Tok::RParen)) break;
            continue;
          }
          break;
        }
      }
      expect(Tok::RParen, "')'");
      expect(Tok::Arrow, "'->'");
      TLExprPtr body = expr();
      std::string payload = fresh_var();
      TLExprPtr inner = make_case(make_var(payload),
                                  {Clause{tuple_con(vars.size()), std::move(vars), std::move(body)}});
      out.push_back({std::move(con), {payload}, std::move(inner)});
      return;
    }
    std::vector<std::string> vars;
    while (at(Tok::Ident)) vars.push_back(ident());
    expect(Tok::Arrow, "'->'");
    out.push_back({std::move(con), std::move(vars), expr()});
  }
};

}  // namespace

TLParseResult parse_program(const std::string& source) {
  try {
    Parser p(source);
    return p.program();
  } catch (const ParseFail& f) {
    return f.err;
  }
}

}  // namespace fgdict::tl
