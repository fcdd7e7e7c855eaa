#include "fgdict/fg_parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace fgdict::fg {

std::string SyntaxError::to_string() const {
  std::ostringstream os;
  os << "syntax error at " << line << ':' << column << ": " << message;
  return os.str();
}

namespace {

enum class Tok {
  Ident,
  KwType,
  KwStruct,
  KwInterface,
  KwFunc,
  KwMain,
  KwReturn,
  KwPackage,
  LBrace,
  RBrace,
  LParen,
  RParen,
  Dot,
  Comma,
  Assign,
  Underscore,
  Semi,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::KwType: return "'type'";
    case Tok::KwStruct: return "'struct'";
    case Tok::KwInterface: return "'interface'";
    case Tok::KwFunc: return "'func'";
    case Tok::KwMain: return "'main'";
    case Tok::KwReturn: return "'return'";
    case Tok::KwPackage: return "'package'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Assign: return "'='";
    case Tok::Underscore: return "'_'";
    case Tok::Semi: return "';'";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct ParseFail {
  SyntaxError err;
};

class Parser {
 public:
  explicit Parser(const std::string& src) { lex(src); }

  Program program() {
    if (at(Tok::KwPackage)) {
      advance();
      expect(Tok::KwMain, "'main' after 'package'");
      if (at(Tok::Semi)) advance();
    }
    Program p;
    while (!at(Tok::End)) {
      if (at(Tok::KwType)) {
        p.decls.push_back(type_decl());
        continue;
      }
      if (at(Tok::KwFunc)) {
        // 'func main()' ends the declaration list; 'func (x T) ...' is a method.
        if (peek(1).kind == Tok::KwMain) break;
        p.decls.push_back(method_decl());
        continue;
      }
      fail("expected 'type', 'func', or 'func main'");
    }
    expect(Tok::KwFunc, "'func main'");
    expect(Tok::KwMain, "'main'");
    expect(Tok::LParen, "'('");
    expect(Tok::RParen, "')'");
    expect(Tok::LBrace, "'{'");
    expect(Tok::Underscore, "'_'");
    expect(Tok::Assign, "'='");
    p.main = expr();
    expect(Tok::RBrace, "'}'");
    expect(Tok::End, "end of input after main");
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

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
      if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
        while (i < src.size() && src[i] != '\n') {
          bump(src[i]);
          ++i;
        }
        continue;
      }
      int tl = line, tc = col;
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
          bump(src[j]);
          ++j;
        }
        std::string word = src.substr(i, j - i);
        Tok kind = Tok::Ident;
        if (word == "type") kind = Tok::KwType;
        else if (word == "struct") kind = Tok::KwStruct;
        else if (word == "interface") kind = Tok::KwInterface;
        else if (word == "func") kind = Tok::KwFunc;
        else if (word == "main") kind = Tok::KwMain;
        else if (word == "return") kind = Tok::KwReturn;
        else if (word == "package") kind = Tok::KwPackage;
        toks_.push_back({kind, std::move(word), tl, tc});
        i = j;
        continue;
      }
      Tok kind;
      switch (c) {
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '.': kind = Tok::Dot; break;
        case ',': kind = Tok::Comma; break;
        case '=': kind = Tok::Assign; break;
        case '_': kind = Tok::Underscore; break;
        case ';': kind = Tok::Semi; break;
        default:
          toks_.push_back({Tok::End, std::string(1, c), tl, tc});
          throw ParseFail{{tl, tc, std::string("unexpected character '") + c + "'"}};
      }
      toks_.push_back({kind, std::string(1, c), tl, tc});
      bump(c);
      ++i;
    }
    toks_.push_back({Tok::End, "", line, col});
  }

  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t n) const {
    std::size_t i = pos_ + n;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool at(Tok k) const { return cur().kind == k; }
  void advance() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseFail{{cur().line, cur().column,
                     "expected " + expected + ", found " + tok_name(cur().kind)}};
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    Token t = cur();
    advance();
    return t;
  }

  std::string ident() { return expect(Tok::Ident, "identifier").text; }

  MethodSignature signature() {
    MethodSignature sig;
    expect(Tok::LParen, "'('");
    if (!at(Tok::RParen)) {
      for (;;) {
        std::string pn = ident();
        std::string pt = ident();
        sig.params.emplace_back(std::move(pn), std::move(pt));
        if (at(Tok::Comma)) {
          advance();
          continue;
        }
        break;
      }
    }
    expect(Tok::RParen, "')'");
    sig.result = ident();
    return sig;
  }

  Decl type_decl() {
    expect(Tok::KwType, "'type'");
    TypeDecl td;
    td.name = ident();
    if (at(Tok::KwStruct)) {
      advance();
      expect(Tok::LBrace, "'{'");
      StructLiteral lit;
      while (at(Tok::Ident)) {
        std::string fname = ident();
        std::string ftype = ident();
        lit.fields.emplace_back(std::move(fname), std::move(ftype));
      }
      expect(Tok::RBrace, "'}' or field declaration");
      td.literal = std::move(lit);
      return td;
    }
    if (at(Tok::KwInterface)) {
      advance();
      expect(Tok::LBrace, "'{'");
      InterfaceLiteral lit;
      while (at(Tok::Ident)) {
        MethodSpec spec;
        spec.name = ident();
        spec.sig = signature();
        lit.specs.push_back(std::move(spec));
      }
      expect(Tok::RBrace, "'}' or method specification");
      td.literal = std::move(lit);
      return td;
    }
    fail("'struct' or 'interface'");
  }

  Decl method_decl() {
    expect(Tok::KwFunc, "'func'");
    expect(Tok::LParen, "'('");
    MethodDecl md;
    md.receiver_var = ident();
    md.receiver_type = ident();
    expect(Tok::RParen, "')'");
    md.name = ident();
    md.sig = signature();
    expect(Tok::LBrace, "'{'");
    expect(Tok::KwReturn, "'return'");
    md.body = expr();
    expect(Tok::RBrace, "'}'");
    return md;
  }

  std::vector<ExprPtr> expr_list(Tok close) {
    std::vector<ExprPtr> args;
    if (!at(close)) {
      for (;;) {
        args.push_back(expr());
        if (at(Tok::Comma)) {
          advance();
          continue;
        }
        break;
      }
    }
    return args;
  }

  ExprPtr expr() {
    ExprPtr e = primary();
    while (at(Tok::Dot)) {
      advance();
      if (at(Tok::LParen)) {
        advance();
        std::string tname = ident();
        expect(Tok::RParen, "')'");
        e = make_assert(std::move(e), std::move(tname));
        continue;
      }
      std::string name = ident();
      if (at(Tok::LParen)) {
        advance();
        std::vector<ExprPtr> args = expr_list(Tok::RParen);
        expect(Tok::RParen, "')'");
        e = make_call(std::move(e), std::move(name), std::move(args));
      } else {
        e = make_select(std::move(e), std::move(name));
      }
    }
    return e;
  }

  ExprPtr primary() {
    std::string name = expect(Tok::Ident, "expression").text;
    if (at(Tok::LBrace)) {
      advance();
      std::vector<ExprPtr> args = expr_list(Tok::RBrace);
      expect(Tok::RBrace, "'}'");
      return make_struct_lit(std::move(name), std::move(args));
    }
    return make_var(std::move(name));
  }
};

}  // namespace

ParseResult parse_program(const std::string& source) {
  try {
    Parser p(source);
    return p.program();
  } catch (const ParseFail& f) {
    return f.err;
  }
}

}  // namespace fgdict::fg
