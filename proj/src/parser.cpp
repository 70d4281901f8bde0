#include "freshml/parser.hpp"

#include <cctype>
#include <set>

namespace freshml {

namespace {

enum class Tok { Ident, UIdent, Atom, Obs, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"fun",  "let",  "in",  "match", "with", "fresh",
                                       "unbind", "fst", "snd", "if",   "then", "else",
                                       "fn",   "type", "and", "of",    "unit", "atm",
                                       "bnd",  "observe", "observations"};
  return k;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0, line = 1, col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '%';
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "--") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourceLoc loc{line, col};
    std::size_t start = i;
    if (c == '#') {
      if (i + 2 < src.size() && src[i + 1] == 'a' &&
          std::isdigit(static_cast<unsigned char>(src[i + 2]))) {
        advance(2);
        while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
        out.push_back({Tok::Atom, std::string(src.substr(start + 2, i - start - 2)), loc});
        continue;
      }
      throw Error(ErrorCode::Syntax, "malformed atom literal", loc);
    }
    if (c == '@') {
      advance(1);
      std::size_t s = i;
      while (i < src.size() && ident_char(src[i])) advance(1);
      if (i == s) throw Error(ErrorCode::Syntax, "observation name expected after @", loc);
      out.push_back({Tok::Obs, std::string(src.substr(s, i - s)), loc});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
      out.push_back({Tok::Number, std::string(src.substr(start, i - start)), loc});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '%') {
      while (i < src.size() && ident_char(src[i])) advance(1);
      std::string text(src.substr(start, i - start));
      Tok kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::UIdent : Tok::Ident;
      out.push_back({kind, std::move(text), loc});
      continue;
    }
    for (std::string_view sym : {"->", "=>"}) {
      if (src.substr(i, 2) == sym) {
        advance(2);
        out.push_back({Tok::Sym, std::string(sym), loc});
        goto next;
      }
    }
    if (std::string_view("()<>,=|;:*+-[]").find(c) != std::string_view::npos) {
      advance(1);
      out.push_back({Tok::Sym, std::string(1, c), loc});
      continue;
    }
    throw Error(ErrorCode::Syntax, std::string("unexpected character '") + c + "'", loc);
  next:;
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

using S = SurfaceExpr;

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  ProgramFile program() {
    ProgramFile p;
    while (true) {
      if (is_ident("type")) {
        declarations(p.decl);
      } else if (is_ident("observations") && peek(1).text == ":") {
        pos_ += 2;
        std::vector<std::string> names{ident_any()};
        while (accept_sym(",")) names.push_back(ident_any());
        accept_sym(";");
        if (!p.observations) p.observations.emplace();
        p.observations->insert(p.observations->end(), names.begin(), names.end());
      } else if (is_ident("observe")) {
        p.definitions.push_back(observe_def());
      } else {
        break;
      }
    }
    p.body = expr();
    expect_end();
    return p;
  }

  S whole_expr() {
    S e = expr();
    expect_end();
    return e;
  }

  Type whole_type() {
    Type t = type();
    expect_end();
    return t;
  }

 private:
  // -- token helpers --------------------------------------------------------
  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool is_ident(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  bool accept_sym(std::string_view s) {
    if (!is_sym(s)) return false;
    ++pos_;
    return true;
  }
  bool accept_ident(std::string_view s) {
    if (!is_ident(s)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorCode::Syntax, what + ", found " + found, t.loc);
  }
  void expect_sym(std::string_view s) {
    if (!accept_sym(s)) fail("expected '" + std::string(s) + "'");
  }
  void expect_ident(std::string_view s) {
    if (!accept_ident(s)) fail("expected '" + std::string(s) + "'");
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("expected end of input");
  }
  Variable variable() {
    if (peek().kind != Tok::Ident || keywords().count(peek().text)) fail("expected a variable");
    return take().text;
  }
  std::string ident_any() {
    if (peek().kind != Tok::Ident) fail("expected a name");
    return take().text;
  }
  std::string constructor() {
    if (peek().kind != Tok::UIdent) fail("expected a constructor");
    return take().text;
  }

  // -- declarations ---------------------------------------------------------
  void declarations(SignatureDecl& decl) {
    expect_ident("type");
    do {
      DataType d;
      d.loc = peek().loc;
      d.name = variable();
      expect_sym("=");
      do {
        Constructor c{constructor(), Type::unit()};
        if (accept_ident("of")) c.arg = type();
        d.constructors.push_back(std::move(c));
      } while (accept_sym("|"));
      decl.datatypes.push_back(std::move(d));
    } while (accept_ident("and"));
    expect_sym(";");
  }

  ObservationDef observe_def() {
    expect_ident("observe");
    ObservationDef def;
    def.affine = accept_ident("affine");
    def.name = ident_any();
    expect_sym("(");
    if (!is_sym(")")) {
      def.params.push_back(ident_any());
      while (accept_sym(",")) def.params.push_back(ident_any());
    }
    expect_sym(")");
    expect_sym("=");
    def.body = obs_term(def.params);
    expect_sym(";");
    return def;
  }

  std::size_t param_index(const std::vector<std::string>& params, const std::string& name) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i] == name) return i;
    }
    fail("unknown observation parameter " + name);
  }

  ObsTermPtr obs_term(const std::vector<std::string>& params) {
    if (accept_ident("if")) {
      auto t = std::make_shared<ObsTerm>();
      bool params_only = peek().kind == Tok::Ident && peek().text != "pos" &&
                         peek().text != "len" && is_sym("=", 1);
      if (params_only) {
        t->kind = ObsTerm::Kind::IfSameAtom;
        t->param = param_index(params, take().text);
        expect_sym("=");
        t->param2 = param_index(params, ident_any());
      } else {
        t->lhs = obs_sum(params);
        if (accept_sym("<")) t->kind = ObsTerm::Kind::IfLess;
        else if (accept_sym("=")) t->kind = ObsTerm::Kind::IfEqual;
        else fail("expected '<' or '='");
        t->rhs = obs_sum(params);
      }
      expect_ident("then");
      t->then_branch = obs_term(params);
      expect_ident("else");
      t->else_branch = obs_term(params);
      return t;
    }
    return obs_sum(params);
  }

  ObsTermPtr obs_sum(const std::vector<std::string>& params) {
    ObsTermPtr acc = obs_atom(params);
    while (is_sym("+") || is_sym("-")) {
      auto t = std::make_shared<ObsTerm>();
      t->kind = take().text == "+" ? ObsTerm::Kind::Add : ObsTerm::Kind::Sub;
      t->lhs = acc;
      t->rhs = obs_atom(params);
      acc = t;
    }
    return acc;
  }

  ObsTermPtr obs_atom(const std::vector<std::string>& params) {
    auto t = std::make_shared<ObsTerm>();
    if (peek().kind == Tok::Number) {
      t->kind = ObsTerm::Kind::Num;
      t->number = std::stoull(take().text);
    } else if (accept_ident("len")) {
      t->kind = ObsTerm::Kind::Len;
    } else if (accept_ident("pos")) {
      t->kind = ObsTerm::Kind::Pos;
      t->param = param_index(params, ident_any());
    } else if (accept_sym("(")) {
      ObsTermPtr inner = obs_term(params);
      expect_sym(")");
      return inner;
    } else {
      fail("expected an observation term");
    }
    return t;
  }

  // -- types ----------------------------------------------------------------
  Type type() {
    Type t = prod_type();
    if (accept_sym("->")) return Type::arrow(t, type());
    return t;
  }
  Type prod_type() {
    Type t = postfix_type();
    if (accept_sym("*")) return Type::prod(t, prod_type());
    return t;
  }
  Type postfix_type() {
    Type t = atomic_type();
    while (accept_ident("bnd")) t = Type::bnd(t);
    return t;
  }
  Type atomic_type() {
    if (accept_ident("unit")) return Type::unit();
    if (accept_ident("atm")) return Type::atm();
    if (accept_sym("(")) {
      Type t = type();
      expect_sym(")");
      return t;
    }
    return Type::data(variable());
  }

  // -- expressions ----------------------------------------------------------
  S expr() {
    SourceLoc loc = peek().loc;
    if (accept_ident("let")) {
      if (accept_sym("<")) {
        Variable a = variable();
        expect_sym(">");
        Variable b = variable();
        expect_sym("=");
        S bound = expr();
        expect_ident("in");
        return S::make(S::LetBind{a, b, bound, expr()}, loc);
      }
      Variable x = variable();
      expect_sym("=");
      S bound = expr();
      expect_ident("in");
      return S::make(S::Let{x, bound, expr()}, loc);
    }
    if (accept_ident("fn")) {
      auto [x, t] = binder();
      expect_sym("=>");
      return S::make(S::Lambda{x, t, expr()}, loc);
    }
    if (accept_ident("if")) {
      S c = expr();
      expect_ident("then");
      S t = expr();
      expect_ident("else");
      return S::make(S::If{c, t, expr()}, loc);
    }
    if (is_ident("fresh") && peek(1).kind == Tok::Ident && is_ident("in", 2)) {
      ++pos_;
      Variable x = variable();
      expect_ident("in");
      return S::make(S::FreshIn{x, expr()}, loc);
    }
    if (accept_ident("match")) {
      S scrutinee = expr();
      expect_ident("with");
      expect_sym("(");
      std::vector<SurfaceArm> arms;
      do {
        std::string c = constructor();
        Variable x;
        if (accept_sym("(")) {
          expect_sym(")");
          x = "_";
        } else {
          x = variable();
        }
        expect_sym("->");
        arms.push_back(SurfaceArm{c, x, expr()});
      } while (accept_sym("|"));
      expect_sym(")");
      return S::make(S::Match{scrutinee, std::move(arms)}, loc);
    }
    return application();
  }

  std::pair<Variable, std::optional<Type>> binder() {
    if (accept_sym("(")) {
      Variable x = variable();
      expect_sym(":");
      Type t = type();
      expect_sym(")");
      return {x, t};
    }
    return {variable(), std::nullopt};
  }

  bool starts_atomic() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
        return t.text == "fun" || (t.text == "fresh" && is_sym("(", 1)) ||
               !keywords().count(t.text);
      case Tok::Atom:
        return true;
      case Tok::Sym:
        return t.text == "(" || t.text == "<" || t.text == "[";
      default:
        return false;
    }
  }

  S application() {
    S acc = head();
    while (starts_atomic()) {
      SourceLoc loc = peek().loc;
      acc = S::make(S::App{acc, atomic()}, loc);
    }
    return acc;
  }

  S head() {
    SourceLoc loc = peek().loc;
    if (peek().kind == Tok::UIdent) {
      std::string c = take().text;
      return S::make(S::Con{c, atomic()}, loc);
    }
    if (accept_ident("fst")) return S::make(S::Fst{atomic()}, loc);
    if (accept_ident("snd")) return S::make(S::Snd{atomic()}, loc);
    if (accept_ident("unbind")) return S::make(S::Unbind{atomic()}, loc);
    if (peek().kind == Tok::Obs) {
      std::string name = take().text;
      std::vector<S> args;
      while (starts_atomic()) args.push_back(atomic());
      return S::make(S::Observe{name, std::move(args)}, loc);
    }
    return atomic();
  }

  S atomic() {
    SourceLoc loc = peek().loc;
    if (peek().kind == Tok::Atom) {
      return S::make(S::AtomLit{Atom{static_cast<std::uint32_t>(std::stoul(take().text))}}, loc);
    }
    if (accept_sym("(")) {
      if (accept_sym(")")) return S::make(S::Unit{}, loc);
      S first = expr();
      if (accept_sym(",")) {
        S second = expr();
        expect_sym(")");
        return S::make(S::Pair{first, second}, loc);
      }
      expect_sym(")");
      return first;
    }
    if (accept_sym("<")) {
      S a = expr();
      expect_sym(">");
      return S::make(S::Bind{a, atomic()}, loc);
    }
    if (accept_sym("[")) {
      expect_sym("-");
      expect_sym("]");
      return S::make(S::Hole{}, loc);
    }
    if (accept_ident("fun")) {
      expect_sym("(");
      Variable self = variable();
      auto [x, t] = binder();
      std::optional<Type> result;
      if (accept_sym(":")) result = type();
      expect_sym("=");
      S body = expr();
      expect_sym(")");
      return S::make(S::Fun{self, x, t, result, body}, loc);
    }
    if (accept_ident("fresh")) {
      expect_sym("(");
      expect_sym(")");
      return S::make(S::Fresh{}, loc);
    }
    if (peek().kind == Tok::UIdent) {
      std::string c = take().text;
      return S::make(S::Con{c, atomic()}, loc);
    }
    return S::make(S::Var{variable()}, loc);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

SurfaceExpr parse_surface(std::string_view text) { return Parser(text).whole_expr(); }
Type parse_type(std::string_view text) { return Parser(text).whole_type(); }
ProgramFile parse_program(std::string_view text) { return Parser(text).program(); }

Expr parse_expr(std::string_view text) { return desugar(parse_surface(text)); }

Value parse_value(std::string_view text) {
  Expr e = parse_expr(text);
  if (!e.is_value()) throw Error(ErrorCode::Syntax, "expected a value");
  return e.as_val()->value;
}

}  // namespace freshml
