#include "invariantlab/parser.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <unordered_set>

namespace invariantlab {

bool ParseResult::ok() const {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return false;
  }
  return true;
}

namespace {

enum class Tok {
  Ident,
  Keyword,
  Int,
  Assign,     // :=
  Colon,
  Semicolon,
  Comma,
  Dot,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Plus,
  Minus,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Arrow,      // => (implication)
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  SourcePos pos;
};

const std::unordered_set<std::string> kKeywords = {
    "class", "inherit", "create", "feature", "end",     "invariant", "require",
    "do",    "ensure",  "constant", "detachable", "if", "then",      "else",
    "from",  "until",   "loop",   "old",     "and",     "or",        "not",
    "implies", "True",  "False",  "Void",    "Current", "Result"};

struct ParseError : std::runtime_error {
  SourcePos pos;
  ParseError(SourcePos p, const std::string& msg) : std::runtime_error(msg), pos(std::move(p)) {}
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.pos = here();
      if (at_end()) {
        t.kind = Tok::Eof;
        out.push_back(t);
        return out;
      }
      unsigned char c = peek();
      if (std::isalpha(c) || c == '_') {
        std::string word;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
          word += advance();
        }
        t.kind = kKeywords.count(word) ? Tok::Keyword : Tok::Ident;
        t.text = std::move(word);
      } else if (std::isdigit(c)) {
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += advance();
        t.kind = Tok::Int;
        t.text = std::move(digits);
      } else if (text_.substr(pos_, 3) == "\xE2\x89\xA0") {  // U+2260 NOT EQUAL TO
        advance_n(3);
        t.kind = Tok::Ne;
        t.text = "/=";
      } else if (text_.substr(pos_, 3) == "\xE2\x87\x92") {  // U+21D2 RIGHTWARDS DOUBLE ARROW
        advance_n(3);
        t.kind = Tok::Arrow;
        t.text = "=>";
      } else {
        t.text = std::string(1, advance());
        char n = at_end() ? '\0' : peek();
        switch (c) {
          case ':':
            if (n == '=') { advance(); t.kind = Tok::Assign; t.text = ":="; }
            else t.kind = Tok::Colon;
            break;
          case ';': t.kind = Tok::Semicolon; break;
          case ',': t.kind = Tok::Comma; break;
          case '.': t.kind = Tok::Dot; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          case '+': t.kind = Tok::Plus; break;
          case '-': t.kind = Tok::Minus; break;
          case '=':
            if (n == '>') { advance(); t.kind = Tok::Arrow; t.text = "=>"; }
            else t.kind = Tok::Eq;
            break;
          case '/':
            if (n == '=') { advance(); t.kind = Tok::Ne; t.text = "/="; }
            else throw ParseError(t.pos, "unexpected character '/'");
            break;
          case '<':
            if (n == '=') { advance(); t.kind = Tok::Le; t.text = "<="; }
            else t.kind = Tok::Lt;
            break;
          case '>':
            if (n == '=') { advance(); t.kind = Tok::Ge; t.text = ">="; }
            else t.kind = Tok::Gt;
            break;
          default:
            throw ParseError(t.pos, "unexpected character '" + t.text + "'");
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  SourcePos here() const { return {file_, line_, col_}; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;  // count code points, not bytes
    }
    return c;
  }

  void advance_n(int n) {
    for (int k = 0; k < n; ++k) advance();
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ParseResult run() {
    ParseResult out;
    while (!at(Tok::Eof)) {
      std::size_t start = i_;
      try {
        out.classes.push_back(parse_class());
      } catch (const ParseError& e) {
        out.diagnostics.push_back({e.pos, e.what(), Severity::Error});
        i_ = std::max(i_, start + 1);
        while (!at(Tok::Eof) && !at_kw("class")) ++i_;
      }
    }
    return out;
  }

 private:
  const Token& cur() const { return toks_[i_]; }
  const Token& next() const { return toks_[std::min(i_ + 1, toks_.size() - 1)]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool at_kw(const char* kw) const { return cur().kind == Tok::Keyword && cur().text == kw; }

  [[noreturn]] void fail(const std::string& msg) const {
    std::string found = at(Tok::Eof) ? "end of input" : "'" + cur().text + "'";
    throw ParseError(cur().pos, msg + ", found " + found);
  }

  Token take() { return toks_[i_++]; }

  Token expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return take();
  }

  void expect_kw(const char* kw) {
    if (!at_kw(kw)) fail(std::string("expected '") + kw + "'");
    take();
  }

  bool accept(Tok k) {
    if (!at(k)) return false;
    take();
    return true;
  }

  bool accept_kw(const char* kw) {
    if (!at_kw(kw)) return false;
    take();
    return true;
  }

  std::string ident(const char* what) { return expect(Tok::Ident, what).text; }

  std::vector<std::string> idlist() {
    std::vector<std::string> ids{ident("identifier")};
    while (accept(Tok::Comma)) ids.push_back(ident("identifier"));
    return ids;
  }

  std::vector<std::string> braced_idlist() {
    expect(Tok::LBrace, "'{'");
    std::vector<std::string> ids;
    if (!at(Tok::RBrace)) ids = idlist();
    expect(Tok::RBrace, "'}'");
    return ids;
  }

  TypeRef parse_type() {
    TypeRef t;
    if (accept_kw("detachable")) t.detachable = true;
    t.base = ident("type name");
    return t;
  }

  ClassDecl parse_class() {
    ClassDecl c;
    c.pos = cur().pos;
    expect_kw("class");
    c.name = ident("class name");
    if (accept_kw("inherit")) c.parent = ident("parent class name");
    if (accept_kw("create")) {
      c.has_create_clause = true;
      c.create_exports = at(Tok::LBrace) ? ExportSet::of(braced_idlist()) : ExportSet::all();
      c.creators = idlist();
    }
    while (accept_kw("feature")) {
      ExportSet exports = at(Tok::LBrace) ? ExportSet::of(braced_idlist()) : ExportSet::all();
      while (at(Tok::Ident)) c.features.push_back(parse_feature(exports));
    }
    if (accept_kw("invariant")) c.invariant = parse_clauses(Context{});
    expect_kw("end");
    return c;
  }

  struct Context {
    bool old_allowed = false;
    bool result_allowed = false;
  };

  FeatureDecl parse_feature(const ExportSet& exports) {
    FeatureDecl f;
    f.pos = cur().pos;
    f.name = ident("feature name");
    f.exports = exports;
    if (accept(Tok::LParen)) {
      do {
        auto names = idlist();
        expect(Tok::Colon, "':'");
        TypeRef t = parse_type();
        for (auto& n : names) f.formals.push_back({std::move(n), t});
      } while (accept(Tok::Semicolon));
      expect(Tok::RParen, "')'");
    }
    if (accept(Tok::Colon)) f.result = parse_type();

    if (accept_kw("constant")) {
      if (!f.result || !f.formals.empty()) {
        throw ParseError(f.pos, "constant '" + f.name + "' needs a type and no arguments");
      }
      bool negative = accept(Tok::Minus);
      Token v = expect(Tok::Int, "integer literal");
      f.kind = FeatureDecl::Kind::Constant;
      f.constant_value = to_int(v) * (negative ? -1 : 1);
      return f;
    }
    if (at_kw("require") || at_kw("do")) {
      f.kind = FeatureDecl::Kind::Routine;
      Context pre{false, false};
      Context body{false, f.result.has_value()};
      Context post{true, f.result.has_value()};
      if (accept_kw("require")) f.require = parse_clauses(pre);
      expect_kw("do");
      f.body = parse_instrs(body);
      if (accept_kw("ensure")) f.ensure = parse_clauses(post);
      expect_kw("end");
      return f;
    }
    if (!f.result || !f.formals.empty()) {
      throw ParseError(f.pos, "attribute '" + f.name + "' needs a type and no arguments");
    }
    f.kind = FeatureDecl::Kind::Attribute;
    return f;
  }

  std::int64_t to_int(const Token& t) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{}) throw ParseError(t.pos, "integer literal out of range");
    return v;
  }

  bool starts_expr() const {
    switch (cur().kind) {
      case Tok::Ident:
      case Tok::Int:
      case Tok::LParen:
      case Tok::Minus:
        return true;
      case Tok::Keyword:
        return at_kw("True") || at_kw("False") || at_kw("Void") || at_kw("Current") ||
               at_kw("Result") || at_kw("old") || at_kw("not");
      default:
        return false;
    }
  }

  std::vector<AssertionClause> parse_clauses(const Context& ctx) {
    std::vector<AssertionClause> out;
    while (starts_expr()) {
      AssertionClause c;
      if (at(Tok::Ident) && next().kind == Tok::Colon) {
        c.tag = take().text;
        take();
      }
      c.expr = parse_expr(ctx);
      out.push_back(std::move(c));
      accept(Tok::Semicolon);
    }
    return out;
  }

  bool starts_instr() const {
    return at(Tok::Ident) || at(Tok::LParen) || at_kw("Result") || at_kw("Current") ||
           at_kw("create") || at_kw("if") || at_kw("from");
  }

  std::vector<Instr> parse_instrs(const Context& ctx) {
    std::vector<Instr> out;
    while (starts_instr()) {
      out.push_back(parse_instr(ctx));
      while (accept(Tok::Semicolon)) {
      }
    }
    return out;
  }

  Instr parse_instr(const Context& ctx) {
    Instr in;
    in.pos = cur().pos;
    if (accept_kw("create")) {
      in.kind = Instr::Kind::Create;
      if (at_kw("Result")) {
        if (!ctx.result_allowed) throw ParseError(cur().pos, "'Result' outside a function");
        in.target = take().text;
      } else {
        in.target = ident("creation target");
      }
      if (accept(Tok::Dot)) {
        in.creator = ident("creation procedure name");
        if (accept(Tok::LParen)) in.args = parse_args(ctx);
      }
      return in;
    }
    if (accept_kw("if")) {
      in.kind = Instr::Kind::If;
      in.expr = parse_expr(ctx);
      expect_kw("then");
      in.then_branch = parse_instrs(ctx);
      if (accept_kw("else")) in.else_branch = parse_instrs(ctx);
      expect_kw("end");
      return in;
    }
    if (accept_kw("from")) {
      in.kind = Instr::Kind::Loop;
      in.init = parse_instrs(ctx);
      expect_kw("until");
      in.expr = parse_expr(ctx);
      expect_kw("loop");
      in.body = parse_instrs(ctx);
      expect_kw("end");
      return in;
    }
    if ((at(Tok::Ident) || at_kw("Result")) && next().kind == Tok::Assign) {
      if (at_kw("Result") && !ctx.result_allowed) {
        throw ParseError(cur().pos, "'Result' outside a function");
      }
      in.kind = Instr::Kind::Assign;
      in.target = take().text;
      take();
      in.expr = parse_expr(ctx);
      return in;
    }
    in.kind = Instr::Kind::Call;
    in.expr = parse_postfix(ctx);
    auto k = in.expr->kind;
    if (k != Expr::Kind::Name && k != Expr::Kind::Call && k != Expr::Kind::Qualified) {
      throw ParseError(in.pos, "instruction must be an assignment, call, creation, if or loop");
    }
    return in;
  }

  std::vector<ExprPtr> parse_args(const Context& ctx) {
    std::vector<ExprPtr> args;
    if (!at(Tok::RParen)) {
      do {
        args.push_back(parse_expr(ctx));
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen, "')'");
    return args;
  }

  // implies (right associative) < or < and < not < comparison < additive < unary < postfix
  ExprPtr parse_expr(const Context& ctx) { return parse_implies(ctx); }

  ExprPtr parse_implies(const Context& ctx) {
    ExprPtr lhs = parse_or(ctx);
    if (at_kw("implies") || at(Tok::Arrow)) {
      SourcePos pos = take().pos;
      return make_binary(Op::Implies, lhs, parse_implies(ctx), pos);
    }
    return lhs;
  }

  ExprPtr parse_or(const Context& ctx) {
    ExprPtr lhs = parse_and(ctx);
    while (at_kw("or")) {
      SourcePos pos = take().pos;
      lhs = make_binary(Op::Or, lhs, parse_and(ctx), pos);
    }
    return lhs;
  }

  ExprPtr parse_and(const Context& ctx) {
    ExprPtr lhs = parse_not(ctx);
    while (at_kw("and")) {
      SourcePos pos = take().pos;
      lhs = make_binary(Op::And, lhs, parse_not(ctx), pos);
    }
    return lhs;
  }

  ExprPtr parse_not(const Context& ctx) {
    if (at_kw("not")) {
      SourcePos pos = take().pos;
      return make_unary(Op::Not, parse_not(ctx), pos);
    }
    return parse_comparison(ctx);
  }

  ExprPtr parse_comparison(const Context& ctx) {
    ExprPtr lhs = parse_additive(ctx);
    Op op;
    switch (cur().kind) {
      case Tok::Eq: op = Op::Eq; break;
      case Tok::Ne: op = Op::Ne; break;
      case Tok::Lt: op = Op::Lt; break;
      case Tok::Le: op = Op::Le; break;
      case Tok::Gt: op = Op::Gt; break;
      case Tok::Ge: op = Op::Ge; break;
      default: return lhs;
    }
    SourcePos pos = take().pos;
    return make_binary(op, lhs, parse_additive(ctx), pos);
  }

  ExprPtr parse_additive(const Context& ctx) {
    ExprPtr lhs = parse_unary(ctx);
    while (at(Tok::Plus) || at(Tok::Minus)) {
      Op op = at(Tok::Plus) ? Op::Add : Op::Sub;
      SourcePos pos = take().pos;
      lhs = make_binary(op, lhs, parse_unary(ctx), pos);
    }
    return lhs;
  }

  ExprPtr parse_unary(const Context& ctx) {
    if (at(Tok::Minus)) {
      SourcePos pos = take().pos;
      if (at(Tok::Int)) return make_int(-to_int(take()), pos);
      return make_unary(Op::Neg, parse_unary(ctx), pos);
    }
    if (at_kw("old")) {
      SourcePos pos = take().pos;
      if (!ctx.old_allowed) throw ParseError(pos, "'old' outside a postcondition");
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Old;
      e->pos = pos;
      e->lhs = parse_unary(ctx);
      return e;
    }
    return parse_postfix(ctx);
  }

  ExprPtr parse_postfix(const Context& ctx) {
    ExprPtr e = parse_primary(ctx);
    while (at(Tok::Dot)) {
      SourcePos pos = take().pos;
      std::string name = ident("feature name");
      std::vector<ExprPtr> args;
      if (accept(Tok::LParen)) args = parse_args(ctx);
      e = make_qualified(e, std::move(name), std::move(args), pos);
    }
    return e;
  }

  ExprPtr parse_primary(const Context& ctx) {
    const Token& t = cur();
    SourcePos pos = t.pos;
    switch (t.kind) {
      case Tok::Int:
        return make_int(to_int(take()), pos);
      case Tok::LParen: {
        take();
        ExprPtr e = parse_expr(ctx);
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        std::string name = take().text;
        if (accept(Tok::LParen)) return make_call(std::move(name), parse_args(ctx), pos);
        return make_name(std::move(name), pos);
      }
      case Tok::Keyword:
        if (accept_kw("True")) return make_bool(true, pos);
        if (accept_kw("False")) return make_bool(false, pos);
        if (accept_kw("Void")) return make_void(pos);
        if (accept_kw("Current")) return make_current(pos);
        if (at_kw("Result")) {
          if (!ctx.result_allowed) throw ParseError(pos, "'Result' outside a function");
          take();
          auto e = std::make_shared<Expr>();
          e->kind = Expr::Kind::Result;
          e->pos = pos;
          return e;
        }
        break;
      default:
        break;
    }
    fail("expected expression");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text, std::string file) {
  std::vector<Token> toks;
  try {
    toks = Lexer(text, file).run();
  } catch (const ParseError& e) {
    ParseResult r;
    r.diagnostics.push_back({e.pos, std::string("lexical error: ") + e.what(), Severity::Error});
    return r;
  }
  return Parser(std::move(toks)).run();
}

}  // namespace invariantlab
