#include "parser.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

#include "olam/overloaded.hpp"
#include "olam/surface.hpp"

namespace olam {

namespace detail {

bool is_reserved(std::string_view word) {
  static constexpr std::array<std::string_view, 10> kWords = {
      "forall", "choose", "efq", "Oplus", "Sigma", "Bot", "Pi", "type", "const", "import"};
  for (auto w : kWords)
    if (w == word) return true;
  return false;
}

bool Parser::boundary(std::size_t index) const {
  const Token& t = toks_[index];
  if (t.kind == Tok::End) return true;
  if (line_limit_ && t.pos.line != *line_limit_) return true;
  if (statement_mode_ && index != stmt_start_ && t.pos.column == 1) return true;
  return false;
}

const Token& Parser::peek() const {
  if (!boundary(i_)) return toks_[i_];
  static thread_local Token end;
  end = Token{Tok::End, "", toks_[i_].pos};
  return end;
}

Token Parser::advance() {
  if (boundary(i_)) fail("unexpected end of expression");
  return toks_[i_++];
}

void Parser::fail(const std::string& message) const {
  throw Error(ErrorCode::SyntaxError, message, toks_[i_].pos);
}

Token Parser::expect(Tok k, std::string_view what) {
  const Token& t = peek();
  if (t.kind != k) {
    std::string found = t.kind == Tok::End ? "end of expression" : "'" + t.text + "'";
    fail("expected " + std::string(what) + ", found " + found);
  }
  return advance();
}

void Parser::expect_word(std::string_view w) {
  if (!at_word(w)) fail("expected '" + std::string(w) + "'");
  advance();
}

Name Parser::binder_name() {
  Token t = expect(Tok::Ident, "identifier");
  if (is_reserved(t.text)) throw Error(ErrorCode::SyntaxError, "'" + t.text + "' is a keyword", t.pos);
  return t.text;
}

Rational Parser::rational() {
  Token num = expect(Tok::Number, "rational literal");
  std::string text = num.text;
  if (at(Tok::Slash)) {
    advance();
    text += "/" + expect(Tok::Number, "denominator").text;
  }
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), num.pos);
  }
}

// --- terms -----------------------------------------------------------------

bool Parser::arg_start() const {
  const Token& t = peek();
  switch (t.kind) {
    case Tok::Ident:
      return t.text == "choose" || t.text == "efq" || !is_reserved(t.text);
    case Tok::Oracle:
    case Tok::LAngle:
    case Tok::LParen:
      return true;
    default:
      return false;
  }
}

Term Parser::term() {
  if (at(Tok::Lambda)) {
    SourcePos pos = advance().pos;
    Name x = binder_name();
    expect(Tok::Colon, "':'");
    TypeCon domain = type();
    expect(Tok::Dot, "'.'");
    Term body = term();
    return lam(std::move(x), std::move(domain), std::move(body), pos);
  }
  return application();
}

Term Parser::application() {
  SourcePos pos = peek().pos;
  bool bare = false;
  Term head = postfix(&bare);
  if (bare && arg_start()) {
    Term arg = postfix(nullptr);
    head = oracle_app(std::get<term::OracleRef>(head->node).oracle, std::move(arg), pos);
  }
  while (arg_start()) head = app(head, postfix(nullptr), pos);
  return head;
}

Term Parser::postfix(bool* bare) {
  Term t = atom(bare);
  for (;;) {
    if (at(Tok::Bang)) {
      SourcePos pos = advance().pos;
      t = nu(std::move(t), pos);
    } else if (at(Tok::Proj)) {
      Token p = advance();
      t = proj(std::move(t), p.text == "1" ? 1 : 0, p.pos);
    } else {
      break;
    }
    if (bare) *bare = false;
  }
  return t;
}

Term Parser::atom(bool* bare) {
  const Token& t = peek();
  SourcePos pos = t.pos;
  switch (t.kind) {
    case Tok::Ident: {
      if (t.text == "choose") {
        advance();
        expect(Tok::LBracket, "'['");
        Token ptok = peek();
        Rational p = rational();
        expect(Tok::RBracket, "']'");
        expect(Tok::LBrace, "'{'");
        Term left = term();
        expect(Tok::RBrace, "'}'");
        expect(Tok::LBrace, "'{'");
        Term right = term();
        expect(Tok::RBrace, "'}'");
        if (!p.is_probability())
          throw Error(ErrorCode::ProbabilityOutOfRange, "choice probability " + p.str() + " not in [0,1]", ptok.pos);
        return choice(std::move(left), std::move(p), std::move(right), pos);
      }
      if (t.text == "efq") {
        advance();
        expect(Tok::LParen, "'('");
        Term body = term();
        expect(Tok::Colon, "':'");
        TypeCon target = type();
        expect(Tok::RParen, "')'");
        return efq(std::move(body), std::move(target), pos);
      }
      if (is_reserved(t.text)) fail("unexpected keyword '" + t.text + "'");
      return var(advance().text, pos);
    }
    case Tok::Oracle:
      if (bare) *bare = true;
      return oracle_ref(advance().text, pos);
    case Tok::LAngle: {
      advance();
      Term first = term();
      expect(Tok::Comma, "','");
      Term second = term();
      expect(Tok::RAngle, "'>'");
      return pair(std::move(first), std::move(second), pos);
    }
    case Tok::LParen: {
      advance();
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    case Tok::End:
      fail("expected a term, found end of expression");
    default:
      fail("expected a term, found '" + t.text + "'");
  }
}

// --- types -----------------------------------------------------------------

TypeCon Parser::type() { return type_binder_or_arrow(); }

TypeCon Parser::type_binder_or_arrow() {
  SourcePos pos = peek().pos;
  if (at_word("forall") || at(Tok::ConLambda)) {
    bool is_forall = at_word("forall");
    advance();
    Name x = binder_name();
    expect(Tok::Colon, "':'");
    TypeCon domain = type();
    expect(Tok::Dot, "'.'");
    TypeCon body = type();
    return is_forall ? forall(std::move(x), std::move(domain), std::move(body), pos)
                     : con_lam(std::move(x), std::move(domain), std::move(body), pos);
  }
  TypeCon left = type_conj();
  if (at(Tok::Arrow)) {
    advance();
    return arrow(std::move(left), type_binder_or_arrow(), pos);
  }
  return left;
}

TypeCon Parser::type_conj() {
  SourcePos pos = peek().pos;
  TypeCon left = type_prefix();
  if (at(Tok::Wedge)) {
    advance();
    return conj(std::move(left), type_conj(), pos);
  }
  return left;
}

TypeCon Parser::type_prefix() {
  SourcePos pos = peek().pos;
  if (at_word("Oplus")) {
    advance();
    return oplus(type_prefix(), pos);
  }
  if (at_word("Sigma")) {
    advance();
    return sigma(type_prefix(), pos);
  }
  return type_app();
}

TypeCon Parser::type_app() {
  SourcePos pos = peek().pos;
  TypeCon head = type_atom();
  while (arg_start()) head = con_app(head, postfix(nullptr), pos);
  return head;
}

TypeCon Parser::type_atom() {
  const Token& t = peek();
  SourcePos pos = t.pos;
  if (t.kind == Tok::Ident) {
    if (t.text == "Bot") {
      advance();
      return bottom(pos);
    }
    if (is_reserved(t.text)) fail("expected a type, found keyword '" + t.text + "'");
    return con_var(advance().text, pos);
  }
  if (t.kind == Tok::LParen) {
    advance();
    TypeCon inner = type();
    expect(Tok::RParen, "')'");
    return inner;
  }
  if (t.kind == Tok::End) fail("expected a type, found end of expression");
  fail("expected a type, found '" + t.text + "'");
}

// --- kinds -----------------------------------------------------------------

Kind Parser::kind() {
  SourcePos pos = peek().pos;
  if (at(Tok::Star)) {
    advance();
    return star(pos);
  }
  if (at_word("Pi")) {
    advance();
    Name x = binder_name();
    expect(Tok::Colon, "':'");
    TypeCon domain = type();
    expect(Tok::Dot, "'.'");
    Kind body = kind();
    return pi(std::move(x), std::move(domain), std::move(body), pos);
  }
  if (at(Tok::LParen)) {
    advance();
    Kind inner = kind();
    expect(Tok::RParen, "')'");
    return inner;
  }
  fail("expected a kind");
}

}  // namespace detail

// --- name resolution -------------------------------------------------------

namespace {

using detail::Parser;
using detail::Tok;
using detail::Token;

struct Scope {
  NameSet types;
  NameSet terms;
  std::vector<Name> bound;

  bool term_visible(const Name& n) const {
    return terms.contains(n) || std::find(bound.begin(), bound.end(), n) != bound.end();
  }
};

struct Resolver {
  Scope& scope;

  [[noreturn]] static void unbound(const std::string& what, const Name& n, SourcePos pos) {
    throw Error(ErrorCode::UnboundName, what + " '" + n + "' is not declared", pos);
  }

  template <class Body>
  void binder(const Name& x, const TypeCon& domain, const Body& body) {
    run(domain);
    scope.bound.push_back(x);
    run(body);
    scope.bound.pop_back();
  }

  void run(const Term& t) {
    std::visit(overloaded{
                   [&](const term::Var& v) {
                     if (!scope.term_visible(v.name)) unbound("term", v.name, t->pos);
                   },
                   [&](const term::OracleRef&) {},
                   [&](const term::OracleApp& o) { run(o.arg); },
                   [&](const term::Lambda& l) { binder(l.binder, l.domain, l.body); },
                   [&](const term::App& a) { run(a.fn); run(a.arg); },
                   [&](const term::Choice& c) { run(c.left); run(c.right); },
                   [&](const term::Nu& n) { run(n.body); },
                   [&](const term::Pair& p) { run(p.first); run(p.second); },
                   [&](const term::Proj& p) { run(p.body); },
                   [&](const term::Efq& e) { run(e.body); run(e.target); },
                   [&](const auto&) {},
               },
               t->node);
  }

  void run(const TypeCon& c) {
    std::visit(overloaded{
                   [&](const con::Var& v) {
                     if (!scope.types.contains(v.name)) unbound("type", v.name, c->pos);
                   },
                   [&](const con::Lambda& l) { binder(l.binder, l.domain, l.body); },
                   [&](const con::App& a) { run(a.fn); run(a.arg); },
                   [&](const con::Forall& f) { binder(f.binder, f.domain, f.body); },
                   [&](const con::Oplus& o) { run(o.body); },
                   [&](const con::Sigma& s) { run(s.body); },
                   [&](const con::And& a) { run(a.left); run(a.right); },
                   [&](const con::Bottom&) {},
               },
               c->node);
  }

  void run(const Kind& k) {
    if (auto* p = as<kind::Pi>(k)) binder(p->binder, p->domain, p->body);
  }
};

void end_statement(Parser& p) {
  if (!p.exhausted() && p.raw().pos.column != 1)
    throw Error(ErrorCode::SyntaxError, "unexpected '" + p.raw().text + "' after statement", p.raw().pos);
}

}  // namespace

const Definition* SourceFile::find(const Name& name) const {
  for (auto& d : definitions)
    if (d.name == name) return &d;
  return nullptr;
}

Term SourceFile::expanded(const Name& name) const {
  std::size_t k = 0;
  while (k < definitions.size() && definitions[k].name != name) ++k;
  if (k == definitions.size()) throw Error(ErrorCode::UnboundName, "no definition named '" + name + "'");
  Term body = definitions[k].body;
  for (std::size_t i = k; i-- > 0;) body = substitute_term(body, definitions[i].name, definitions[i].body);
  return body;
}

SourceFile parse_program(std::string_view text) {
  Parser p(detail::tokenize(text));
  p.set_statement_mode(true);
  SourceFile out;
  Scope scope;
  Resolver resolve{scope};
  NameSet declared;

  auto declare = [&](const Name& n, SourcePos pos) {
    if (!declared.insert(n).second) throw Error(ErrorCode::DuplicateName, "'" + n + "' is declared twice", pos);
  };

  while (!p.exhausted()) {
    p.begin_statement();
    SourcePos pos = p.peek().pos;
    if (p.at_word("type")) {
      p.advance();
      Name name = p.binder_name();
      p.expect(Tok::Colon, "':'");
      Kind k = p.kind();
      resolve.run(k);
      declare(name, pos);
      scope.types.insert(name);
      out.declarations.push_back(AtomDecl{std::move(name), std::move(k), pos});
    } else if (p.at_word("const")) {
      p.advance();
      Name name = p.binder_name();
      p.expect(Tok::Colon, "':'");
      TypeCon ty = p.type();
      resolve.run(ty);
      declare(name, pos);
      scope.terms.insert(name);
      out.declarations.push_back(ConstDecl{std::move(name), std::move(ty), pos});
    } else if (p.at_word("import")) {
      p.advance();
      Token path = p.expect(Tok::String, "quoted oracle file path");
      out.imports.push_back(OracleImport{path.text, pos});
    } else if (p.at(Tok::Ident)) {
      Name name = p.binder_name();
      std::optional<TypeCon> ascription;
      if (p.at(Tok::Colon)) {
        p.advance();
        ascription = p.type();
        resolve.run(*ascription);
      }
      p.expect(Tok::Equals, "'='");
      Term body = p.term();
      resolve.run(body);
      declare(name, pos);
      scope.terms.insert(name);
      out.definitions.push_back(Definition{std::move(name), std::move(ascription), std::move(body), pos});
    } else {
      p.fail("expected a declaration or definition, found '" + p.raw().text + "'");
    }
    end_statement(p);
  }
  return out;
}

TargetDistributionFile parse_distribution(std::string_view text) {
  Parser p(detail::tokenize(text));
  p.set_statement_mode(true);
  TargetDistributionFile out;
  while (!p.exhausted()) {
    p.begin_statement();
    SourcePos pos = p.peek().pos;
    if (p.at_word("epsilon")) {
      p.advance();
      p.expect(Tok::Equals, "'='");
      SourcePos rpos = p.peek().pos;
      Rational eps = p.rational();
      if (eps <= Rational(0) || eps > Rational(1))
        throw Error(ErrorCode::ProbabilityOutOfRange, "epsilon must lie in (0,1]", rpos);
      if (out.epsilon) throw Error(ErrorCode::DuplicateName, "epsilon given twice", pos);
      out.epsilon = eps;
    } else {
      Term outcome = p.term();
      p.expect(Tok::Equals, "'='");
      SourcePos rpos = p.peek().pos;
      Rational prob = p.rational();
      if (!prob.is_probability())
        throw Error(ErrorCode::ProbabilityOutOfRange, "probability " + prob.str() + " not in [0,1]", rpos);
      for (auto& e : out.entries)
        if (alpha_eq(e.outcome, outcome))
          throw Error(ErrorCode::DuplicateOutcome, "outcome '" + print_term(outcome) + "' listed twice", pos);
      out.entries.push_back(TargetEntry{std::move(outcome), std::move(prob), pos});
    }
    end_statement(p);
  }
  return out;
}

namespace {

template <class T, class F>
T parse_whole(std::string_view text, F f) {
  Parser p(detail::tokenize(text));
  T out = f(p);
  if (!p.exhausted()) p.fail("unexpected '" + p.raw().text + "'");
  return out;
}

}  // namespace

Term parse_term(std::string_view text) {
  return parse_whole<Term>(text, [](Parser& p) { return p.term(); });
}
TypeCon parse_type(std::string_view text) {
  return parse_whole<TypeCon>(text, [](Parser& p) { return p.type(); });
}
Kind parse_kind(std::string_view text) {
  return parse_whole<Kind>(text, [](Parser& p) { return p.kind(); });
}

}  // namespace olam
