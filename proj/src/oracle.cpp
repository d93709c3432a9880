#include "olam/oracle.hpp"

#include "olam/checker.hpp"
#include "olam/overloaded.hpp"
#include "olam/surface.hpp"
#include "parser.hpp"

namespace olam {

using detail::Parser;
using detail::Tok;
using detail::Token;

TypeCon OracleDef::output_type(const std::optional<Term>& arg) const {
  if (arity == 0) return std::get<con::Sigma>(type->node).body;
  auto& f = std::get<con::Forall>(type->node);
  TypeCon b = std::get<con::Sigma>(f.body->node).body;
  return arg ? substitute_in_con(b, f.binder, *arg) : b;
}

TypeCon OracleDef::argument_type() const {
  auto* f = as<con::Forall>(type);
  if (!f) throw Error(ErrorCode::InvalidOracleType, "oracle '#" + name + "' takes no argument");
  return f->domain;
}

namespace {

std::size_t small_number(Parser& p) {
  Token t = p.expect(Tok::Number, "number");
  if (t.text.size() > 9) throw Error(ErrorCode::SyntaxError, "number too large", t.pos);
  return std::stoul(t.text);
}

OracleGuard parse_guard(Parser& p) {
  if (p.at_word("index")) {
    p.advance();
    if (p.at_word("in")) {
      p.advance();
      p.expect(Tok::LBrace, "'{'");
      guard::IndexIn g;
      g.indices.insert(small_number(p));
      while (p.at(Tok::Comma)) {
        p.advance();
        g.indices.insert(small_number(p));
      }
      p.expect(Tok::RBrace, "'}'");
      return g;
    }
    if (p.at_word("mod")) {
      p.advance();
      SourcePos pos = p.peek().pos;
      std::size_t k = small_number(p);
      p.expect(Tok::Equals, "'='");
      std::size_t r = small_number(p);
      if (k == 0) throw Error(ErrorCode::SyntaxError, "modulus must be positive", pos);
      return guard::IndexMod{k, r % k};
    }
    p.fail("expected 'in' or 'mod' after 'index'");
  }
  if (p.at_word("arg")) {
    p.advance();
    p.expect(Tok::Equals, "'='");
    return guard::ArgEquals{p.term()};
  }
  if (p.at_word("context")) {
    p.advance();
    p.expect(Tok::Equals, "'='");
    return guard::ContextEquals{p.expect(Tok::String, "quoted context fingerprint").text};
  }
  p.fail("expected a guard: index, arg or context");
}

void end_of_line(Parser& p, int line) {
  if (!p.exhausted() && p.raw().pos.line == line)
    throw Error(ErrorCode::SyntaxError, "unexpected '" + p.raw().text + "' at end of line", p.raw().pos);
}

void check_shape(const OracleDef& def) {
  bool ok = false;
  if (def.arity == 0) {
    ok = as<con::Sigma>(def.type) != nullptr;
  } else if (auto* f = as<con::Forall>(def.type)) {
    ok = as<con::Sigma>(f->body) != nullptr;
  }
  if (!ok)
    throw Error(ErrorCode::InvalidOracleType,
                "oracle '#" + def.name + "' of arity " + std::to_string(def.arity) + " cannot have type " +
                    print_type(def.type),
                def.pos);
}

bool matches(const OracleGuard& g, const HoleContext& ctx, std::size_t m, const std::optional<Term>& arg) {
  return std::visit(overloaded{
                        [&](const guard::IndexIn& in) { return in.indices.contains(m); },
                        [&](const guard::IndexMod& mod) { return m % mod.modulus == mod.residue; },
                        [&](const guard::ArgEquals& a) { return arg && alpha_eq(*arg, a.pattern); },
                        [&](const guard::ContextEquals& c) { return context_fingerprint(ctx) == c.fingerprint; },
                    },
                    g);
}

}  // namespace

std::vector<OracleDef> parse_oracles(std::string_view text) {
  Parser p(detail::tokenize(text));
  std::vector<OracleDef> out;
  NameSet seen;
  while (!p.exhausted()) {
    OracleDef def;
    def.pos = p.raw().pos;
    int line = def.pos.line;
    p.set_line_limit(line);
    p.expect_word("oracle");
    def.name = p.binder_name();
    if (!seen.insert(def.name).second)
      throw Error(ErrorCode::DuplicateName, "oracle '#" + def.name + "' defined twice", def.pos);
    p.expect_word("arity");
    SourcePos apos = p.peek().pos;
    Token arity = p.expect(Tok::Number, "arity 0 or 1");
    if (arity.text != "0" && arity.text != "1")
      throw Error(ErrorCode::InvalidOracleType, "oracle arity must be 0 or 1", apos);
    def.arity = arity.text == "1" ? 1 : 0;
    p.expect_word("type");
    def.type = p.type();
    end_of_line(p, line);
    check_shape(def);

    for (bool done = false; !done;) {
      if (p.exhausted())
        throw Error(ErrorCode::SyntaxError, "oracle '#" + def.name + "' has no default rule", p.raw().pos);
      line = p.raw().pos.line;
      p.set_line_limit(line);
      OracleRule rule;
      rule.pos = p.raw().pos;
      if (p.at_word("default")) {
        p.advance();
        done = true;
      } else {
        p.expect_word("rule");
        rule.guard = parse_guard(p);
        if (std::holds_alternative<guard::ArgEquals>(*rule.guard) && def.arity == 0)
          throw Error(ErrorCode::InvalidOracleType, "argument guard on nullary oracle '#" + def.name + "'", rule.pos);
      }
      p.expect(Tok::Arrow, "'->'");
      rule.output = p.term();
      end_of_line(p, line);
      def.rules.push_back(std::move(rule));
    }
    p.set_line_limit(std::nullopt);
    out.push_back(std::move(def));
  }
  return out;
}

std::string context_fingerprint(const HoleContext& ctx) { return canonical_form(ctx.skeleton()); }

Term eval_oracle(const OracleDef& def, const HoleContext& ctx, std::size_t m, const std::optional<Term>& arg) {
  if (m < 1 || m > ctx.hole_count())
    throw Error(ErrorCode::InvalidHoleIndex, "hole index " + std::to_string(m) + " outside 1.." +
                                                 std::to_string(ctx.hole_count()));
  for (auto& rule : def.rules)
    if (!rule.guard || matches(*rule.guard, ctx, m, arg)) return rule.output;
  throw Error(ErrorCode::InvalidOracleType, "oracle '#" + def.name + "' has no default rule", def.pos);
}

void validate_oracle(const OracleDef& def, const TypeChecker& checker, const Environment& env) {
  check_shape(def);
  try {
    checker.check_is_type(env, def.type);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidOracleType, "type of oracle '#" + def.name + "' is ill-formed: " + e.what(), def.pos);
  }
  if (def.rules.empty() || def.rules.back().guard)
    throw Error(ErrorCode::InvalidOracleType, "oracle '#" + def.name + "' must end with a default rule", def.pos);

  NameSet globals = env.term_names();
  auto closed_and_pure = [&](const Term& t, SourcePos pos) {
    if (!oracle_names(t).empty())
      throw Error(ErrorCode::OutputContainsOracle,
                  "output '" + print_term(t) + "' of oracle '#" + def.name + "' mentions an oracle", pos);
    for (auto& x : free_term_vars(t))
      if (!globals.contains(x))
        throw Error(ErrorCode::OutputNotClosed,
                    "output '" + print_term(t) + "' of oracle '#" + def.name + "' has free variable '" + x + "'", pos);
  };
  auto typed = [&](const Term& t, const TypeCon& expected, SourcePos pos) {
    try {
      checker.check_type(env, t, expected);
    } catch (const Error& e) {
      throw Error(ErrorCode::OutputIllTyped, "oracle '#" + def.name + "': " + e.what(), pos);
    }
  };

  for (auto& rule : def.rules) {
    closed_and_pure(rule.output, rule.pos);
    const guard::ArgEquals* pattern = rule.guard ? std::get_if<guard::ArgEquals>(&*rule.guard) : nullptr;
    if (pattern) {
      closed_and_pure(pattern->pattern, rule.pos);
      typed(pattern->pattern, def.argument_type(), rule.pos);
    }
    if (def.arity == 0) {
      typed(rule.output, def.output_type(std::nullopt), rule.pos);
    } else if (pattern) {
      typed(rule.output, def.output_type(pattern->pattern), rule.pos);
    } else {
      auto& f = std::get<con::Forall>(def.type->node);
      if (!free_term_vars(f.body).contains(f.binder)) typed(rule.output, def.output_type(std::nullopt), rule.pos);
    }
  }
}

void OracleRegistry::add(OracleDef def) {
  Name n = def.name;
  SourcePos pos = def.pos;
  if (!defs_.emplace(n, std::move(def)).second)
    throw Error(ErrorCode::DuplicateName, "oracle '#" + n + "' defined twice", pos);
}

const OracleDef* OracleRegistry::find(const Name& name) const {
  auto it = defs_.find(name);
  return it == defs_.end() ? nullptr : &it->second;
}

const OracleDef& OracleRegistry::get(const Name& name) const {
  auto* d = find(name);
  if (!d) throw Error(ErrorCode::UnknownOracle, "oracle '#" + name + "' is not defined");
  return *d;
}

std::vector<Name> OracleRegistry::names() const {
  std::vector<Name> out;
  for (auto& [n, _] : defs_) out.push_back(n);
  return out;
}

}  // namespace olam
