#include <gtest/gtest.h>

#include "olam/surface.hpp"

namespace olam {
namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Usage;
}

constexpr std::string_view kDecls = "type A : *\nconst a : A\nconst b : A\n";

TEST(ParseProgram, LambdaMain) {
  SourceFile f = parse_program(std::string(kDecls) + "main = \\x:A. x\n");
  ASSERT_EQ(f.definitions.size(), 1u);
  auto* l = as<term::Lambda>(f.definitions[0].body);
  ASSERT_NE(l, nullptr);
  auto* v = as<term::Var>(l->body);
  ASSERT_NE(v, nullptr);
  EXPECT_EQ(v->name, "x");
}

TEST(ParseProgram, ChoiceUnderNu) {
  SourceFile f = parse_program(std::string(kDecls) + "main = choose[1/3]{a}{b} !\n");
  auto* n = as<term::Nu>(f.definitions[0].body);
  ASSERT_NE(n, nullptr);
  auto* c = as<term::Choice>(n->body);
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->prob, Rational(1) / Rational(3));
}

TEST(ParseProgram, OraclePair) {
  SourceFile f = parse_program(std::string(kDecls) + "main = <#coin!, #coin!>\n");
  auto* p = as<term::Pair>(f.definitions[0].body);
  ASSERT_NE(p, nullptr);
  for (const Term& side : {p->first, p->second}) {
    auto* n = as<term::Nu>(side);
    ASSERT_NE(n, nullptr);
    auto* o = as<term::OracleRef>(n->body);
    ASSERT_NE(o, nullptr);
    EXPECT_EQ(o->oracle, "coin");
  }
}

TEST(ParseProgram, DefinitionsExpandInOrder) {
  SourceFile f = parse_program(std::string(kDecls) + "id : A -> A = \\x:A. x\nmain = id a\n");
  EXPECT_EQ(print_term(f.expanded("main")), "(\\x:A. x) a");
}

TEST(ParseProgram, MultiLineDefinition) {
  SourceFile f = parse_program(std::string(kDecls) + "main =\n  choose[1/2]\n    {a}\n    {b} !\n");
  EXPECT_EQ(print_term(f.expanded("main")), "choose[1/2]{a}{b} !");
}

TEST(ParseProgram, CommentsIgnored) {
  SourceFile f = parse_program("-- header\n" + std::string(kDecls) + "main = a -- trailing\n");
  EXPECT_EQ(print_term(f.definitions[0].body), "a");
}

TEST(ParseProgram, Imports) {
  SourceFile f = parse_program("import \"coin.oracle\"\n" + std::string(kDecls) + "main = a\n");
  ASSERT_EQ(f.imports.size(), 1u);
  EXPECT_EQ(f.imports[0].path, "coin.oracle");
}

TEST(ParseProgram, Errors) {
  EXPECT_EQ(code_of([] { parse_program("main = x\n"); }), ErrorCode::UnboundName);
  EXPECT_EQ(code_of([] { parse_program(std::string(kDecls) + "main = a\nmain = b\n"); }), ErrorCode::DuplicateName);
  EXPECT_EQ(code_of([] { parse_program(std::string(kDecls) + "main = <a, b\n"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { parse_program(std::string(kDecls) + "main = choose[3/2]{a}{b} !\n"); }),
            ErrorCode::ProbabilityOutOfRange);
  EXPECT_EQ(code_of([] { parse_program(std::string(kDecls) + "main = a $\n"); }), ErrorCode::LexError);
}

TEST(ParseProgram, ErrorsCarryPositions) {
  try {
    parse_program(std::string(kDecls) + "main = <a, zz>\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundName);
    EXPECT_EQ(e.pos().line, 4);
    EXPECT_EQ(e.pos().column, 12);
  }
}

TEST(Print, ChoiceNu) { EXPECT_EQ(print_term(nu(choice(var("a"), Rational(1) / Rational(2), var("b")))), "choose[1/2]{a}{b} !"); }

TEST(Print, Projection) { EXPECT_EQ(print_term(proj(pair(var("a"), var("b")), 0)), "<a, b>.0"); }

TEST(Print, ArrowSugar) {
  EXPECT_EQ(print_type(parse_type("forall x:A. A")), "A -> A");
  EXPECT_EQ(print_type(parse_type("forall x:A. P x")), "forall x:A. P x");
  EXPECT_EQ(print_type(parse_type("(A -> A) -> A")), "(A -> A) -> A");
}

TEST(Print, ApplicationAssociativity) {
  EXPECT_EQ(print_term(parse_term("f a b")), "f a b");
  EXPECT_EQ(print_term(parse_term("f (a b)")), "f (a b)");
  EXPECT_EQ(print_term(parse_term("#f a !")), "#f a !");
}

TEST(Print, Kinds) { EXPECT_EQ(print_kind(parse_kind("Pi x:A. Pi y:P x. *")), "Pi x:A. Pi y:P x. *"); }

TEST(Distribution, TwoEntries) {
  auto d = parse_distribution("a = 1/3\nb = 2/3\n");
  ASSERT_EQ(d.entries.size(), 2u);
  EXPECT_EQ(d.entries[1].prob, Rational(2) / Rational(3));
  EXPECT_FALSE(d.epsilon);
}

TEST(Distribution, Epsilon) {
  auto d = parse_distribution("epsilon = 1/100\na = 1\n");
  ASSERT_TRUE(d.epsilon);
  EXPECT_EQ(*d.epsilon, Rational(1) / Rational(100));
}

TEST(Distribution, OutOfRange) {
  EXPECT_EQ(code_of([] { parse_distribution("a = 5/4\n"); }), ErrorCode::ProbabilityOutOfRange);
}

TEST(Distribution, Duplicate) {
  EXPECT_EQ(code_of([] { parse_distribution("a = 1/3\na = 1/3\n"); }), ErrorCode::DuplicateOutcome);
  EXPECT_EQ(code_of([] { parse_distribution("\\x:A. x = 1/3\n\\y:A. y = 1/3\n"); }), ErrorCode::DuplicateOutcome);
}

TEST(Distribution, MalformedRational) {
  EXPECT_EQ(code_of([] { parse_distribution("a = 1/0\n"); }), ErrorCode::MalformedRational);
}

}  // namespace
}  // namespace olam
