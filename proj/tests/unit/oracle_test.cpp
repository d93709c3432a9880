#include <gtest/gtest.h>

#include "olam/checker.hpp"
#include "olam/context.hpp"
#include "olam/oracle.hpp"
#include "olam/surface.hpp"

namespace olam {
namespace {

OracleDef one(std::string_view text) {
  auto defs = parse_oracles(text);
  EXPECT_EQ(defs.size(), 1u);
  return defs.at(0);
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Usage;
}

const HoleContext kThree = decompose_oracle_context(parse_term("<#c !, <#c !, #c !>>"), "c").context;

TEST(EvalOracle, CyclicAAB) {
  OracleDef d = one("oracle c arity 0 type Sigma A\n  rule index mod 3 = 0 -> b\n  default -> a\n");
  EXPECT_EQ(print_term(eval_oracle(d, kThree, 1, std::nullopt)), "a");
  EXPECT_EQ(print_term(eval_oracle(d, kThree, 2, std::nullopt)), "a");
  EXPECT_EQ(print_term(eval_oracle(d, kThree, 3, std::nullopt)), "b");
}

TEST(EvalOracle, ArgumentPattern) {
  OracleDef d = one("oracle f arity 1 type forall x:N. Sigma A\n  rule arg = zero -> a\n  default -> b\n");
  HoleContext ctx = decompose_oracle_context(parse_term("(#f zero) !"), "f").context;
  EXPECT_EQ(print_term(eval_oracle(d, ctx, 1, parse_term("zero"))), "a");
  EXPECT_EQ(print_term(eval_oracle(d, ctx, 1, parse_term("one"))), "b");
}

TEST(EvalOracle, ConstantOracle) {
  OracleDef d = one("oracle k arity 0 type Sigma A\n  default -> c\n");
  for (std::size_t m = 1; m <= 3; ++m) EXPECT_EQ(print_term(eval_oracle(d, kThree, m, std::nullopt)), "c");
}

TEST(EvalOracle, IndexSetAndContextGuards) {
  HoleContext pair_ctx = decompose_oracle_context(parse_term("<#c !, #c !>"), "c").context;
  std::string fp = context_fingerprint(pair_ctx);
  OracleDef d = one("oracle c arity 0 type Sigma A\n  rule context = \"" + fp +
                    "\" -> b\n  rule index in {2, 3} -> c\n  default -> a\n");
  EXPECT_EQ(print_term(eval_oracle(d, pair_ctx, 2, std::nullopt)), "b");
  EXPECT_EQ(print_term(eval_oracle(d, kThree, 1, std::nullopt)), "a");
  EXPECT_EQ(print_term(eval_oracle(d, kThree, 3, std::nullopt)), "c");
}

TEST(EvalOracle, HoleIndexRange) {
  OracleDef d = one("oracle k arity 0 type Sigma A\n  default -> c\n");
  EXPECT_EQ(code_of([&] { eval_oracle(d, kThree, 0, std::nullopt); }), ErrorCode::InvalidHoleIndex);
  EXPECT_EQ(code_of([&] { eval_oracle(d, kThree, 4, std::nullopt); }), ErrorCode::InvalidHoleIndex);
}

TEST(EvalOracle, Deterministic) {
  OracleDef d = one("oracle c arity 0 type Sigma A\n  rule index mod 2 = 1 -> b\n  default -> a\n");
  for (int i = 0; i < 5; ++i) EXPECT_EQ(print_term(eval_oracle(d, kThree, 3, std::nullopt)), "b");
}

TEST(ParseOracles, Shapes) {
  EXPECT_EQ(code_of([] { one("oracle c arity 2 type Sigma A\n  default -> a\n"); }), ErrorCode::InvalidOracleType);
  EXPECT_EQ(code_of([] { one("oracle c arity 0 type A\n  default -> a\n"); }), ErrorCode::InvalidOracleType);
  EXPECT_EQ(code_of([] { one("oracle c arity 1 type Sigma A\n  default -> a\n"); }), ErrorCode::InvalidOracleType);
  EXPECT_EQ(code_of([] { one("oracle c arity 0 type Sigma A\n  rule arg = a -> a\n  default -> a\n"); }),
            ErrorCode::InvalidOracleType);
  EXPECT_EQ(code_of([] {
              parse_oracles("oracle c arity 0 type Sigma A\n  default -> a\noracle c arity 0 type Sigma A\n  default -> a\n");
            }),
            ErrorCode::DuplicateName);
}

TEST(ParseOracles, OutputType) {
  OracleDef d = one("oracle f arity 1 type forall x:A. Sigma P x\n  default -> p\n");
  EXPECT_EQ(print_type(d.argument_type()), "A");
  EXPECT_EQ(print_type(d.output_type(parse_term("a"))), "P a");
}

struct ValidateFixture : ::testing::Test {
  OracleRegistry reg;
  TypeChecker checker{reg};
  Environment env = Environment{}
                        .with_con("A", star())
                        .with_con("B", star())
                        .with_term("a", con_var("A"))
                        .with_term("b", con_var("B"));
};

TEST_F(ValidateFixture, WellTypedDefault) {
  EXPECT_NO_THROW(validate_oracle(one("oracle c arity 0 type Sigma A\n  default -> a\n"), checker, env));
}

TEST_F(ValidateFixture, OutputContainsOracle) {
  EXPECT_EQ(code_of([&] { validate_oracle(one("oracle c arity 0 type Sigma A\n  default -> #d !\n"), checker, env); }),
            ErrorCode::OutputContainsOracle);
}

TEST_F(ValidateFixture, OutputNotClosed) {
  EXPECT_EQ(code_of([&] { validate_oracle(one("oracle c arity 0 type Sigma A\n  default -> y\n"), checker, env); }),
            ErrorCode::OutputNotClosed);
}

TEST_F(ValidateFixture, OutputIllTyped) {
  EXPECT_EQ(code_of([&] { validate_oracle(one("oracle c arity 0 type Sigma A\n  default -> b\n"), checker, env); }),
            ErrorCode::OutputIllTyped);
}

TEST_F(ValidateFixture, MissingDefault) {
  EXPECT_EQ(code_of([&] { parse_oracles("oracle c arity 0 type Sigma A\n  rule index mod 2 = 0 -> a\n"); }),
            ErrorCode::SyntaxError);
}

TEST(Registry, Lookup) {
  OracleRegistry reg;
  reg.add(one("oracle c arity 0 type Sigma A\n  default -> a\n"));
  EXPECT_NE(reg.find("c"), nullptr);
  EXPECT_EQ(reg.find("d"), nullptr);
  EXPECT_EQ(code_of([&] { reg.get("d"); }), ErrorCode::UnknownOracle);
  EXPECT_EQ(code_of([&] { reg.add(one("oracle c arity 0 type Sigma A\n  default -> a\n")); }), ErrorCode::DuplicateName);
}

}  // namespace
}  // namespace olam
