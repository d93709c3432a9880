#include <gtest/gtest.h>

#include "olam/reducer.hpp"
#include "olam/surface.hpp"
#include "support/signature.hpp"

namespace olam {
namespace {

using testing::kAB;
using testing::kCyclic;

struct Reduce : ::testing::Test {
  Program prog = testing::program(kAB, "a", kCyclic);
  const Reducer& r = prog.reducer();
  Term T(std::string_view s) { return parse_term(s); }
};

TEST_F(Reduce, NormalFormHasNoRedex) { EXPECT_TRUE(r.find_redexes(T("a")).empty()); }

TEST_F(Reduce, SingleBeta) {
  auto rs = r.find_redexes(T("(\\x:A. x) a"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].kind, RedexKind::Beta);
}

TEST_F(Reduce, OracleRedexCoversEveryOccurrence) {
  auto rs = r.find_redexes(T("<#coin !, #coin !>"));
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0].kind, RedexKind::OracleNullary);
  EXPECT_EQ(rs[0].oracle, "coin");
}

TEST_F(Reduce, ChoiceStep) {
  Term t = T("choose[1/4]{a}{b} !");
  auto out = r.step(t, r.find_redexes(t).at(0));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(print_term(out[0].term), "a");
  EXPECT_EQ(out[0].prob, Rational(1) / Rational(4));
  EXPECT_EQ(out[0].label, Label::Left);
  EXPECT_EQ(print_term(out[1].term), "b");
  EXPECT_EQ(out[1].prob, Rational(3) / Rational(4));
  EXPECT_EQ(out[1].label, Label::Right);
}

TEST_F(Reduce, ProjectionStep) {
  Term t = T("<a, b>.1");
  auto out = r.step(t, r.find_redexes(t).at(0));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(print_term(out[0].term), "b");
  EXPECT_EQ(out[0].prob, Rational(1));
  EXPECT_EQ(out[0].label, Label::Pi);
}

TEST_F(Reduce, CyclicOracleStep) {
  Term t = T("<#coin !, <#coin !, #coin !>>");
  auto out = r.step(t, r.find_redexes(t).at(0));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(print_term(out[0].term), "<a, <a, b>>");
  EXPECT_EQ(out[0].prob, Rational(1));
  EXPECT_EQ(out[0].label, Label::Omega);
}

TEST_F(Reduce, InvalidPath) {
  try {
    r.step(T("a"), TermRedex{{0}, RedexKind::Beta, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidRedexPath);
  }
}

TEST_F(Reduce, LeftmostOutermostFirst) {
  auto s = r.deterministic_strategy(T("(\\x:A. x) (choose[1/2]{a}{b} !)"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->kind, RedexKind::Beta);
  EXPECT_TRUE(s->path.empty());
}

TEST_F(Reduce, StrategyOnNormalForm) { EXPECT_FALSE(r.deterministic_strategy(T("a"))); }

TEST_F(Reduce, StrategyOnRootChoice) {
  auto s = r.deterministic_strategy(T("choose[1/2]{a}{b} !"));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->kind, RedexKind::ChoiceNu);
}

TEST_F(Reduce, SampleOfNormalForm) {
  auto s = r.run_sample(T("a"), 12345);
  EXPECT_EQ(print_term(s.normal_form), "a");
  EXPECT_EQ(s.prob, Rational(1));
  EXPECT_TRUE(s.trace.empty());
}

TEST_F(Reduce, CertainChoiceGoesLeft) {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    auto s = r.run_sample(T("choose[1]{a}{b} !"), seed);
    EXPECT_EQ(print_term(s.normal_form), "a");
    EXPECT_EQ(s.prob, Rational(1));
    ASSERT_EQ(s.trace.size(), 1u);
    EXPECT_EQ(s.trace[0].label, Label::Left);
  }
}

TEST_F(Reduce, SamplesAreReproducible) {
  Term t = T("<choose[1/2]{a}{b} !, choose[1/3]{a}{c} !>");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto x = r.run_sample(t, seed);
    auto y = r.run_sample(t, seed);
    EXPECT_EQ(print_term(x.normal_form), print_term(y.normal_form));
    EXPECT_EQ(x.prob, y.prob);
  }
}

TEST_F(Reduce, FrozenSeedOutcomes) {
  Term t = T("choose[1/2]{a}{b} !");
  std::string seen;
  for (std::uint64_t seed = 0; seed < 8; ++seed) seen += print_term(r.run_sample(t, seed).normal_form);
  EXPECT_EQ(seen, "aaaabaaa");
}

TEST_F(Reduce, FuelExhaustion) {
  try {
    r.run_sample(T("(\\x:A. x) ((\\x:A. x) a)"), 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FuelExhausted);
  }
}

TEST_F(Reduce, Labels) {
  EXPECT_EQ(label_symbol(Label::Beta), "β");
  EXPECT_EQ(label_symbol(Label::Omega), "ω");
  EXPECT_EQ(parse_label("left"), Label::Left);
  EXPECT_FALSE(parse_label("sideways"));
}

TEST_F(Reduce, SampleSeedsDiffer) { EXPECT_NE(sample_seed(42, 0), sample_seed(42, 1)); }

}  // namespace
}  // namespace olam
