#include <gtest/gtest.h>

#include "olam/constructor.hpp"
#include "olam/surface.hpp"

namespace olam {
namespace {

TypeCon Ty(std::string_view s) { return parse_type(s); }

TEST(ConStep, BetaOnApplication) {
  TypeCon phi = Ty("(\\\\x:A. R x) t");
  auto r = select_con_redex(phi, ConStrategy::LeftmostOutermost);
  ASSERT_TRUE(r);
  EXPECT_TRUE(alpha_eq(con_step(phi, *r), Ty("R t")));
}

TEST(ConStep, AtomHasNoRedex) {
  EXPECT_TRUE(find_con_redexes(Ty("R")).empty());
  EXPECT_FALSE(select_con_redex(Ty("R"), ConStrategy::RightmostInnermost));
}

TEST(ConStep, UnderForall) {
  TypeCon phi = Ty("(\\\\x:A. forall y:A. S x y) t");
  auto r = select_con_redex(phi, ConStrategy::LeftmostOutermost);
  ASSERT_TRUE(r);
  EXPECT_TRUE(alpha_eq(con_step(phi, *r), Ty("forall y:A. S t y")));
}

TEST(ConStep, CaptureAvoiding) {
  TypeCon phi = Ty("(\\\\x:A. forall y:A. S x y) y");
  TypeCon out = normalize_con(phi);
  EXPECT_TRUE(alpha_eq(out, Ty("forall z:A. S y z")));
}

TEST(ConStep, InvalidPath) {
  try {
    con_step(Ty("R"), ConRedex{{0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidRedexPath);
  }
}

TEST(Normalize, Atom) { EXPECT_TRUE(alpha_eq(normalize_con(Ty("R")), Ty("R"))); }

TEST(Normalize, SingleRedex) { EXPECT_TRUE(alpha_eq(normalize_con(Ty("(\\\\x:A. R x) t")), Ty("R t"))); }

TEST(Normalize, NestedUnderBothStrategies) {
  TypeCon phi = Ty("(\\\\x:A. (\\\\y:A. S x y) s) t");
  EXPECT_TRUE(alpha_eq(normalize_con(phi, ConStrategy::LeftmostOutermost), Ty("S t s")));
  EXPECT_TRUE(alpha_eq(normalize_con(phi, ConStrategy::RightmostInnermost), Ty("S t s")));
}

TEST(Normalize, StrategiesPickDifferentRedexes) {
  TypeCon phi = Ty("(\\\\x:A. (\\\\y:A. S x y) s) t");
  auto lo = select_con_redex(phi, ConStrategy::LeftmostOutermost);
  auto ri = select_con_redex(phi, ConStrategy::RightmostInnermost);
  ASSERT_TRUE(lo && ri);
  EXPECT_NE(lo->path, ri->path);
}

TEST(Normalize, FuelExhausted) {
  try {
    normalize_con(Ty("(\\\\x:A. (\\\\y:A. S x y) s) t"), ConStrategy::LeftmostOutermost, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FuelExhausted);
  }
}

TEST(Equiv, BetaConvertible) { EXPECT_TRUE(con_equiv(Ty("(\\\\x:A. R x) t"), Ty("R t"))); }

TEST(Equiv, DistinctAtoms) { EXPECT_FALSE(con_equiv(Ty("R"), Ty("S"))); }

TEST(Equiv, AlphaRenaming) { EXPECT_TRUE(con_equiv(Ty("forall y:A. R y"), Ty("forall z:A. R z"))); }

TEST(Equiv, EmbeddedTermsUpToBeta) {
  EXPECT_TRUE(con_equiv(Ty("R ((\\x:A. x) t)"), Ty("R t")));
  EXPECT_TRUE(con_equiv(Ty("R <t, s>.1"), Ty("R s")));
  EXPECT_FALSE(con_equiv(Ty("R choose[1/2]{t}{t} !"), Ty("R t")));
}

TEST(Equiv, Kinds) {
  EXPECT_TRUE(kind_equiv(parse_kind("Pi x:(\\\\y:A. R y) t. *"), parse_kind("Pi z:R t. *")));
  EXPECT_FALSE(kind_equiv(parse_kind("Pi x:A. *"), parse_kind("*")));
}

TEST(Skeleton, ErasesTerms) {
  EXPECT_EQ(skeleton(Ty("R a")), skeleton(Ty("R b")));
  EXPECT_NE(skeleton(Ty("A -> A")), skeleton(Ty("A /\\ A")));
}

}  // namespace
}  // namespace olam
