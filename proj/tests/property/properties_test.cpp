#include <gtest/gtest.h>

#include "olam/constructor.hpp"
#include "olam/surface.hpp"
#include "support/properties.hpp"

namespace olam {
namespace {

using namespace olam::testing;

TEST(Properties, SubjectReduction) {
  auto r = subject_reduction(7, 300, 6);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(Properties, StrongNormalization) {
  auto r = strong_normalization(11, 300, 6);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(Properties, ConstructorConfluence) {
  auto r = constructor_confluence(13, 300, 5);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(Properties, SubstitutionCommutes) {
  auto r = substitution_commutes(17, 1000, 5);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(Properties, RoundTrip) {
  auto r = round_trip(19, 1500, 5);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(Properties, EnumerationMatchesDecisionVectors) {
  auto r = enumeration_agreement(23, 200, 6);
  EXPECT_TRUE(r.ok()) << r.failures << " failures, first: " << r.first_failure;
}

TEST(Properties, DistributionsSumToOne) {
  Program p = signature_program();
  Gen g(29);
  for (int i = 0; i < 100; ++i) {
    Term t = g.typed_a(5);
    EXPECT_EQ(p.engine().enumerate_distribution(t).total(), Rational(1)) << print_term(t);
  }
}

TEST(Properties, SamplesLandInSupport) {
  Program p = signature_program();
  Gen g(31);
  for (int i = 0; i < 100; ++i) {
    Term t = g.typed_any(5);
    auto dist = brute_distribution(p.reducer(), t);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto s = p.reducer().run_sample(t, seed);
      auto it = dist.find(canonical_form(s.normal_form));
      ASSERT_NE(it, dist.end()) << print_term(t);
      EXPECT_GT(it->second, Rational(0));
    }
  }
}

TEST(Properties, NormalizationIsIdempotent) {
  Gen g(37);
  for (int i = 0; i < 200; ++i) {
    TypeCon n = normalize_con(g.typed_con(5));
    EXPECT_TRUE(alpha_eq(normalize_con(n), n)) << print_type(n);
  }
}

TEST(Properties, AlphaNormalizeIsAlphaEqual) {
  Gen g(41);
  for (int i = 0; i < 300; ++i) {
    Term t = g.raw_term(5);
    EXPECT_TRUE(alpha_eq(alpha_normalize(t), t)) << print_term(t);
    EXPECT_EQ(canonical_form(alpha_normalize(t)), canonical_form(t));
  }
}

}  // namespace
}  // namespace olam
