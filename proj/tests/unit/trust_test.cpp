#include <gtest/gtest.h>

#include "olam/surface.hpp"
#include "olam/trust.hpp"
#include "support/mutate.hpp"
#include "support/signature.hpp"

namespace olam {
namespace {

using testing::kAB;

Rational R(int n, int d = 1) { return Rational(n) / Rational(d); }

struct Trust : ::testing::Test {
  TrustReport check(const Program& p, std::string_view dist, Rational eps = R(1, 100)) {
    return trust_check(p, make_trust_spec(p, parse_distribution(dist), eps));
  }
  ErrorCode error_of(auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::Usage;
  }
};

TEST_F(Trust, MatchingTarget) {
  Program p = testing::program(kAB, "choose[1/3]{a}{b} !");
  TrustReport r = check(p, "a = 1/3\nb = 2/3\n");
  EXPECT_TRUE(r.trusted);
  EXPECT_TRUE(r.total_ok);
  for (auto& row : r.rows) EXPECT_TRUE(row.difference.is_zero());
}

TEST_F(Trust, MismatchedTarget) {
  Program p = testing::program(kAB, "choose[1/3]{a}{b} !");
  TrustReport r = check(p, "a = 1/2\nb = 1/2\n");
  EXPECT_FALSE(r.trusted);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(abs(r.rows[0].difference), R(1, 6));
  EXPECT_FALSE(r.rows[0].pass);
}

TEST_F(Trust, ZeroTargetImposesNothing) {
  Program p = testing::program(kAB, "b");
  TrustReport r = check(p, "a = 0\nb = 1\n");
  EXPECT_TRUE(r.trusted);
  for (auto& row : r.rows) EXPECT_EQ(row.constrained, print_term(row.outcome) == "b");
}

TEST_F(Trust, MonotoneInEpsilon) {
  Program p = testing::program(kAB, "choose[1/3]{a}{b} !");
  EXPECT_FALSE(check(p, "a = 1/2\nb = 1/2\n", R(1, 6)).trusted);
  EXPECT_TRUE(check(p, "a = 1/2\nb = 1/2\n", R(1, 5)).trusted);
  EXPECT_TRUE(check(p, "a = 1/2\nb = 1/2\n", R(1)).trusted);
}

TEST_F(Trust, UntargetedMassFailsVerdict) {
  Program p = testing::program(kAB, "choose[1/3]{a}{b} !");
  TrustReport r = check(p, "a = 1/3\n");
  EXPECT_FALSE(r.untargeted_ok);
  EXPECT_EQ(r.untargeted_mass, R(2, 3));
  EXPECT_FALSE(r.trusted);
  EXPECT_TRUE(check(p, "a = 1/3\n", R(1)).trusted);
}

TEST_F(Trust, UnknownOutcomes) {
  Program p = testing::program(kAB, "a");
  EXPECT_EQ(error_of([&] { check(p, "zz = 1\n"); }), ErrorCode::UnknownOutcome);
  EXPECT_EQ(error_of([&] { check(p, "(\\x:A. x) a = 1\n"); }), ErrorCode::UnknownOutcome);
  EXPECT_EQ(error_of([&] { check(p, "\\x:A. x = 1\n"); }), ErrorCode::UnknownOutcome);
}

TEST_F(Trust, EpsilonRange) {
  Program p = testing::program(kAB, "a");
  EXPECT_EQ(error_of([&] { make_trust_spec(p, parse_distribution("a = 1\n"), R(0)); }), ErrorCode::Usage);
}

TEST_F(Trust, SingleOutcomeCertificate) {
  Program p = testing::program(kAB, "a");
  TrustSpec spec = make_trust_spec(p, parse_distribution("a = 1\n"), R(1, 100));
  auto cert = build_certificate(p, trust_check(p, spec));
  EXPECT_EQ(cert["distribution"].size(), 1u);
  EXPECT_EQ(cert["totality"], "1/1");
  EXPECT_EQ(cert["seedless"], true);
  EXPECT_NO_THROW(replay_certificate(p, spec, cert));
}

TEST_F(Trust, TwoOutcomeCertificateReplays) {
  Program p = testing::program(kAB, "choose[1/3]{a}{b} !");
  TrustSpec spec = make_trust_spec(p, parse_distribution("a = 1/3\nb = 2/3\n"), R(1, 100));
  auto cert = build_certificate(p, trust_check(p, spec));
  EXPECT_EQ(cert["witnesses"].size(), 2u);
  EXPECT_EQ(cert["verdict"], "trusted");
  EXPECT_NO_THROW(replay_certificate(p, spec, cert));
}

TEST_F(Trust, TamperedWitnessProbability) {
  Program p = testing::program(kAB, "choose[1/3]{a}{b} !");
  TrustSpec spec = make_trust_spec(p, parse_distribution("a = 1/3\nb = 2/3\n"), R(1, 100));
  auto cert = build_certificate(p, trust_check(p, spec));
  cert["witnesses"][0]["branches"][0][0]["q"] = "1/2";
  EXPECT_EQ(error_of([&] { replay_certificate(p, spec, cert); }), ErrorCode::ProbabilityMismatch);
}

TEST_F(Trust, EverySingleFieldMutationRejected) {
  Program p = testing::program(kAB, "choose[1/2]{a}{choose[1/3]{b}{a} !} !");
  TrustSpec spec = make_trust_spec(p, parse_distribution("a = 2/3\nb = 1/6\nc = 1/6\n"), R(1, 100));
  auto cert = build_certificate(p, trust_check(p, spec));
  ASSERT_NO_THROW(replay_certificate(p, spec, cert));
  auto mutations = testing::single_field_mutations(cert);
  EXPECT_GT(mutations.size(), 20u);
  for (auto& [where, bad] : mutations) EXPECT_ANY_THROW(replay_certificate(p, spec, bad)) << where;
}

TEST_F(Trust, OracleFrequencyView) {
  Program p = testing::program(kAB, "#coin !", testing::kCyclic);
  TrustSpec spec = make_trust_spec(p, parse_distribution("a = 2/3\nb = 1/3\n"), R(1, 100), 3);
  TrustReport r = trust_check(p, spec);
  EXPECT_TRUE(r.trusted);
  auto cert = build_certificate(p, r);
  EXPECT_NO_THROW(replay_certificate(p, spec, cert));
}

}  // namespace
}  // namespace olam
