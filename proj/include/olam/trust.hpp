#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "olam/program.hpp"
#include "olam/rational.hpp"
#include "olam/trace.hpp"

namespace olam {

struct TrustTarget {
  Term outcome;
  Rational prob;
};

struct TrustSpec {
  std::vector<TrustTarget> targets;
  /// Threshold; must satisfy 0 < epsilon <= 1.
  Rational epsilon;
  /// When set and the program is a bare oracle occurrence, outcomes come
  /// from the frequency view over this many tuple positions.
  std::optional<std::size_t> frequency_width;
  std::size_t fuel = kDefaultFuel;
};

/// Resolves the outcome terms of a target file against the program.
/// Throws UnknownOutcome for a term that is not a closed normal form of
/// main's type.
TrustSpec make_trust_spec(const Program& program, const TargetDistributionFile& file, const Rational& epsilon,
                          std::optional<std::size_t> frequency_width = std::nullopt);

struct TrustRow {
  Term outcome;
  /// f(t, y); absent when the target file does not mention y.
  std::optional<Rational> target;
  /// The enumerated probability z; absent when t never produces y.
  std::optional<Rational> derived;
  /// f - z, with absent values read as 0.
  Rational difference;
  /// Rows with a non-zero target must satisfy |f - z| < epsilon.
  bool constrained = false;
  bool pass = true;
};

struct TrustReport {
  bool trusted = false;
  std::vector<TrustRow> rows;
  Rational total;
  bool total_ok = false;
  /// Mass of produced outcomes whose target is absent or zero.
  Rational untargeted_mass;
  bool untargeted_ok = true;
  Rational epsilon;
  Enumeration enumeration;
};

TrustReport trust_check(const Program& program, const TrustSpec& spec);

/// JSON certificate bundling the totality computation, one evaluation
/// witness per outcome and every threshold comparison. Throws
/// IncompleteWitnesses when the distribution is not total or an outcome
/// lacks a witness.
nlohmann::ordered_json build_certificate(const Program& program, const TrustReport& report);

/// Independent replay: re-checks every witness, recomputes every rational
/// and compares against the program and target. Throws CertificateInvalid
/// (or the witness error) on any discrepancy.
void replay_certificate(const Program& program, const TrustSpec& spec, const nlohmann::ordered_json& cert);

}  // namespace olam
