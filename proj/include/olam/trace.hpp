#pragma once

// Static reduction sequences and the evaluation predicate `t |=^p s`.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "olam/rational.hpp"
#include "olam/reducer.hpp"
#include "olam/syntax.hpp"

namespace olam {

struct TraceQuadruple {
  Term before;
  Term after;
  Rational q;
  Label label;
};

struct StaticTrace {
  Term start;
  std::vector<TraceQuadruple> steps;

  const Term& last() const { return steps.empty() ? start : steps.back().after; }
  /// Product of the step probabilities.
  Rational probability() const;
  bool has_omega() const;
};

/// t1 ... tn. Throws BrokenChain unless consecutive quadruples chain.
std::vector<Term> produced_sequence(const StaticTrace& trace);

/// `t |=^p s`.
struct MapstoClaim {
  Term source;
  Term target;
  Rational prob;
};

/// Several traces from a common source to a common target.
struct MergeWitness {
  std::vector<StaticTrace> branches;
};

/// One oracle step on the n-tuple of a single oracle occurrence; the claim
/// probability is the share of tuple positions holding the target.
struct FrequencyWitness {
  std::size_t width = 0;
  StaticTrace tuple_trace;
};

using Witness = std::variant<StaticTrace, MergeWitness, FrequencyWitness>;

struct MapstoJudgment {
  MapstoClaim claim;
  Witness witness;
};

struct DistributionEntry {
  Term outcome;
  Rational prob;
  /// Indices into the judgment list backing this entry.
  std::vector<std::size_t> witnesses;
};

/// Outcomes in canonical order with positive probabilities.
struct Enumeration {
  std::vector<DistributionEntry> distribution;
  std::vector<MapstoJudgment> judgments;
  /// Every root-to-leaf trace, in depth-first order.
  std::vector<StaticTrace> paths;

  Rational total() const;
};

class TraceEngine {
 public:
  explicit TraceEngine(const Reducer& reducer) : reducer_(&reducer) {}

  /// Re-derives every step. Errors: BrokenChain, RuleMismatch,
  /// ProbabilityMismatch, NDConditionViolated, OracleReplayMismatch.
  void check_trace(const Witness& witness, const MapstoClaim& claim) const;

  /// The disjointness condition between two traces of a merge.
  bool not_equiv_nd(const StaticTrace& a, const StaticTrace& b) const;

  /// Judgment carried by a computation term `[t1, ..., tn]^p` or
  /// `[s, [k1 / ... / kn], t]^p`, whose branches list full term sequences.
  MapstoJudgment type_of_trace_term(const Term& t) const;

  /// Computation term for a judgment with a trace or merge witness.
  Term witness_term(const MapstoJudgment& j) const;

  /// Exhaustive expansion under the deterministic strategy. Fuel bounds the
  /// total number of steps over all branches. Throws FuelExhausted.
  Enumeration enumerate_distribution(const Term& t, std::size_t fuel = kDefaultFuel) const;

  /// Fires `o` once on the n-tuple of `#o !` (or `(#o arg) !`) and counts.
  Enumeration oracle_frequency(const Name& oracle, const std::optional<Term>& arg, std::size_t n) const;

  const Reducer& reducer() const { return *reducer_; }

 private:
  void check_static(const StaticTrace& trace) const;
  const Reducer* reducer_;
};

/// Single-occurrence oracle redex `#o !` or `(#o arg) !`.
Term oracle_occurrence(const Name& oracle, const std::optional<Term>& arg);

}  // namespace olam
