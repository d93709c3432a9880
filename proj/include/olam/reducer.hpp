#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "olam/checker.hpp"
#include "olam/constructor.hpp"
#include "olam/rational.hpp"
#include "olam/syntax.hpp"

namespace olam {

enum class RedexKind { Beta, Proj, ChoiceNu, OracleNullary, OracleUnary };

enum class Label { Beta, Left, Right, Omega, Pi };

/// `beta`, `left`, `right`, `omega`, `pi`.
std::string_view label_name(Label l);
/// Greek-letter rendering used in text reports.
std::string_view label_symbol(Label l);
/// Inverse of label_name.
std::optional<Label> parse_label(std::string_view s);

/// Seed for the `index`-th of several independent samples drawn under `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

struct TermRedex {
  /// Position of the redex; for oracle redexes, of the first occurrence.
  Path path;
  RedexKind kind;
  /// Set for oracle redexes. All occurrences of this oracle fire together.
  Name oracle;
};

struct StepOutcome {
  Term term;
  Rational prob;
  Label label;
};

class Reducer {
 public:
  Reducer(const TypeChecker& checker, Environment globals)
      : checker_(&checker), globals_(std::move(globals)) {}

  /// Every redex in preorder. Oracle redexes appear once per oracle, at the
  /// position of its first occurrence.
  std::vector<TermRedex> find_redexes(const Term& t) const;

  /// Outcomes of contracting r. Probabilities sum to 1.
  /// Errors: InvalidRedexPath, InvalidHoleIndex, OutputIllTyped.
  std::vector<StepOutcome> step(const Term& t, const TermRedex& r) const;

  /// The leftmost-outermost redex, or nullopt for a normal form.
  std::optional<TermRedex> deterministic_strategy(const Term& t) const;

  struct Sample {
    Term normal_form;
    Rational prob;
    std::vector<StepOutcome> trace;
  };
  /// Follows the deterministic strategy, drawing choices from a generator
  /// seeded with `seed`. Throws FuelExhausted.
  Sample run_sample(const Term& t, std::uint64_t seed, std::size_t fuel = kDefaultFuel) const;

  const TypeChecker& checker() const { return *checker_; }
  const Environment& globals() const { return globals_; }

 private:
  const TypeChecker* checker_;
  Environment globals_;
};

}  // namespace olam
