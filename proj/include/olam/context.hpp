#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "olam/syntax.hpp"

namespace olam {

/// A term with n >= 0 designated holes `[_1] ... [_n]`, each occurring once,
/// numbered in left-to-right preorder.
class HoleContext {
 public:
  HoleContext(Term skeleton, std::size_t holes) : skeleton_(std::move(skeleton)), holes_(holes) {}

  const Term& skeleton() const { return skeleton_; }
  std::size_t hole_count() const { return holes_; }

  /// Plugs hole `index` (1-based), leaving the other holes open. Filling is
  /// plain replacement: variables of `filler` may be captured by binders
  /// around the hole, which is what reconstructing an occurrence needs.
  HoleContext fill(std::size_t index, const Term& filler) const;
  /// Plugs every hole; `fillers[i]` goes into hole i+1.
  Term fill_all(const std::vector<Term>& fillers) const;

 private:
  Term skeleton_;
  std::size_t holes_;
};

/// One redex occurrence `o!` or `(o u)!` of an oracle.
struct OracleOccurrence {
  Path path;
  std::optional<Term> arg;
  /// The occurrence as it appeared in the original term.
  Term original;
};

struct OracleDecomposition {
  HoleContext context;
  std::vector<OracleOccurrence> occurrences;
};

/// Replaces every ν-redex occurrence of `oracle` in term positions by a hole.
/// An occurrence nested inside the argument of another occurrence of the same
/// oracle is part of the outer one and gets no hole of its own.
OracleDecomposition decompose_oracle_context(const Term& t, const Name& oracle);

/// If `t` is `#o !` or `(#o u) !`, returns the oracle name and argument.
struct OracleRedexShape {
  Name oracle;
  std::optional<Term> arg;
};
std::optional<OracleRedexShape> oracle_redex_shape(const Term& t);

}  // namespace olam
