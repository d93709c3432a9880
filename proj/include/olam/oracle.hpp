#pragma once

// Oracle constants and their oracular functions.
//
// File format, one block per oracle:
//
//   oracle coin arity 0 type Sigma Bool
//     rule index mod 2 = 1 -> true
//     rule index in {2, 4} -> false
//     default -> false
//
// Unary oracles have type `forall x:A. Sigma B` and may also use
// `rule arg = <closed term> -> ...`. `rule context = "<fingerprint>" -> ...`
// matches the printed alpha-normal context, holes written `[_i]`.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "olam/context.hpp"
#include "olam/syntax.hpp"

namespace olam {

class TypeChecker;
class Environment;

namespace guard {

struct IndexIn { std::set<std::size_t> indices; };
struct IndexMod { std::size_t modulus; std::size_t residue; };
struct ArgEquals { Term pattern; };
struct ContextEquals { std::string fingerprint; };

}  // namespace guard

using OracleGuard = std::variant<guard::IndexIn, guard::IndexMod, guard::ArgEquals, guard::ContextEquals>;

struct OracleRule {
  std::optional<OracleGuard> guard;  // nullopt is `default`
  Term output;
  SourcePos pos;
};

struct OracleDef {
  Name name;
  int arity = 0;
  /// `Sigma A` for arity 0, `forall x:A. Sigma B` for arity 1.
  TypeCon type;
  std::vector<OracleRule> rules;  // the last one is the default
  SourcePos pos;

  /// A for arity 0. B[arg/x] for arity 1.
  TypeCon output_type(const std::optional<Term>& arg) const;
  /// The argument type A of a unary oracle.
  TypeCon argument_type() const;
};

/// Errors: LexError, SyntaxError, InvalidOracleType (bad arity or a type of
/// the wrong shape), DuplicateName, MalformedRational.
std::vector<OracleDef> parse_oracles(std::string_view text);

std::string context_fingerprint(const HoleContext& ctx);

/// f_o(ctx, m) with an optional argument. Pure.
/// Throws InvalidHoleIndex unless 1 <= m <= hole count.
Term eval_oracle(const OracleDef& def, const HoleContext& ctx, std::size_t m, const std::optional<Term>& arg);

/// Checks the associated type and every output that can be checked without
/// knowing the invocation argument.
/// Errors: InvalidOracleType, OutputNotClosed, OutputContainsOracle, OutputIllTyped.
void validate_oracle(const OracleDef& def, const TypeChecker& checker, const Environment& env);

class OracleRegistry {
 public:
  /// Throws DuplicateName.
  void add(OracleDef def);
  const OracleDef* find(const Name& name) const;
  /// Throws UnknownOracle.
  const OracleDef& get(const Name& name) const;
  std::vector<Name> names() const;

 private:
  std::map<Name, OracleDef> defs_;
};

}  // namespace olam
