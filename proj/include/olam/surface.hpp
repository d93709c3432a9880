#pragma once

// Concrete syntax for programs (.olam), target distributions (.dist) and the
// shared term/type/kind grammar. Oracle files are parsed in oracle.hpp.
//
//   term  ::= \x:T. t | t s | #o | #o t | t ! | t.0 | t.1 | <t, s>
//           | choose[p]{t}{s} | efq(t : T) | x | (t)
//   type  ::= forall x:T. T | T -> T | T /\ T | Oplus T | Sigma T | Bot
//           | \\x:T. T | T t | A | (T)
//   kind  ::= * | Pi x:T. K
//
// Comments run from `--` to end of line. In program files a token in column
// 1 starts a new statement.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "olam/rational.hpp"
#include "olam/syntax.hpp"

namespace olam {

struct AtomDecl {
  Name name;
  Kind kind;
  SourcePos pos;
};

struct ConstDecl {
  Name name;
  TypeCon type;
  SourcePos pos;
};

using Declaration = std::variant<AtomDecl, ConstDecl>;

struct Definition {
  Name name;
  std::optional<TypeCon> ascription;
  Term body;
  SourcePos pos;
};

struct OracleImport {
  std::string path;
  SourcePos pos;
};

struct SourceFile {
  std::vector<Declaration> declarations;  // in source order
  std::vector<OracleImport> imports;
  std::vector<Definition> definitions;  // in source order

  const Definition* find(const Name& name) const;
  /// Body of `name` with every earlier definition substituted in.
  Term expanded(const Name& name) const;
};

/// Parses and scope-checks a program. Errors: LexError, SyntaxError,
/// UnboundName, DuplicateName, MalformedRational, ProbabilityOutOfRange.
SourceFile parse_program(std::string_view text);

struct TargetEntry {
  Term outcome;
  Rational prob;
  SourcePos pos;
};

struct TargetDistributionFile {
  std::vector<TargetEntry> entries;
  /// From an optional `epsilon = p/q` line.
  std::optional<Rational> epsilon;
};

/// Lines of `term = p/q`. Outcome names are resolved later, against the
/// program. Errors: MalformedRational, ProbabilityOutOfRange, DuplicateOutcome.
TargetDistributionFile parse_distribution(std::string_view text);

/// Grammar entry points without name resolution.
Term parse_term(std::string_view text);
TypeCon parse_type(std::string_view text);
Kind parse_kind(std::string_view text);

std::string print_term(const Term& t);
std::string print_type(const TypeCon& c);
std::string print_kind(const Kind& k);

/// Printed form of the alpha-normalized term; equal strings iff alpha-equal.
std::string canonical_form(const Term& t);
std::string canonical_form(const TypeCon& c);

}  // namespace olam
