#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace olam {

/// Stable, machine-readable error codes. The spelling returned by
/// code_name() is part of the CLI's JSON output and must not change.
enum class ErrorCode {
  // surface
  LexError,
  SyntaxError,
  UnboundName,
  DuplicateName,
  MissingMain,
  MalformedRational,
  ProbabilityOutOfRange,
  DuplicateOutcome,
  // oracles
  UnknownOracle,
  InvalidOracleType,
  InvalidHoleIndex,
  OutputIllTyped,
  OutputNotClosed,
  OutputContainsOracle,
  // constructors / kinds / types
  InvalidRedexPath,
  FuelExhausted,
  IllFormedKind,
  UnboundConVar,
  UnboundVar,
  KindMismatch,
  NotAKindFunction,
  TypeMismatch,
  NotAFunction,
  NotAPair,
  NotAChoice,
  EfqOnNonBottom,
  EfqTargetContainsForall,
  BranchTypeMismatch,
  ComputationTerm,
  // traces
  BrokenChain,
  RuleMismatch,
  ProbabilityMismatch,
  NDConditionViolated,
  OracleReplayMismatch,
  // trust
  UnknownOutcome,
  IncompleteWitnesses,
  CertificateInvalid,
  // driver
  Usage,
  Io,
};

std::string_view code_name(ErrorCode code);

struct SourcePos {
  int line = 0;
  int column = 0;
  bool known() const { return line > 0; }
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, SourcePos pos = {})
      : std::runtime_error(message), code_(code), pos_(pos) {}

  ErrorCode code() const { return code_; }
  const SourcePos& pos() const { return pos_; }

  /// `CODE at L:C: message`, or `CODE: message` when no position is known.
  std::string describe() const;

 private:
  ErrorCode code_;
  SourcePos pos_;
};

}  // namespace olam
