#include "olam/error.hpp"

namespace olam {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::LexError: return "LexError";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnboundName: return "UnboundName";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::MissingMain: return "MissingMain";
    case ErrorCode::MalformedRational: return "MalformedRational";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::DuplicateOutcome: return "DuplicateOutcome";
    case ErrorCode::UnknownOracle: return "UnknownOracle";
    case ErrorCode::InvalidOracleType: return "InvalidOracleType";
    case ErrorCode::InvalidHoleIndex: return "InvalidHoleIndex";
    case ErrorCode::OutputIllTyped: return "OutputIllTyped";
    case ErrorCode::OutputNotClosed: return "OutputNotClosed";
    case ErrorCode::OutputContainsOracle: return "OutputContainsOracle";
    case ErrorCode::InvalidRedexPath: return "InvalidRedexPath";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::IllFormedKind: return "IllFormedKind";
    case ErrorCode::UnboundConVar: return "UnboundConVar";
    case ErrorCode::UnboundVar: return "UnboundVar";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::NotAKindFunction: return "NotAKindFunction";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::NotAFunction: return "NotAFunction";
    case ErrorCode::NotAPair: return "NotAPair";
    case ErrorCode::NotAChoice: return "NotAChoice";
    case ErrorCode::EfqOnNonBottom: return "EfqOnNonBottom";
    case ErrorCode::EfqTargetContainsForall: return "EfqTargetContainsForall";
    case ErrorCode::BranchTypeMismatch: return "BranchTypeMismatch";
    case ErrorCode::ComputationTerm: return "ComputationTerm";
    case ErrorCode::BrokenChain: return "BrokenChain";
    case ErrorCode::RuleMismatch: return "RuleMismatch";
    case ErrorCode::ProbabilityMismatch: return "ProbabilityMismatch";
    case ErrorCode::NDConditionViolated: return "NDConditionViolated";
    case ErrorCode::OracleReplayMismatch: return "OracleReplayMismatch";
    case ErrorCode::UnknownOutcome: return "UnknownOutcome";
    case ErrorCode::IncompleteWitnesses: return "IncompleteWitnesses";
    case ErrorCode::CertificateInvalid: return "CertificateInvalid";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string Error::describe() const {
  std::string out(code_name(code_));
  if (pos_.known()) out += " at " + std::to_string(pos_.line) + ":" + std::to_string(pos_.column);
  out += ": ";
  out += what();
  return out;
}

}  // namespace olam
