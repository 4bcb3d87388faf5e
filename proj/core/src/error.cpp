#include "graphonlab/error.hpp"

namespace graphonlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AsymmetricMatrix: return "AsymmetricMatrix";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::TooManyParts: return "TooManyParts";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::ExactTooLarge: return "ExactTooLarge";
    case ErrorCode::TooExpensive: return "TooExpensive";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::IllegalWeakening: return "IllegalWeakening";
    case ErrorCode::AlignmentBudgetExceeded: return "AlignmentBudgetExceeded";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::TruthMismatch: return "TruthMismatch";
    case ErrorCode::BlockLimitExceeded: return "BlockLimitExceeded";
    case ErrorCode::MalformedSpectrum: return "MalformedSpectrum";
    case ErrorCode::RenderTooLarge: return "RenderTooLarge";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::NamePrefixExhausted: return "NamePrefixExhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_certificate_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::AlignmentBudgetExceeded:
    case ErrorCode::NonConvergence:
    case ErrorCode::TruthMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace graphonlab
