#pragma once

#include <stdexcept>
#include <string>

namespace graphonlab {

enum class ErrorCode {
  AsymmetricMatrix,
  OutOfRange,
  EmptyGraph,
  NotAPermutation,
  OutOfDomain,
  TooManyParts,
  SizeMismatch,
  ExactTooLarge,
  TooExpensive,
  DigitOutOfRange,
  IllegalWeakening,
  AlignmentBudgetExceeded,
  NonConvergence,
  TruthMismatch,
  BlockLimitExceeded,
  MalformedSpectrum,
  RenderTooLarge,
  UnknownSuite,
  NamePrefixExhausted,
  ParseError,
  InvalidArgument,
  IoError,
};

const char* to_string(ErrorCode code);

// Certificate failures map to CLI exit code 3, everything else to 2.
bool is_certificate_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphonlab
