#pragma once

#include <stdexcept>
#include <string>

namespace riskminer {

// Every failure the library can signal. Data-shaped problems (bad files,
// bad values) and contract violations both land here; the CLI maps them
// to exit codes.
enum class ErrorCode {
  // corpus
  MalformedRecord,
  DuplicateId,
  EmptyText,
  UnknownReportType,
  NonPositiveAsset,
  // preprocess
  MissingLexicon,
  // features
  EmptyVocabulary,
  CorpusTooSmall,
  DimensionMismatch,
  ZeroVector,
  // topics
  EmptyDocument,
  TopicOutOfRange,
  IndexOutOfRange,
  // models
  NotADistribution,
  ShapeMismatch,
  EmptyClass,
  SingleClass,
  DegenerateData,
  EmptySequence,
  // eval
  BadRatios,
  TooFewSamples,
  BadK,
  LengthMismatch,
  UnknownLabel,
  EmptyMatrix,
  ConstantTarget,
  EmptySpace,
  // finance
  NonPositiveDenominator,
  NonPositiveBase,
  UnmatchedCompany,
  // shared
  InvalidConfig,
  EmptyInput,
  SchemaMismatch,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace riskminer
