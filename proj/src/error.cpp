#include "riskminer/error.hpp"

namespace riskminer {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::UnknownReportType: return "UnknownReportType";
    case ErrorCode::NonPositiveAsset: return "NonPositiveAsset";
    case ErrorCode::MissingLexicon: return "MissingLexicon";
    case ErrorCode::EmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::CorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::EmptyDocument: return "EmptyDocument";
    case ErrorCode::TopicOutOfRange: return "TopicOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotADistribution: return "NotADistribution";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::BadRatios: return "BadRatios";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::ConstantTarget: return "ConstantTarget";
    case ErrorCode::EmptySpace: return "EmptySpace";
    case ErrorCode::NonPositiveDenominator: return "NonPositiveDenominator";
    case ErrorCode::NonPositiveBase: return "NonPositiveBase";
    case ErrorCode::UnmatchedCompany: return "UnmatchedCompany";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace riskminer
