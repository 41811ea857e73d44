#include "vqi/error.hpp"

namespace vqi {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyQuestion: return "EmptyQuestion";
    case ErrorCode::EmptyVector: return "EmptyVector";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::AnswerCountNot10: return "AnswerCountNot10";
    case ErrorCode::DanglingAnnotation: return "DanglingAnnotation";
    case ErrorCode::DanglingImplication: return "DanglingImplication";
    case ErrorCode::MissingGroundTruth: return "MissingGroundTruth";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::VocabMismatch: return "VocabMismatch";
    case ErrorCode::TokenOutOfVocab: return "TokenOutOfVocab";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace vqi
