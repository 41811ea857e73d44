#ifndef VQI_ERROR_HPP
#define VQI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vqi {

enum class ErrorCode {
  EmptyQuestion,
  EmptyVector,
  EmptyCorpus,
  InvalidInput,
  MalformedJson,
  MissingField,
  DuplicateId,
  AnswerCountNot10,
  DanglingAnnotation,
  DanglingImplication,
  MissingGroundTruth,
  LengthMismatch,
  NonFiniteWeight,
  VocabMismatch,
  TokenOutOfVocab,
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

}  // namespace vqi

#endif  // VQI_ERROR_HPP
