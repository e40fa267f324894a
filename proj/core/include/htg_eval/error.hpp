/* Copyright 2026 The htg-eval Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef HTG_EVAL_ERROR_HPP_
#define HTG_EVAL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace htg {

// Every failure surfaced by the toolkit carries one of these codes. The CLI
// prints the code name verbatim, so the names are part of the interface.
enum class ErrorCode {
  kInvalidArgument,
  kIoError,
  kDuplicateId,
  kSchemaError,
  kFormatError,
  kNonFiniteData,
  kAlignmentError,
  kShapeError,
  kIdenticalImages,
  kInsufficientSamples,
  kNumericalError,
  kWriterMismatch,
  kEmptyReference,
  kNoRecords,
  kSplitViolation,
  kVocabViolation,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace htg

#endif  // HTG_EVAL_ERROR_HPP_
