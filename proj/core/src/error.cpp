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

#include "htg_eval/error.hpp"

namespace htg {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kNonFiniteData: return "NonFiniteData";
    case ErrorCode::kAlignmentError: return "AlignmentError";
    case ErrorCode::kShapeError: return "ShapeError";
    case ErrorCode::kIdenticalImages: return "IdenticalImages";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kNumericalError: return "NumericalError";
    case ErrorCode::kWriterMismatch: return "WriterMismatch";
    case ErrorCode::kEmptyReference: return "EmptyReference";
    case ErrorCode::kNoRecords: return "NoRecords";
    case ErrorCode::kSplitViolation: return "SplitViolation";
    case ErrorCode::kVocabViolation: return "VocabViolation";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace htg
