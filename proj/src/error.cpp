// Copyright 2026 The aqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aqpe/error.hpp"

namespace aqpe {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kInvalidAxisChar: return "InvalidAxisChar";
    case ErrorCode::kDuplicateString: return "DuplicateString";
    case ErrorCode::kMalformedNumber: return "MalformedNumber";
    case ErrorCode::kImaginaryCoefficient: return "ImaginaryCoefficient";
    case ErrorCode::kDimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::kSymmetryViolation: return "SymmetryViolation";
    case ErrorCode::kParityViolation: return "ParityViolation";
    case ErrorCode::kMismatchedQubitCount: return "MismatchedQubitCount";
    case ErrorCode::kLeakageUnsupported: return "LeakageUnsupported";
    case ErrorCode::kEmptyAfterSelection: return "EmptyAfterSelection";
    case ErrorCode::kDegenerateRatio: return "DegenerateRatio";
    case ErrorCode::kDivisionByNearZero: return "DivisionByNearZero";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::size_t line) {
  std::string out(to_string(code));
  if (line > 0) out += " at line " + std::to_string(line);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace aqpe
