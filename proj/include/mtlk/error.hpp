// Copyright 2026 The mtlk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtlk {

enum class ErrorCode {
  kSyntaxError,
  kIntervalError,
  kWrongLogic,
  kNonPositiveScale,
  kPoolTooSmall,
  kUnboundVariable,
  kDepthExceeded,
  kNotInFragment,
  kNotHif,
  kNotBounded,
  kUnexpectedAtomShape,
  kNameClash,
  kNuUnavailable,
  kInvalidNu,
  kIndexOutOfRange,
  kWrongBound,
  kMissingCoreTranslation,
  kInfiniteReach,
  kNoSuchElement,
  kCorpusCorrupt,
  kNumericOverflow,
  kInvalidSignal,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with the byte offset at which it was detected.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorCode::kSyntaxError,
              "at position " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mtlk
