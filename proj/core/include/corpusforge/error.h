// Copyright 2026 The CorpusForge Authors
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

#ifndef CORPUSFORGE_ERROR_H_
#define CORPUSFORGE_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corpusforge {

enum class ErrorCode {
  kIoError,
  kParseError,
  kConfigError,
  kEmptyCorpus,
  kLowConfidence,
  kNoProfiles,
  kCoverageError,
  kTooLong,
  kContainsReserved,
  kMalformedPair,
  kCorpusTooSmall,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorCode::kIoError, message) {}
};

// Malformed input line. Carries the 1-based line number within the shard.
class ParseError : public Error {
 public:
  ParseError(std::size_t line_number, const std::string& message)
      : Error(ErrorCode::kParseError, message), line_number_(line_number) {}

  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorCode::kConfigError, message) {}
};

}  // namespace corpusforge

#endif  // CORPUSFORGE_ERROR_H_
