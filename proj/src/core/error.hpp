/*
 * Copyright 2026 The padlight Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padlight {

enum class ErrorCode {
  kRange,
  kFraming,
  kChecksum,
  kTraceFormat,
  kInvalidArgument,
  kIo,
  kBind,
};

std::string_view to_string(ErrorCode code) noexcept;

// All recoverable failures in the core are reported as padlight::Error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown while parsing a trace; carries the 1-based line of the bad record.
class TraceFormatError : public Error {
 public:
  TraceFormatError(std::size_t line, const std::string& detail)
      : Error(ErrorCode::kTraceFormat,
              "line " + std::to_string(line) + ": " + detail),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace padlight
