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
#include "core/error.hpp"

namespace padlight {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kFraming: return "FramingError";
    case ErrorCode::kChecksum: return "ChecksumError";
    case ErrorCode::kTraceFormat: return "TraceFormatError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kBind: return "BindError";
  }
  return "UnknownError";
}

}  // namespace padlight
