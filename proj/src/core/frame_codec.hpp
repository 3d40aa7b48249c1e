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

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "core/error.hpp"

namespace padlight {

inline constexpr int kCoordMax = 6143;
inline constexpr int kPressureMax = 255;
inline constexpr std::size_t kFrameSize = 6;
inline constexpr std::uint8_t kSyncByte = 0x80;
inline constexpr std::uint8_t kSyncMask = 0xFE;

struct TouchSample {
  int x = 0;
  int y = 0;
  int z = 0;
  bool finger = false;
  // Not carried on the wire.
  std::int64_t t_ms = 0;

  // Wire equality: compares everything except the timestamp.
  bool same_contact(const TouchSample& o) const noexcept {
    return x == o.x && y == o.y && z == o.z && finger == o.finger;
  }
  friend bool operator==(const TouchSample&, const TouchSample&) = default;
};

using RawFrame = std::array<std::uint8_t, kFrameSize>;

inline constexpr bool is_sync_byte(std::uint8_t b) noexcept {
  return (b & kSyncMask) == kSyncByte;
}

// byte0 = 0x80 | finger, then x[12:8], x[7:0], y[12:8], y[7:0], z.
// Throws Error(kRange) when a field is outside its declared range.
RawFrame encode_frame(const TouchSample& sample);

// Inverse of encode_frame. t_ms of the result is 0.
// Throws Error(kFraming) for a bad sync byte or nonzero high bits in the
// coordinate-high bytes, Error(kRange) when x or y decodes above 6143.
TouchSample decode_frame(std::span<const std::uint8_t, kFrameSize> frame);

enum class DiagnosticKind {
  kSkippedBytes,  // bytes before a sync byte that could not start a frame
  kBadFrame,      // a sync-aligned candidate failed validation
  kTruncated,     // stream ended inside a frame
};

struct Diagnostic {
  DiagnosticKind kind = DiagnosticKind::kBadFrame;
  ErrorCode code = ErrorCode::kFraming;
  // Stream offset of the first byte the diagnostic refers to.
  std::uint64_t offset = 0;
  std::string message;
};

using StreamEvent = std::variant<TouchSample, Diagnostic>;
using Clock = std::function<std::int64_t()>;

// Milliseconds on the host steady clock.
Clock host_clock();

// Incremental decoder for a raw frame byte stream.
//
// Bytes that cannot start a frame are skipped; each contiguous skipped run
// is reported once, as soon as the next sync byte shows up (or on finish).
// A 6-byte candidate that fails validation produces one Diagnostic and
// advances the stream by exactly one byte before scanning again.
class StreamDecoder {
 public:
  explicit StreamDecoder(Clock clock = host_clock());

  std::vector<StreamEvent> push(std::uint8_t byte);
  std::vector<StreamEvent> push(std::span<const std::uint8_t> bytes);

  // Reports any pending skipped run and a truncated trailing frame.
  std::vector<StreamEvent> finish();

  std::size_t buffered() const noexcept { return buf_.size(); }
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  void drain(std::vector<StreamEvent>& out);
  void flush_skipped(std::vector<StreamEvent>& out);
  void discard_front(std::size_t n);

  Clock clock_;
  std::deque<std::uint8_t> buf_;
  std::uint64_t offset_ = 0;  // stream offset of buf_.front()
  std::uint64_t skip_start_ = 0;
  std::size_t skipped_ = 0;
};

}  // namespace padlight
