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
#include "core/frame_codec.hpp"

#include <chrono>

namespace padlight {

namespace {

void check_field(const char* name, int value, int max) {
  if (value < 0 || value > max) {
    throw Error(ErrorCode::kRange, std::string(name) + "=" +
                                       std::to_string(value) +
                                       " outside 0.." + std::to_string(max));
  }
}

}  // namespace

RawFrame encode_frame(const TouchSample& s) {
  check_field("x", s.x, kCoordMax);
  check_field("y", s.y, kCoordMax);
  check_field("z", s.z, kPressureMax);
  return RawFrame{
      static_cast<std::uint8_t>(kSyncByte | (s.finger ? 1 : 0)),
      static_cast<std::uint8_t>(s.x >> 8),
      static_cast<std::uint8_t>(s.x & 0xFF),
      static_cast<std::uint8_t>(s.y >> 8),
      static_cast<std::uint8_t>(s.y & 0xFF),
      static_cast<std::uint8_t>(s.z),
  };
}

TouchSample decode_frame(std::span<const std::uint8_t, kFrameSize> f) {
  if (!is_sync_byte(f[0])) {
    throw Error(ErrorCode::kFraming, "bad sync byte");
  }
  if ((f[1] & 0xE0) != 0 || (f[3] & 0xE0) != 0) {
    throw Error(ErrorCode::kFraming, "nonzero high bits in coordinate byte");
  }
  TouchSample s;
  s.finger = (f[0] & 0x01) != 0;
  s.x = (f[1] << 8) | f[2];
  s.y = (f[3] << 8) | f[4];
  s.z = f[5];
  if (s.x > kCoordMax || s.y > kCoordMax) {
    throw Error(ErrorCode::kRange, "decoded coordinate above 6143 (x=" +
                                       std::to_string(s.x) +
                                       " y=" + std::to_string(s.y) + ")");
  }
  return s;
}

Clock host_clock() {
  return [] {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch())
        .count();
  };
}

StreamDecoder::StreamDecoder(Clock clock) : clock_(std::move(clock)) {}

std::vector<StreamEvent> StreamDecoder::push(std::uint8_t byte) {
  return push(std::span<const std::uint8_t>(&byte, 1));
}

std::vector<StreamEvent> StreamDecoder::push(
    std::span<const std::uint8_t> bytes) {
  std::vector<StreamEvent> out;
  buf_.insert(buf_.end(), bytes.begin(), bytes.end());
  drain(out);
  return out;
}

std::vector<StreamEvent> StreamDecoder::finish() {
  std::vector<StreamEvent> out;
  flush_skipped(out);
  if (!buf_.empty()) {
    out.push_back(Diagnostic{
        DiagnosticKind::kTruncated, ErrorCode::kFraming, offset_,
        "truncated frame (" + std::to_string(buf_.size()) + " bytes)"});
    discard_front(buf_.size());
  }
  return out;
}

void StreamDecoder::discard_front(std::size_t n) {
  buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(n));
  offset_ += n;
}

void StreamDecoder::flush_skipped(std::vector<StreamEvent>& out) {
  if (skipped_ == 0) return;
  out.push_back(Diagnostic{
      DiagnosticKind::kSkippedBytes, ErrorCode::kFraming, skip_start_,
      "skipped " + std::to_string(skipped_) + " byte(s) without sync"});
  skipped_ = 0;
}

void StreamDecoder::drain(std::vector<StreamEvent>& out) {
  for (;;) {
    while (!buf_.empty() && !is_sync_byte(buf_.front())) {
      if (skipped_ == 0) skip_start_ = offset_;
      ++skipped_;
      discard_front(1);
    }
    if (buf_.empty()) return;
    flush_skipped(out);
    if (buf_.size() < kFrameSize) return;

    RawFrame candidate;
    std::copy_n(buf_.begin(), kFrameSize, candidate.begin());
    try {
      TouchSample s = decode_frame(candidate);
      s.t_ms = clock_();
      out.emplace_back(s);
      discard_front(kFrameSize);
    } catch (const Error& e) {
      out.push_back(
          Diagnostic{DiagnosticKind::kBadFrame, e.code(), offset_, e.what()});
      discard_front(1);
    }
  }
}

}  // namespace padlight
