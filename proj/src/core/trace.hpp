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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "core/frame_codec.hpp"

namespace padlight {

// One line of a trace file:
//   {"t_ms":0,"x":0,"y":6143,"z":80,"finger":true}
struct TraceRecord {
  std::int64_t t_ms = 0;
  int x = 0;
  int y = 0;
  int z = 0;
  bool finger = false;

  TouchSample to_sample() const { return {x, y, z, finger, t_ms}; }
  static TraceRecord from_sample(const TouchSample& s) {
    return {s.t_ms, s.x, s.y, s.z, s.finger};
  }
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

// Parses a single non-comment line. Throws TraceFormatError.
TraceRecord parse_trace_line(std::string_view line, std::size_t line_no);

// Blank lines and lines starting with '#' are skipped. Records must be in
// non-decreasing t_ms order.
std::vector<TraceRecord> parse_trace(std::istream& in);
std::vector<TraceRecord> parse_trace(std::string_view text);
std::vector<TraceRecord> load_trace_file(const std::string& path);

std::string format_trace_record(const TraceRecord& r);

}  // namespace padlight
