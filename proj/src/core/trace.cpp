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
#include "core/trace.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include <json.hpp>

namespace padlight {

namespace {

using nlohmann::json;

std::int64_t int_field(const json& obj, const char* key, std::size_t line_no) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw TraceFormatError(line_no, std::string("missing \"") + key + "\"");
  }
  if (!it->is_number_integer()) {
    throw TraceFormatError(line_no, std::string("\"") + key +
                                        "\" must be an integer");
  }
  return it->get<std::int64_t>();
}

void check_range(std::int64_t v, std::int64_t max, const char* key,
                 std::size_t line_no) {
  if (v < 0 || v > max) {
    throw TraceFormatError(line_no, std::string("\"") + key + "\"=" +
                                        std::to_string(v) + " outside 0.." +
                                        std::to_string(max));
  }
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

TraceRecord parse_trace_line(std::string_view line, std::size_t line_no) {
  json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) throw TraceFormatError(line_no, "invalid JSON");
  if (!obj.is_object()) throw TraceFormatError(line_no, "expected an object");

  TraceRecord r;
  r.t_ms = int_field(obj, "t_ms", line_no);
  if (r.t_ms < 0) throw TraceFormatError(line_no, "\"t_ms\" is negative");
  const auto x = int_field(obj, "x", line_no);
  const auto y = int_field(obj, "y", line_no);
  const auto z = int_field(obj, "z", line_no);
  check_range(x, kCoordMax, "x", line_no);
  check_range(y, kCoordMax, "y", line_no);
  check_range(z, kPressureMax, "z", line_no);
  r.x = static_cast<int>(x);
  r.y = static_cast<int>(y);
  r.z = static_cast<int>(z);

  auto f = obj.find("finger");
  if (f == obj.end()) throw TraceFormatError(line_no, "missing \"finger\"");
  if (!f->is_boolean()) {
    throw TraceFormatError(line_no, "\"finger\" must be a boolean");
  }
  r.finger = f->get<bool>();
  return r;
}

std::vector<TraceRecord> parse_trace(std::istream& in) {
  std::vector<TraceRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    TraceRecord r = parse_trace_line(body, line_no);
    if (!out.empty() && r.t_ms < out.back().t_ms) {
      throw TraceFormatError(line_no, "t_ms goes backwards");
    }
    out.push_back(r);
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "error reading trace");
  return out;
}

std::vector<TraceRecord> parse_trace(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

std::vector<TraceRecord> load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open trace file: " + path);
  return parse_trace(in);
}

std::string format_trace_record(const TraceRecord& r) {
  // Fixed key order so output is byte-stable.
  std::ostringstream os;
  os << "{\"t_ms\":" << r.t_ms << ",\"x\":" << r.x << ",\"y\":" << r.y
     << ",\"z\":" << r.z << ",\"finger\":" << (r.finger ? "true" : "false")
     << "}";
  return os.str();
}

}  // namespace padlight
