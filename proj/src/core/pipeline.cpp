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
#include "core/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include <json.hpp>

namespace padlight {

std::string metrics_to_json(const Metrics& m) {
  nlohmann::ordered_json j;
  j["samples_in"] = m.samples_in;
  j["frames_bad"] = m.frames_bad;
  j["commands_out"] = m.commands_out;
  j["batches_out"] = m.batches_out;
  j["max_latency_ms"] = m.max_latency_ms;
  j["mean_latency_ms"] = m.mean_latency_ms;
  return j.dump();
}

std::string CommandRecord::to_line() const {
  return std::to_string(t_ms) + " " + to_hex(encode_command(command));
}

CommandRecord CommandRecord::from_line(std::string_view line) {
  const auto sp = line.find(' ');
  if (sp == std::string_view::npos) {
    throw Error(ErrorCode::kFraming, "expected \"t_ms HEX6\"");
  }
  CommandRecord r;
  const auto head = line.substr(0, sp);
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), r.t_ms);
  if (ec != std::errc{} || ptr != head.data() + head.size()) {
    throw Error(ErrorCode::kFraming, "bad timestamp");
  }
  const CommandBytes bytes = from_hex(line.substr(sp + 1));
  r.command = decode_command(bytes);
  return r;
}

Pipeline::Pipeline(EngineConfig config, bool limiter_on,
                   std::int64_t tick_period_ms)
    : config_(config) {
  config_.validate();
  if (limiter_on) limiter_.emplace(tick_period_ms);
}

std::size_t Pipeline::ingest(const TouchSample& sample) {
  if (sample.t_ms < now_ms_) {
    throw Error(ErrorCode::kInvalidArgument, "sample time goes backwards");
  }
  std::size_t emitted = advance(sample.t_ms);
  ++metrics_.samples_in;

  ApplyResult r = apply_sample(engine_, sample, config_);
  engine_ = r.state;
  if (!r.change) return emitted;

  if (!limiter_) {
    emitted += commit(Batch{sample.t_ms, {*r.change}, {0}});
  } else if (auto b = limiter_->push(*r.change, sample.t_ms)) {
    emitted += commit(*b);
  }
  return emitted;
}

std::size_t Pipeline::ingest(std::span<const StreamEvent> events) {
  std::size_t emitted = 0;
  for (const StreamEvent& ev : events) {
    if (const auto* s = std::get_if<TouchSample>(&ev)) {
      emitted += ingest(*s);
    } else {
      ++metrics_.frames_bad;
    }
  }
  return emitted;
}

std::size_t Pipeline::advance(std::int64_t now_ms) {
  now_ms_ = std::max(now_ms_, now_ms);
  if (!limiter_) return 0;
  if (auto b = limiter_->poll(now_ms_)) return commit(*b);
  return 0;
}

std::size_t Pipeline::finish() {
  if (!limiter_) return 0;
  if (auto b = limiter_->drain()) {
    now_ms_ = std::max(now_ms_, b->t_ms);
    return commit(*b);
  }
  return 0;
}

std::optional<std::int64_t> Pipeline::next_deadline() const {
  return limiter_ ? limiter_->deadline() : std::nullopt;
}

std::size_t Pipeline::commit(const Batch& b) {
  for (std::size_t i = 0; i < b.changes.size(); ++i) {
    const ChannelChange& c = b.changes[i];
    const LightCommand cmd{*channel_from_index(c.channel), c.level};
    light_.levels[static_cast<std::size_t>(c.channel)] = c.level;
    log_.push_back({b.t_ms, cmd});
    ++metrics_.commands_out;
    latency_sum_ms_ += b.latency_ms[i];
    metrics_.max_latency_ms = std::max(metrics_.max_latency_ms, b.latency_ms[i]);
  }
  ++metrics_.batches_out;
  if (sink_) sink_(b);
  return 1;
}

Metrics Pipeline::metrics() const {
  Metrics m = metrics_;
  m.mean_latency_ms = m.commands_out == 0
                          ? 0.0
                          : static_cast<double>(latency_sum_ms_) /
                                static_cast<double>(m.commands_out);
  return m;
}

ReplayResult run_replay(std::span<const TraceRecord> trace,
                        const EngineConfig& config, bool limiter_on) {
  Pipeline p(config, limiter_on);
  for (const TraceRecord& r : trace) p.ingest(r.to_sample());
  p.finish();
  return {p.light_state(), p.command_log(), p.metrics()};
}

ReplayResult run_stream_replay(std::span<const std::uint8_t> bytes,
                               const EngineConfig& config, bool limiter_on,
                               std::int64_t frame_period_ms) {
  std::int64_t frame_index = 0;
  StreamDecoder decoder([&] { return frame_period_ms * frame_index++; });
  Pipeline p(config, limiter_on);
  p.ingest(decoder.push(bytes));
  p.ingest(decoder.finish());
  p.finish();
  return {p.light_state(), p.command_log(), p.metrics()};
}

}  // namespace padlight
