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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/frame_codec.hpp"
#include "core/light_model.hpp"
#include "core/rate_limiter.hpp"
#include "core/slider_engine.hpp"
#include "core/trace.hpp"

namespace padlight {

struct Metrics {
  std::uint64_t samples_in = 0;
  std::uint64_t frames_bad = 0;
  std::uint64_t commands_out = 0;
  std::uint64_t batches_out = 0;
  std::int64_t max_latency_ms = 0;
  double mean_latency_ms = 0.0;
};

std::string metrics_to_json(const Metrics& m);

struct CommandRecord {
  std::int64_t t_ms = 0;
  LightCommand command;

  // "t_ms HEX6", e.g. "0 C016D6".
  std::string to_line() const;
  static CommandRecord from_line(std::string_view line);
  friend bool operator==(const CommandRecord&, const CommandRecord&) = default;
};

// Touch samples in, light commands out:
// engine -> (optional) rate limiter -> command sink + light state.
//
// Time only moves through sample timestamps and advance(), so the same
// inputs always give the same outputs. Not thread-safe; one owner.
class Pipeline {
 public:
  using BatchSink = std::function<void(const Batch&)>;

  explicit Pipeline(EngineConfig config, bool limiter_on = true,
                    std::int64_t tick_period_ms = kTickPeriodMs);

  // Called after every emitted batch, once light_state() reflects it.
  void on_batch(BatchSink sink) { sink_ = std::move(sink); }

  // Feeds one sample at its own t_ms. Returns the number of batches emitted.
  std::size_t ingest(const TouchSample& sample);
  // Samples go through ingest(); diagnostics count as bad frames.
  std::size_t ingest(std::span<const StreamEvent> events);

  // Moves the clock forward, flushing a due batch.
  std::size_t advance(std::int64_t now_ms);
  // Flushes anything still pending (end of input).
  std::size_t finish();

  std::optional<std::int64_t> next_deadline() const;

  const EngineConfig& config() const noexcept { return config_; }
  const EngineState& engine_state() const noexcept { return engine_; }
  const LightState& light_state() const noexcept { return light_; }
  const std::vector<CommandRecord>& command_log() const noexcept {
    return log_;
  }
  Metrics metrics() const;
  bool limiter_on() const noexcept { return limiter_.has_value(); }

 private:
  std::size_t commit(const Batch& b);

  EngineConfig config_;
  std::optional<RateLimiter> limiter_;
  EngineState engine_;
  LightState light_;
  std::vector<CommandRecord> log_;
  BatchSink sink_;
  std::int64_t now_ms_ = 0;

  Metrics metrics_;
  std::int64_t latency_sum_ms_ = 0;
};

struct ReplayResult {
  LightState final_state;
  std::vector<CommandRecord> log;
  Metrics metrics;
};

// Virtual-clock replay of a trace.
ReplayResult run_replay(std::span<const TraceRecord> trace,
                        const EngineConfig& config, bool limiter_on);

// Replays a raw frame byte stream; the n-th decoded frame is stamped
// n * frame_period_ms.
ReplayResult run_stream_replay(std::span<const std::uint8_t> bytes,
                               const EngineConfig& config, bool limiter_on,
                               std::int64_t frame_period_ms = kTickPeriodMs);

}  // namespace padlight
