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
#include "padlight/padlight.h"

#include <cstring>
#include <string>

#include "core/frame_codec.hpp"
#include "core/light_model.hpp"
#include "core/pipeline.hpp"
#include "core/server.hpp"
#include "core/slider_engine.hpp"
#include "core/trace.hpp"

using namespace padlight;

struct padlight_decoder {
  StreamDecoder decoder;
};

struct padlight_engine {
  EngineConfig config;
  EngineState state;
};

struct padlight_pipeline {
  padlight_pipeline(const EngineConfig& config, bool limiter_on)
      : pipeline(config, limiter_on),
        decoder([this] { return frame_period_ms * frames_decoded++; }) {}

  Pipeline pipeline;
  StreamDecoder decoder;
  std::int64_t frame_period_ms = kTickPeriodMs;
  std::int64_t frames_decoded = 0;
  std::size_t reported = 0;  // log entries already passed to the callback
  padlight_command_fn on_command = nullptr;
  void* on_command_user = nullptr;
};

struct padlight_server {
  explicit padlight_server(const EngineConfig& config, const std::string& bind,
                           bool limiter_on)
      : server(config, bind, limiter_on) {}
  Server server;
};

namespace {

thread_local std::string g_last_error;
thread_local std::size_t g_last_error_line = 0;

padlight_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kRange: return PADLIGHT_ERR_RANGE;
    case ErrorCode::kFraming: return PADLIGHT_ERR_FRAMING;
    case ErrorCode::kChecksum: return PADLIGHT_ERR_CHECKSUM;
    case ErrorCode::kTraceFormat: return PADLIGHT_ERR_TRACE_FORMAT;
    case ErrorCode::kInvalidArgument: return PADLIGHT_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return PADLIGHT_ERR_IO;
    case ErrorCode::kBind: return PADLIGHT_ERR_BIND;
  }
  return PADLIGHT_ERR_INTERNAL;
}

padlight_status fail(padlight_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
padlight_status guarded(Fn&& fn) {
  g_last_error.clear();
  g_last_error_line = 0;
  try {
    fn();
    return PADLIGHT_OK;
  } catch (const TraceFormatError& e) {
    g_last_error_line = e.line();
    return fail(PADLIGHT_ERR_TRACE_FORMAT, e.what());
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PADLIGHT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PADLIGHT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PADLIGHT_ERR_INTERNAL, "unknown error");
  }
}

#define PADLIGHT_REQUIRE(cond)                                              \
  do {                                                                      \
    if (!(cond))                                                            \
      return fail(PADLIGHT_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

TouchSample from_c(const padlight_sample& s) {
  return {s.x, s.y, s.z, s.finger != 0, s.t_ms};
}

padlight_sample to_c(const TouchSample& s) {
  return {s.x, s.y, s.z, s.finger ? 1 : 0, s.t_ms};
}

EngineConfig from_c(const padlight_config& c) {
  EngineConfig e;
  e.z_threshold = c.z_threshold;
  e.layout.band_width = c.band_width;
  e.layout.gap_width = c.gap_width;
  e.layout.x_max = c.x_max;
  e.layout.y_max = c.y_max;
  e.layout.level_count = c.level_count;
  e.layout.y_inverted = c.y_inverted != 0;
  return e;
}

void deliver(const std::vector<StreamEvent>& events, padlight_event_fn fn,
             void* user) {
  if (!fn) return;
  for (const StreamEvent& ev : events) {
    padlight_stream_event out{};
    if (const auto* s = std::get_if<TouchSample>(&ev)) {
      out.kind = PADLIGHT_EVENT_SAMPLE;
      out.sample = to_c(*s);
      out.diagnostic = PADLIGHT_OK;
      out.message = "";
      fn(&out, user);
    } else {
      const auto& d = std::get<Diagnostic>(ev);
      out.kind = PADLIGHT_EVENT_DIAGNOSTIC;
      out.diagnostic = to_status(d.code);
      out.offset = d.offset;
      out.message = d.message.c_str();
      fn(&out, user);
    }
  }
}

// Passes newly logged commands to the user callback.
void report_commands(padlight_pipeline* p) {
  const auto& log = p->pipeline.command_log();
  for (; p->reported < log.size(); ++p->reported) {
    if (!p->on_command) continue;
    const CommandRecord& r = log[p->reported];
    const CommandBytes bytes = encode_command(r.command);
    const std::string line = r.to_line();
    padlight_command_record out{};
    out.t_ms = r.t_ms;
    out.channel = static_cast<int32_t>(r.command.channel);
    out.level = r.command.level;
    std::memcpy(out.bytes, bytes.data(), bytes.size());
    out.line = line.c_str();
    p->on_command(&out, p->on_command_user);
  }
}

}  // namespace

extern "C" {

const char* padlight_version(void) { return "1.0.0"; }

const char* padlight_status_name(padlight_status status) {
  switch (status) {
    case PADLIGHT_OK: return "ok";
    case PADLIGHT_ERR_RANGE: return "RangeError";
    case PADLIGHT_ERR_FRAMING: return "FramingError";
    case PADLIGHT_ERR_CHECKSUM: return "ChecksumError";
    case PADLIGHT_ERR_TRACE_FORMAT: return "TraceFormatError";
    case PADLIGHT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case PADLIGHT_ERR_IO: return "IoError";
    case PADLIGHT_ERR_BIND: return "BindError";
    case PADLIGHT_ERR_INTERNAL: return "InternalError";
  }
  return "UnknownStatus";
}

const char* padlight_last_error_message(void) { return g_last_error.c_str(); }

size_t padlight_last_error_line(void) { return g_last_error_line; }

padlight_status padlight_encode_frame(const padlight_sample* sample,
                                      uint8_t out[PADLIGHT_FRAME_SIZE]) {
  PADLIGHT_REQUIRE(sample && out);
  return guarded([&] {
    const RawFrame f = encode_frame(from_c(*sample));
    std::memcpy(out, f.data(), f.size());
  });
}

padlight_status padlight_decode_frame(const uint8_t frame[PADLIGHT_FRAME_SIZE],
                                      padlight_sample* out) {
  PADLIGHT_REQUIRE(frame && out);
  return guarded([&] {
    *out = to_c(decode_frame(std::span<const std::uint8_t, kFrameSize>(
        frame, kFrameSize)));
  });
}

padlight_status padlight_decoder_create(padlight_clock_fn clock,
                                        void* clock_user,
                                        padlight_decoder** out) {
  PADLIGHT_REQUIRE(out);
  return guarded([&] {
    Clock c = clock ? Clock([clock, clock_user] { return clock(clock_user); })
                    : host_clock();
    *out = new padlight_decoder{StreamDecoder(std::move(c))};
  });
}

padlight_status padlight_decoder_push(padlight_decoder* decoder,
                                      const uint8_t* bytes, size_t size,
                                      padlight_event_fn on_event, void* user) {
  PADLIGHT_REQUIRE(decoder && (bytes || size == 0));
  return guarded([&] {
    deliver(decoder->decoder.push(std::span<const std::uint8_t>(bytes, size)),
            on_event, user);
  });
}

padlight_status padlight_decoder_finish(padlight_decoder* decoder,
                                        padlight_event_fn on_event,
                                        void* user) {
  PADLIGHT_REQUIRE(decoder);
  return guarded([&] { deliver(decoder->decoder.finish(), on_event, user); });
}

void padlight_decoder_destroy(padlight_decoder* decoder) { delete decoder; }

void padlight_config_default(padlight_config* out) {
  if (!out) return;
  const EngineConfig d;
  *out = padlight_config{d.layout.band_width, d.layout.gap_width,
                         d.layout.x_max,      d.layout.y_max,
                         d.layout.level_count, d.layout.y_inverted ? 1 : 0,
                         d.z_threshold};
}

padlight_status padlight_config_validate(const padlight_config* config) {
  PADLIGHT_REQUIRE(config);
  return guarded([&] { from_c(*config).validate(); });
}

padlight_status padlight_locate_slider(const padlight_config* config, int32_t x,
                                       int32_t* band) {
  PADLIGHT_REQUIRE(config && band);
  return guarded([&] {
    const EngineConfig c = from_c(*config);
    c.validate();
    const SliderHit hit = locate_slider(x, c.layout);
    *band = hit ? *hit : PADLIGHT_GAP;
  });
}

padlight_status padlight_quantize_level(const padlight_config* config,
                                        int32_t y, int32_t* level) {
  PADLIGHT_REQUIRE(config && level);
  return guarded([&] {
    const EngineConfig c = from_c(*config);
    c.validate();
    *level = quantize_level(y, c.layout);
  });
}

padlight_status padlight_engine_create(const padlight_config* config,
                                       padlight_engine** out) {
  PADLIGHT_REQUIRE(config && out);
  return guarded([&] {
    EngineConfig c = from_c(*config);
    c.validate();
    *out = new padlight_engine{c, EngineState{}};
  });
}

padlight_status padlight_engine_apply(padlight_engine* engine,
                                      const padlight_sample* sample,
                                      int32_t* channel, int32_t* level) {
  PADLIGHT_REQUIRE(engine && sample);
  return guarded([&] {
    const ApplyResult r = apply_sample(engine->state, from_c(*sample),
                                       engine->config);
    engine->state = r.state;
    if (channel) *channel = r.change ? r.change->channel : -1;
    if (level) *level = r.change ? r.change->level : -1;
  });
}

padlight_status padlight_engine_levels(const padlight_engine* engine,
                                       int32_t levels[PADLIGHT_CHANNELS]) {
  PADLIGHT_REQUIRE(engine && levels);
  for (int i = 0; i < PADLIGHT_CHANNELS; ++i) levels[i] = engine->state.levels[i];
  return PADLIGHT_OK;
}

padlight_status padlight_engine_reset(padlight_engine* engine) {
  PADLIGHT_REQUIRE(engine);
  engine->state = reset(engine->state);
  return PADLIGHT_OK;
}

void padlight_engine_destroy(padlight_engine* engine) { delete engine; }

const char* padlight_channel_name(int32_t channel) {
  const auto id = channel_from_index(channel);
  return id ? channel_name(*id).data() : nullptr;
}

padlight_status padlight_encode_command(int32_t channel, int32_t level,
                                        uint8_t out[PADLIGHT_COMMAND_SIZE]) {
  PADLIGHT_REQUIRE(out);
  const auto id = channel_from_index(channel);
  if (!id) {
    return fail(PADLIGHT_ERR_RANGE,
                "channel " + std::to_string(channel) + " outside 0..4");
  }
  return guarded([&] {
    const CommandBytes b = encode_command({*id, level});
    std::memcpy(out, b.data(), b.size());
  });
}

padlight_status padlight_decode_command(
    const uint8_t bytes[PADLIGHT_COMMAND_SIZE], int32_t* channel,
    int32_t* level) {
  PADLIGHT_REQUIRE(bytes && channel && level);
  return guarded([&] {
    const LightCommand cmd = decode_command(
        std::span<const std::uint8_t, kCommandSize>(bytes, kCommandSize));
    *channel = static_cast<int32_t>(cmd.channel);
    *level = cmd.level;
  });
}

padlight_status padlight_blend_display(const int32_t levels[PADLIGHT_CHANNELS],
                                       int32_t rgb[3]) {
  PADLIGHT_REQUIRE(levels && rgb);
  LightState state;
  for (int i = 0; i < PADLIGHT_CHANNELS; ++i) {
    if (levels[i] < 0 || levels[i] > kMaxLevel) {
      return fail(PADLIGHT_ERR_RANGE, "level outside 0..22");
    }
    state.levels[i] = levels[i];
  }
  const Rgb out = blend_display(state);
  for (int c = 0; c < 3; ++c) rgb[c] = out[c];
  return PADLIGHT_OK;
}

padlight_status padlight_pipeline_create(const padlight_config* config,
                                         int limiter_on,
                                         padlight_pipeline** out) {
  PADLIGHT_REQUIRE(config && out);
  return guarded(
      [&] { *out = new padlight_pipeline(from_c(*config), limiter_on != 0); });
}

padlight_status padlight_pipeline_set_command_callback(
    padlight_pipeline* pipeline, padlight_command_fn fn, void* user) {
  PADLIGHT_REQUIRE(pipeline);
  pipeline->on_command = fn;
  pipeline->on_command_user = user;
  return PADLIGHT_OK;
}

padlight_status padlight_pipeline_set_frame_period(padlight_pipeline* pipeline,
                                                   int64_t period_ms) {
  PADLIGHT_REQUIRE(pipeline);
  if (period_ms < 0) {
    return fail(PADLIGHT_ERR_INVALID_ARGUMENT, "frame period is negative");
  }
  pipeline->frame_period_ms = period_ms;
  return PADLIGHT_OK;
}

padlight_status padlight_pipeline_push_sample(padlight_pipeline* pipeline,
                                              const padlight_sample* sample) {
  PADLIGHT_REQUIRE(pipeline && sample);
  const padlight_status st =
      guarded([&] { pipeline->pipeline.ingest(from_c(*sample)); });
  report_commands(pipeline);
  return st;
}

padlight_status padlight_pipeline_push_bytes(padlight_pipeline* pipeline,
                                             const uint8_t* bytes,
                                             size_t size) {
  PADLIGHT_REQUIRE(pipeline && (bytes || size == 0));
  const padlight_status st = guarded([&] {
    const auto events =
        pipeline->decoder.push(std::span<const std::uint8_t>(bytes, size));
    pipeline->pipeline.ingest(events);
  });
  report_commands(pipeline);
  return st;
}

padlight_status padlight_pipeline_push_trace(padlight_pipeline* pipeline,
                                             const char* text, size_t size) {
  PADLIGHT_REQUIRE(pipeline && (text || size == 0));
  const padlight_status st = guarded([&] {
    const auto trace = parse_trace(std::string_view(text, size));
    for (const TraceRecord& r : trace) pipeline->pipeline.ingest(r.to_sample());
  });
  report_commands(pipeline);
  return st;
}

padlight_status padlight_pipeline_push_trace_file(padlight_pipeline* pipeline,
                                                  const char* path) {
  PADLIGHT_REQUIRE(pipeline && path);
  const padlight_status st = guarded([&] {
    const auto trace = load_trace_file(path);
    for (const TraceRecord& r : trace) pipeline->pipeline.ingest(r.to_sample());
  });
  report_commands(pipeline);
  return st;
}

padlight_status padlight_pipeline_finish(padlight_pipeline* pipeline) {
  PADLIGHT_REQUIRE(pipeline);
  const padlight_status st = guarded([&] {
    pipeline->pipeline.ingest(pipeline->decoder.finish());
    pipeline->pipeline.finish();
  });
  report_commands(pipeline);
  return st;
}

padlight_status padlight_pipeline_state(const padlight_pipeline* pipeline,
                                        int32_t levels[PADLIGHT_CHANNELS]) {
  PADLIGHT_REQUIRE(pipeline && levels);
  const LightState& s = pipeline->pipeline.light_state();
  for (int i = 0; i < PADLIGHT_CHANNELS; ++i) levels[i] = s.levels[i];
  return PADLIGHT_OK;
}

padlight_status padlight_pipeline_metrics(const padlight_pipeline* pipeline,
                                          padlight_metrics* out) {
  PADLIGHT_REQUIRE(pipeline && out);
  const Metrics m = pipeline->pipeline.metrics();
  *out = padlight_metrics{m.samples_in,     m.frames_bad,
                          m.commands_out,   m.batches_out,
                          m.max_latency_ms, m.mean_latency_ms};
  return PADLIGHT_OK;
}

padlight_status padlight_metrics_json(const padlight_metrics* m, char* buf,
                                      size_t size, size_t* needed) {
  PADLIGHT_REQUIRE(m);
  const std::string json = metrics_to_json(Metrics{
      m->samples_in, m->frames_bad, m->commands_out, m->batches_out,
      m->max_latency_ms, m->mean_latency_ms});
  if (needed) *needed = json.size() + 1;
  if (!buf || size < json.size() + 1) {
    return fail(PADLIGHT_ERR_INVALID_ARGUMENT, "buffer too small");
  }
  std::memcpy(buf, json.c_str(), json.size() + 1);
  return PADLIGHT_OK;
}

void padlight_pipeline_destroy(padlight_pipeline* pipeline) { delete pipeline; }

padlight_status padlight_server_create(const padlight_config* config,
                                       const char* bind_address,
                                       int limiter_on, padlight_server** out) {
  PADLIGHT_REQUIRE(config && bind_address && out);
  return guarded([&] {
    *out = new padlight_server(from_c(*config), bind_address, limiter_on != 0);
  });
}

padlight_status padlight_server_port(const padlight_server* server,
                                     uint16_t* port) {
  PADLIGHT_REQUIRE(server && port);
  return guarded([&] { *port = server->server.port(); });
}

padlight_status padlight_server_run(padlight_server* server) {
  PADLIGHT_REQUIRE(server);
  return guarded([&] { server->server.run(); });
}

padlight_status padlight_server_stop(padlight_server* server) {
  PADLIGHT_REQUIRE(server);
  server->server.stop();
  return PADLIGHT_OK;
}

void padlight_server_destroy(padlight_server* server) { delete server; }

}  // extern "C"
