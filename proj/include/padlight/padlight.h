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
/*
 * padlight C API.
 *
 * Five virtual sliders on an absolute-mode touchpad driving a five-channel
 * RGBYW light cluster. Every function returns a padlight_status; on failure
 * padlight_last_error_message() describes the problem for the calling
 * thread. Handles are opaque and owned by the caller, who must release them
 * with the matching *_destroy function. A handle may move between threads
 * but must not be used from two threads at once (padlight_server_stop is the
 * one exception).
 */
#ifndef PADLIGHT_PADLIGHT_H_
#define PADLIGHT_PADLIGHT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PADLIGHT_BUILDING_LIBRARY)
#    define PADLIGHT_API __declspec(dllexport)
#  else
#    define PADLIGHT_API __declspec(dllimport)
#  endif
#else
#  define PADLIGHT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum padlight_status {
  PADLIGHT_OK = 0,
  PADLIGHT_ERR_RANGE = 1,
  PADLIGHT_ERR_FRAMING = 2,
  PADLIGHT_ERR_CHECKSUM = 3,
  PADLIGHT_ERR_TRACE_FORMAT = 4,
  PADLIGHT_ERR_INVALID_ARGUMENT = 5,
  PADLIGHT_ERR_IO = 6,
  PADLIGHT_ERR_BIND = 7,
  PADLIGHT_ERR_INTERNAL = 99
} padlight_status;

#define PADLIGHT_FRAME_SIZE 6
#define PADLIGHT_COMMAND_SIZE 3
#define PADLIGHT_CHANNELS 5
#define PADLIGHT_GAP (-1)

PADLIGHT_API const char* padlight_version(void);
PADLIGHT_API const char* padlight_status_name(padlight_status status);

/* Message for the last failure on this thread ("" if none). */
PADLIGHT_API const char* padlight_last_error_message(void);
/* 1-based trace line of the last PADLIGHT_ERR_TRACE_FORMAT, else 0. */
PADLIGHT_API size_t padlight_last_error_line(void);

/* ---- touch frames ------------------------------------------------------ */

typedef struct padlight_sample {
  int32_t x;      /* 0..6143 */
  int32_t y;      /* 0..6143 */
  int32_t z;      /* pressure, 0..255 */
  int32_t finger; /* nonzero when in contact */
  int64_t t_ms;   /* not carried on the wire */
} padlight_sample;

PADLIGHT_API padlight_status padlight_encode_frame(
    const padlight_sample* sample, uint8_t out[PADLIGHT_FRAME_SIZE]);
PADLIGHT_API padlight_status padlight_decode_frame(
    const uint8_t frame[PADLIGHT_FRAME_SIZE], padlight_sample* out);

typedef enum padlight_event_kind {
  PADLIGHT_EVENT_SAMPLE = 0,
  PADLIGHT_EVENT_DIAGNOSTIC = 1
} padlight_event_kind;

/* Valid only for the duration of the callback. */
typedef struct padlight_stream_event {
  padlight_event_kind kind;
  padlight_sample sample;     /* PADLIGHT_EVENT_SAMPLE */
  padlight_status diagnostic; /* PADLIGHT_EVENT_DIAGNOSTIC */
  uint64_t offset;            /* stream offset of the offending byte(s) */
  const char* message;        /* diagnostic text, "" for samples */
} padlight_stream_event;

typedef void (*padlight_event_fn)(const padlight_stream_event* event,
                                  void* user);
/* Returns the timestamp for the sample being emitted. */
typedef int64_t (*padlight_clock_fn)(void* user);

typedef struct padlight_decoder padlight_decoder;

/* clock may be NULL for the host steady clock. */
PADLIGHT_API padlight_status padlight_decoder_create(padlight_clock_fn clock,
                                                     void* clock_user,
                                                     padlight_decoder** out);
PADLIGHT_API padlight_status padlight_decoder_push(padlight_decoder* decoder,
                                                   const uint8_t* bytes,
                                                   size_t size,
                                                   padlight_event_fn on_event,
                                                   void* user);
/* Reports a pending skipped run or truncated trailing frame. */
PADLIGHT_API padlight_status padlight_decoder_finish(padlight_decoder* decoder,
                                                     padlight_event_fn on_event,
                                                     void* user);
PADLIGHT_API void padlight_decoder_destroy(padlight_decoder* decoder);

/* ---- slider layout and engine ------------------------------------------ */

typedef struct padlight_config {
  int32_t band_width;  /* default 1024 */
  int32_t gap_width;   /* default 256 */
  int32_t x_max;       /* default 6143 */
  int32_t y_max;       /* default 6143 */
  int32_t level_count; /* default 23, at most 23 */
  int32_t y_inverted;  /* default 0: larger y is the top of the pad */
  int32_t z_threshold; /* default 30 */
} padlight_config;

PADLIGHT_API void padlight_config_default(padlight_config* out);
/* Checks 5*band_width + 4*gap_width == x_max + 1 and the other ranges. */
PADLIGHT_API padlight_status padlight_config_validate(
    const padlight_config* config);

/* *band receives 0..4, or PADLIGHT_GAP. */
PADLIGHT_API padlight_status padlight_locate_slider(
    const padlight_config* config, int32_t x, int32_t* band);
PADLIGHT_API padlight_status padlight_quantize_level(
    const padlight_config* config, int32_t y, int32_t* level);

typedef struct padlight_engine padlight_engine;

PADLIGHT_API padlight_status padlight_engine_create(
    const padlight_config* config, padlight_engine** out);
/* *channel receives the changed channel or -1 when nothing changed. */
PADLIGHT_API padlight_status padlight_engine_apply(padlight_engine* engine,
                                                   const padlight_sample* sample,
                                                   int32_t* channel,
                                                   int32_t* level);
PADLIGHT_API padlight_status padlight_engine_levels(
    const padlight_engine* engine, int32_t levels[PADLIGHT_CHANNELS]);
PADLIGHT_API padlight_status padlight_engine_reset(padlight_engine* engine);
PADLIGHT_API void padlight_engine_destroy(padlight_engine* engine);

/* ---- light cluster ----------------------------------------------------- */

/* "red", "green", "blue", "yellow", "white"; NULL when out of range. */
PADLIGHT_API const char* padlight_channel_name(int32_t channel);

PADLIGHT_API padlight_status padlight_encode_command(
    int32_t channel, int32_t level, uint8_t out[PADLIGHT_COMMAND_SIZE]);
PADLIGHT_API padlight_status padlight_decode_command(
    const uint8_t bytes[PADLIGHT_COMMAND_SIZE], int32_t* channel,
    int32_t* level);
PADLIGHT_API padlight_status padlight_blend_display(
    const int32_t levels[PADLIGHT_CHANNELS], int32_t rgb[3]);

/* ---- pipeline ---------------------------------------------------------- */

typedef struct padlight_metrics {
  uint64_t samples_in;
  uint64_t frames_bad;
  uint64_t commands_out;
  uint64_t batches_out;
  int64_t max_latency_ms;
  double mean_latency_ms;
} padlight_metrics;

typedef struct padlight_command_record {
  int64_t t_ms;
  int32_t channel;
  int32_t level;
  uint8_t bytes[PADLIGHT_COMMAND_SIZE];
  const char* line; /* "t_ms HEX6", valid during the callback */
} padlight_command_record;

typedef void (*padlight_command_fn)(const padlight_command_record* record,
                                    void* user);

typedef struct padlight_pipeline padlight_pipeline;

/* limiter_on: nonzero coalesces output to one batch per 25 ms. */
PADLIGHT_API padlight_status padlight_pipeline_create(
    const padlight_config* config, int limiter_on, padlight_pipeline** out);
/* Called for every emitted command, in emission order. */
PADLIGHT_API padlight_status padlight_pipeline_set_command_callback(
    padlight_pipeline* pipeline, padlight_command_fn fn, void* user);
/* Timestamps given to frames decoded by push_bytes: n * period. Default 25. */
PADLIGHT_API padlight_status padlight_pipeline_set_frame_period(
    padlight_pipeline* pipeline, int64_t period_ms);

PADLIGHT_API padlight_status padlight_pipeline_push_sample(
    padlight_pipeline* pipeline, const padlight_sample* sample);
PADLIGHT_API padlight_status padlight_pipeline_push_bytes(
    padlight_pipeline* pipeline, const uint8_t* bytes, size_t size);
/* Parses the whole trace first, then feeds it. Nothing is fed on error. */
PADLIGHT_API padlight_status padlight_pipeline_push_trace(
    padlight_pipeline* pipeline, const char* text, size_t size);
PADLIGHT_API padlight_status padlight_pipeline_push_trace_file(
    padlight_pipeline* pipeline, const char* path);
/* Flushes pending output; call once at end of input. */
PADLIGHT_API padlight_status padlight_pipeline_finish(
    padlight_pipeline* pipeline);

PADLIGHT_API padlight_status padlight_pipeline_state(
    const padlight_pipeline* pipeline, int32_t levels[PADLIGHT_CHANNELS]);
PADLIGHT_API padlight_status padlight_pipeline_metrics(
    const padlight_pipeline* pipeline, padlight_metrics* out);
/* Writes the metrics as a JSON object into buf (NUL-terminated). *needed
 * receives the required size including the terminator. */
PADLIGHT_API padlight_status padlight_metrics_json(const padlight_metrics* m,
                                                   char* buf, size_t size,
                                                   size_t* needed);
PADLIGHT_API void padlight_pipeline_destroy(padlight_pipeline* pipeline);

/* ---- WebSocket service ------------------------------------------------- */

typedef struct padlight_server padlight_server;

/* Binds "host:port" immediately (port 0 picks a free port). */
PADLIGHT_API padlight_status padlight_server_create(
    const padlight_config* config, const char* bind_address, int limiter_on,
    padlight_server** out);
PADLIGHT_API padlight_status padlight_server_port(const padlight_server* server,
                                                  uint16_t* port);
/* Blocks until padlight_server_stop. */
PADLIGHT_API padlight_status padlight_server_run(padlight_server* server);
/* Safe to call from any thread or a signal-driven watcher. */
PADLIGHT_API padlight_status padlight_server_stop(padlight_server* server);
PADLIGHT_API void padlight_server_destroy(padlight_server* server);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* PADLIGHT_PADLIGHT_H_ */
