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
// padlight command-line front end. Talks to the library only through the
// C API in padlight/padlight.h.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 empty result.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "padlight/padlight.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitEmpty = 2;

struct LayoutFlags {
  int band_width = 1024;
  int gap_width = 256;
  int levels = 23;
  int z_threshold = 30;
  bool y_inverted = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--band-width", band_width, "Slider band width (x units)")
        ->capture_default_str();
    cmd->add_option("--gap-width", gap_width, "Gap width between bands")
        ->capture_default_str();
    cmd->add_option("--levels", levels, "Number of intensity levels (2..23)")
        ->capture_default_str();
    cmd->add_option("--z-threshold", z_threshold,
                    "Minimum pressure for a touch to count")
        ->capture_default_str();
    cmd->add_flag("--y-inverted", y_inverted, "Treat y=0 as the top of the pad");
  }

  padlight_config config() const {
    padlight_config c;
    padlight_config_default(&c);
    c.band_width = band_width;
    c.gap_width = gap_width;
    c.level_count = levels;
    c.z_threshold = z_threshold;
    c.y_inverted = y_inverted ? 1 : 0;
    return c;
  }
};

int report(padlight_status st) {
  std::cerr << "padlight: " << padlight_status_name(st) << ": "
            << padlight_last_error_message() << "\n";
  return kExitError;
}

bool read_all(const std::string& path, std::vector<std::uint8_t>& out) {
  if (path == "-") {
    out.assign(std::istreambuf_iterator<char>(std::cin), {});
    return !std::cin.bad();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  out.assign(std::istreambuf_iterator<char>(in), {});
  return !in.bad();
}

struct DecodeOutput {
  std::size_t samples = 0;
};

void print_event(const padlight_stream_event* ev, void* user) {
  auto* out = static_cast<DecodeOutput*>(user);
  if (ev->kind == PADLIGHT_EVENT_SAMPLE) {
    nlohmann::ordered_json j;
    j["t_ms"] = ev->sample.t_ms;
    j["x"] = ev->sample.x;
    j["y"] = ev->sample.y;
    j["z"] = ev->sample.z;
    j["finger"] = ev->sample.finger != 0;
    std::cout << j.dump() << "\n";
    ++out->samples;
  } else {
    std::cerr << "diagnostic offset=" << ev->offset << " "
              << padlight_status_name(ev->diagnostic) << ": " << ev->message
              << "\n";
  }
}

struct FrameClock {
  std::int64_t period_ms = 0;
  std::int64_t next = 0;
};

std::int64_t frame_clock(void* user) {
  auto* c = static_cast<FrameClock*>(user);
  return c->period_ms * c->next++;
}

int cmd_decode(const std::string& input, std::int64_t frame_period_ms) {
  std::vector<std::uint8_t> bytes;
  if (!read_all(input, bytes)) {
    std::cerr << "padlight: cannot read " << input << "\n";
    return kExitError;
  }
  FrameClock clock{frame_period_ms, 0};
  padlight_decoder* dec = nullptr;
  padlight_status st = padlight_decoder_create(
      frame_period_ms >= 0 ? frame_clock : nullptr, &clock, &dec);
  if (st != PADLIGHT_OK) return report(st);

  DecodeOutput out;
  st = padlight_decoder_push(dec, bytes.data(), bytes.size(), print_event, &out);
  if (st == PADLIGHT_OK) st = padlight_decoder_finish(dec, print_event, &out);
  padlight_decoder_destroy(dec);
  if (st != PADLIGHT_OK) return report(st);
  return out.samples > 0 ? kExitOk : kExitEmpty;
}

int cmd_map(int x, int y, const padlight_config& config) {
  int32_t band = 0;
  int32_t level = 0;
  padlight_status st = padlight_locate_slider(&config, x, &band);
  if (st == PADLIGHT_OK) st = padlight_quantize_level(&config, y, &level);
  if (st != PADLIGHT_OK) return report(st);
  if (band == PADLIGHT_GAP) {
    std::cout << "gap\n";
  } else {
    std::cout << "slider=" << band << " channel=" << padlight_channel_name(band)
              << " level=" << level << "\n";
  }
  return kExitOk;
}

void print_command(const padlight_command_record* r, void*) {
  std::cout << r->line << "\n";
}

int cmd_replay(const std::string& trace, bool limiter_on, bool metrics,
               const padlight_config& config) {
  padlight_pipeline* p = nullptr;
  padlight_status st = padlight_pipeline_create(&config, limiter_on, &p);
  if (st != PADLIGHT_OK) return report(st);
  padlight_pipeline_set_command_callback(p, print_command, nullptr);

  if (trace == "-") {
    const std::string text(std::istreambuf_iterator<char>(std::cin), {});
    st = padlight_pipeline_push_trace(p, text.data(), text.size());
  } else {
    st = padlight_pipeline_push_trace_file(p, trace.c_str());
  }
  if (st == PADLIGHT_OK) st = padlight_pipeline_finish(p);
  if (st != PADLIGHT_OK) {
    const int rc = report(st);
    padlight_pipeline_destroy(p);
    return rc;
  }
  if (metrics) {
    padlight_metrics m;
    padlight_pipeline_metrics(p, &m);
    char buf[512];
    size_t needed = 0;
    if (padlight_metrics_json(&m, buf, sizeof buf, &needed) == PADLIGHT_OK) {
      std::cerr << buf << "\n";
    }
  }
  padlight_pipeline_destroy(p);
  std::cout.flush();
  return kExitOk;
}

int cmd_serve(const std::string& bind, bool limiter_on,
              const padlight_config& config) {
  // Signals are handled on a dedicated thread via sigwait.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  padlight_server* server = nullptr;
  padlight_status st = padlight_server_create(&config, bind.c_str(),
                                              limiter_on, &server);
  if (st != PADLIGHT_OK) return report(st);
  uint16_t port = 0;
  padlight_server_port(server, &port);
  const std::string host = bind.substr(0, bind.rfind(':'));
  std::cerr << "padlight: listening on ws://" << host << ":" << port << "\n";

  std::thread watcher([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    padlight_server_stop(server);
  });
  st = padlight_server_run(server);
  // Wake the watcher if run() returned on its own.
  pthread_kill(watcher.native_handle(), SIGTERM);
  watcher.join();
  padlight_server_destroy(server);
  return st == PADLIGHT_OK ? kExitOk : report(st);
}

bool parse_switch(const std::string& v) { return v == "on"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Touchpad virtual-slider lighting controller"};
  app.require_subcommand(1);
  app.set_version_flag("--version", padlight_version());

  std::string decode_input = "-";
  std::int64_t frame_period = -1;
  auto* decode = app.add_subcommand("decode", "Decode a raw 6-byte frame stream to JSON lines");
  decode->add_option("input", decode_input, "Frame file, or - for stdin")
      ->capture_default_str();
  decode->add_option("--frame-period", frame_period,
                     "Stamp the n-th frame at n*MS instead of the host clock");

  LayoutFlags map_flags;
  int map_x = 0;
  int map_y = 0;
  auto* map = app.add_subcommand("map", "Show the slider and level for a coordinate");
  map->add_option("x", map_x, "x coordinate")->required();
  map->add_option("y", map_y, "y coordinate")->required();
  map_flags.attach(map);

  LayoutFlags replay_flags;
  std::string trace_path;
  std::string replay_limiter = "on";
  bool replay_metrics = false;
  auto* replay = app.add_subcommand("replay", "Replay a trace and print the command log");
  replay->add_option("trace", trace_path, "Trace file, or - for stdin")->required();
  replay->add_option("--limiter", replay_limiter, "Output rate limiter")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  replay->add_flag("--metrics", replay_metrics, "Print metrics JSON to stderr");
  replay_flags.attach(replay);

  LayoutFlags serve_flags;
  std::string bind = "127.0.0.1:8080";
  std::string serve_limiter = "on";
  auto* serve = app.add_subcommand("serve", "Run the WebSocket control service");
  serve->add_option("--bind", bind, "host:port")->capture_default_str();
  serve->add_option("--limiter", serve_limiter, "Output rate limiter")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  serve_flags.attach(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  auto validated = [](const LayoutFlags& f, padlight_config& out) {
    out = f.config();
    const padlight_status st = padlight_config_validate(&out);
    if (st != PADLIGHT_OK) report(st);
    return st == PADLIGHT_OK;
  };

  padlight_config config;
  if (*decode) return cmd_decode(decode_input, frame_period);
  if (*map) {
    if (!validated(map_flags, config)) return kExitError;
    return cmd_map(map_x, map_y, config);
  }
  if (*replay) {
    if (!validated(replay_flags, config)) return kExitError;
    return cmd_replay(trace_path, parse_switch(replay_limiter), replay_metrics,
                      config);
  }
  if (*serve) {
    if (!validated(serve_flags, config)) return kExitError;
    return cmd_serve(bind, parse_switch(serve_limiter), config);
  }
  return kExitError;
}
