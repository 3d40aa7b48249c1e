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
#include <memory>
#include <optional>
#include <string>

#include "core/pipeline.hpp"

namespace padlight {

// Parses "host:port" (port may be 0). Throws Error(kInvalidArgument).
std::pair<std::string, std::uint16_t> parse_bind_address(const std::string& s);

// Socket message schema shared by the server and its clients.
namespace protocol {

// {"type":"state","levels":[..5..],"rgb":[r,g,b]}
std::string state_message(const LightState& state);
// {"type":"layout", ...}
std::string layout_message(const EngineConfig& config);
// {"type":"error","message":"..."}
std::string error_message(const std::string& text);

// Parses {"type":"touch","x":..,"y":..,"z":..,"finger":..}.
// Throws Error(kInvalidArgument) or Error(kRange).
TouchSample parse_touch(const std::string& text);

}  // namespace protocol

// WebSocket front end of a Pipeline. A single thread calling run() owns the
// pipeline; sessions only post events into that loop.
class Server {
 public:
  // Binds immediately; throws Error(kBind) when the address is unavailable.
  Server(EngineConfig config, const std::string& bind_address,
         bool limiter_on = true);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  std::uint16_t port() const;
  std::string address() const;

  // Blocks until stop() is called.
  void run();
  // Safe from any thread, including before run().
  void stop();

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace padlight
