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
#include "core/light_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace padlight {

namespace {

constexpr std::array<std::array<double, 3>, kChannelCount> kPrimaries{{
    {1, 0, 0},  // red
    {0, 1, 0},  // green
    {0, 0, 1},  // blue
    {1, 1, 0},  // yellow
    {1, 1, 1},  // white
}};

constexpr double kGamma = 2.2;

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string_view channel_name(ChannelId id) noexcept {
  switch (id) {
    case ChannelId::kRed: return "red";
    case ChannelId::kGreen: return "green";
    case ChannelId::kBlue: return "blue";
    case ChannelId::kYellow: return "yellow";
    case ChannelId::kWhite: return "white";
  }
  return "?";
}

std::optional<ChannelId> channel_from_index(int index) noexcept {
  if (index < 0 || index >= kChannelCount) return std::nullopt;
  return static_cast<ChannelId>(index);
}

CommandBytes encode_command(const LightCommand& cmd) {
  const int ch = static_cast<int>(cmd.channel);
  if (ch < 0 || ch >= kChannelCount) {
    throw Error(ErrorCode::kRange, "channel " + std::to_string(ch));
  }
  if (cmd.level < 0 || cmd.level > kMaxLevel) {
    throw Error(ErrorCode::kRange,
                "level " + std::to_string(cmd.level) + " outside 0..22");
  }
  const auto b0 = static_cast<std::uint8_t>(kCommandHeader + ch);
  const auto b1 = static_cast<std::uint8_t>(cmd.level);
  return {b0, b1, static_cast<std::uint8_t>(b0 ^ b1)};
}

LightCommand decode_command(std::span<const std::uint8_t, kCommandSize> b) {
  if (b[0] < kCommandHeader || b[0] >= kCommandHeader + kChannelCount) {
    throw Error(ErrorCode::kFraming, "bad command header");
  }
  if ((b[0] ^ b[1]) != b[2]) {
    throw Error(ErrorCode::kChecksum, "command checksum mismatch");
  }
  if (b[1] > kMaxLevel) {
    throw Error(ErrorCode::kRange, "level " + std::to_string(b[1]) +
                                       " outside 0..22");
  }
  return {static_cast<ChannelId>(b[0] - kCommandHeader), b[1]};
}

std::string to_hex(const CommandBytes& bytes) {
  char buf[7];
  std::snprintf(buf, sizeof buf, "%02X%02X%02X", bytes[0], bytes[1], bytes[2]);
  return buf;
}

CommandBytes from_hex(std::string_view hex) {
  if (hex.size() != 2 * kCommandSize) {
    throw Error(ErrorCode::kFraming, "expected 6 hex digits");
  }
  CommandBytes out{};
  for (std::size_t i = 0; i < kCommandSize; ++i) {
    const int hi = hex_digit(hex[2 * i]);
    const int lo = hex_digit(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::kFraming, "bad hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

Rgb blend_display(const LightState& state) {
  std::array<double, 3> linear{};
  for (int ch = 0; ch < kChannelCount; ++ch) {
    const double w = std::clamp(state.levels[ch], 0, kMaxLevel) /
                     static_cast<double>(kMaxLevel);
    for (int c = 0; c < 3; ++c) linear[c] += kPrimaries[ch][c] * w;
  }
  const double norm =
      std::max(1.0, *std::max_element(linear.begin(), linear.end()));
  Rgb out{};
  for (int c = 0; c < 3; ++c) {
    out[c] = static_cast<int>(
        std::lround(255.0 * std::pow(linear[c] / norm, 1.0 / kGamma)));
  }
  return out;
}

}  // namespace padlight
