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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "core/slider_engine.hpp"

namespace padlight {

// Slider i drives channel i.
enum class ChannelId : std::uint8_t { kRed = 0, kGreen, kBlue, kYellow, kWhite };

inline constexpr int kChannelCount = 5;
inline constexpr int kMaxLevel = 22;
inline constexpr std::size_t kCommandSize = 3;
inline constexpr std::uint8_t kCommandHeader = 0xC0;

std::string_view channel_name(ChannelId id) noexcept;
std::optional<ChannelId> channel_from_index(int index) noexcept;

struct LightState {
  std::array<int, kChannelCount> levels{};
  friend bool operator==(const LightState&, const LightState&) = default;
};

struct LightCommand {
  ChannelId channel = ChannelId::kRed;
  int level = 0;
  friend bool operator==(const LightCommand&, const LightCommand&) = default;
};

using CommandBytes = std::array<std::uint8_t, kCommandSize>;

// [0xC0 + channel, level, byte0 ^ byte1]
CommandBytes encode_command(const LightCommand& cmd);
LightCommand decode_command(std::span<const std::uint8_t, kCommandSize> bytes);

// Six uppercase hex digits, e.g. "C016D6".
std::string to_hex(const CommandBytes& bytes);
// Throws Error(kFraming) on anything but six hex digits.
CommandBytes from_hex(std::string_view hex);

using Rgb = std::array<int, 3>;

// Additive mix of the five primaries, normalized to the brightest component
// and gamma-encoded (1/2.2) for display.
Rgb blend_display(const LightState& state);

}  // namespace padlight
