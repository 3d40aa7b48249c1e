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
#include <vector>

#include "core/frame_codec.hpp"

namespace padlight {

inline constexpr int kSliderCount = 5;
inline constexpr int kMaxLevelCount = 23;

// Geometry of the virtual sliders. Bands and gaps alternate left to right,
// starting and ending with a band.
struct SliderLayout {
  int band_width = 1024;
  int gap_width = 256;
  int x_max = kCoordMax;
  int y_max = kCoordMax;
  int level_count = kMaxLevelCount;
  bool y_inverted = false;

  static constexpr int slider_count = kSliderCount;

  int pitch() const noexcept { return band_width + gap_width; }
  int band_begin(int i) const noexcept { return pitch() * i; }
  int band_end(int i) const noexcept { return band_begin(i) + band_width - 1; }

  // Throws Error(kInvalidArgument) unless
  // 5 * band_width + 4 * gap_width == x_max + 1 and the level count fits
  // the command wire format.
  void validate() const;
};

struct EngineConfig {
  int z_threshold = 30;
  SliderLayout layout;

  void validate() const;
};

// Band index, or nullopt for a gap.
using SliderHit = std::optional<int>;

SliderHit locate_slider(int x, const SliderLayout& layout);
int quantize_level(int y, const SliderLayout& layout);

using Levels = std::array<int, kSliderCount>;

struct EngineState {
  Levels levels{};
  friend bool operator==(const EngineState&, const EngineState&) = default;
};

struct ChannelChange {
  int channel = 0;
  int level = 0;
  friend bool operator==(const ChannelChange&, const ChannelChange&) = default;
};

struct ApplyResult {
  EngineState state;
  std::optional<ChannelChange> change;
};

// Absolute dimmer semantics: a qualifying touch sets its band's level to the
// quantized y; lifts, light touches and gap touches leave state untouched.
ApplyResult apply_sample(const EngineState& state, const TouchSample& sample,
                         const EngineConfig& config);

struct SweepResult {
  EngineState state;
  std::vector<ChannelChange> changes;
};

SweepResult sweep(const EngineState& state,
                  std::span<const TouchSample> samples,
                  const EngineConfig& config);

inline EngineState reset(const EngineState&) { return EngineState{}; }

}  // namespace padlight
