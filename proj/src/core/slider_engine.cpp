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
#include "core/slider_engine.hpp"

#include <string>

namespace padlight {

void SliderLayout::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidArgument, "layout: " + msg);
  };
  if (band_width <= 0) fail("band_width must be positive");
  if (gap_width < 0) fail("gap_width must not be negative");
  if (x_max < 0 || x_max > kCoordMax) fail("x_max outside 0..6143");
  if (y_max < 0 || y_max > kCoordMax) fail("y_max outside 0..6143");
  if (slider_count * band_width + (slider_count - 1) * gap_width !=
      x_max + 1) {
    fail("5*band_width + 4*gap_width must equal x_max+1 (" +
         std::to_string(x_max + 1) + ")");
  }
  if (level_count < 2 || level_count > kMaxLevelCount) {
    fail("level_count must be in 2..23");
  }
}

void EngineConfig::validate() const {
  if (z_threshold < 0 || z_threshold > kPressureMax) {
    throw Error(ErrorCode::kInvalidArgument, "z_threshold outside 0..255");
  }
  layout.validate();
}

SliderHit locate_slider(int x, const SliderLayout& layout) {
  if (x < 0 || x > layout.x_max) {
    throw Error(ErrorCode::kRange, "x=" + std::to_string(x) +
                                       " outside 0.." +
                                       std::to_string(layout.x_max));
  }
  const int band = x / layout.pitch();
  const int offset = x % layout.pitch();
  if (band < SliderLayout::slider_count && offset < layout.band_width) {
    return band;
  }
  return std::nullopt;
}

int quantize_level(int y, const SliderLayout& layout) {
  if (y < 0 || y > layout.y_max) {
    throw Error(ErrorCode::kRange, "y=" + std::to_string(y) +
                                       " outside 0.." +
                                       std::to_string(layout.y_max));
  }
  const std::int64_t span = std::int64_t{layout.y_max} + 1;
  const std::int64_t yy = layout.y_inverted ? layout.y_max - y : y;
  return static_cast<int>(yy * layout.level_count / span);
}

ApplyResult apply_sample(const EngineState& state, const TouchSample& sample,
                         const EngineConfig& config) {
  ApplyResult result{state, std::nullopt};
  // Range checks run even for lifts so bad input never slips through.
  const SliderHit hit = locate_slider(sample.x, config.layout);
  const int level = quantize_level(sample.y, config.layout);
  if (!sample.finger || sample.z < config.z_threshold || !hit) {
    return result;
  }
  int& slot = result.state.levels[static_cast<std::size_t>(*hit)];
  if (slot != level) {
    slot = level;
    result.change = ChannelChange{*hit, level};
  }
  return result;
}

SweepResult sweep(const EngineState& state,
                  std::span<const TouchSample> samples,
                  const EngineConfig& config) {
  SweepResult out{state, {}};
  for (const TouchSample& s : samples) {
    ApplyResult r = apply_sample(out.state, s, config);
    out.state = r.state;
    if (r.change) out.changes.push_back(*r.change);
  }
  return out;
}

}  // namespace padlight
