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
#include <vector>

#include "core/slider_engine.hpp"

namespace padlight {

inline constexpr std::int64_t kTickPeriodMs = 25;  // 40 updates per second

struct Batch {
  std::int64_t t_ms = 0;
  // Ascending channel order, at most one entry per channel.
  std::vector<ChannelChange> changes;
  // Per change: t_ms minus the oldest source time it coalesced.
  std::vector<std::int64_t> latency_ms;
};

// Output-side coalescing tick. Holds the latest level per channel and lets
// at most one batch out per tick_period_ms.
class RateLimiter {
 public:
  explicit RateLimiter(std::int64_t tick_period_ms = kTickPeriodMs);

  // Records the change. Returns a batch immediately when the tick has
  // elapsed since the last emission (or nothing was ever emitted).
  std::optional<Batch> push(const ChannelChange& change, std::int64_t now_ms);

  // Emits the pending batch, stamped at its deadline, once now_ms has
  // reached that deadline.
  std::optional<Batch> poll(std::int64_t now_ms);

  // Emits whatever is pending at its deadline regardless of now.
  std::optional<Batch> drain();

  std::optional<std::int64_t> deadline() const;
  bool has_pending() const noexcept { return pending_count_ > 0; }
  std::size_t pending_count() const noexcept { return pending_count_; }
  std::int64_t tick_period_ms() const noexcept { return period_; }

 private:
  struct Pending {
    int level = 0;
    std::int64_t first_source_ms = 0;
  };

  Batch emit(std::int64_t at_ms);

  std::int64_t period_;
  std::optional<std::int64_t> last_emit_;
  std::array<std::optional<Pending>, kSliderCount> pending_{};
  std::size_t pending_count_ = 0;
};

}  // namespace padlight
