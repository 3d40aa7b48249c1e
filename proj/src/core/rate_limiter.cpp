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
#include "core/rate_limiter.hpp"

namespace padlight {

RateLimiter::RateLimiter(std::int64_t tick_period_ms) : period_(tick_period_ms) {
  if (period_ <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "tick period must be positive");
  }
}

std::optional<std::int64_t> RateLimiter::deadline() const {
  if (!has_pending()) return std::nullopt;
  if (!last_emit_) return std::int64_t{0};
  return *last_emit_ + period_;
}

std::optional<Batch> RateLimiter::push(const ChannelChange& change,
                                       std::int64_t now_ms) {
  auto& slot = pending_.at(static_cast<std::size_t>(change.channel));
  if (slot) {
    slot->level = change.level;  // latest wins
  } else {
    slot = Pending{change.level, now_ms};
    ++pending_count_;
  }
  if (!last_emit_ || now_ms >= *last_emit_ + period_) return emit(now_ms);
  return std::nullopt;
}

std::optional<Batch> RateLimiter::poll(std::int64_t now_ms) {
  const auto due = deadline();
  if (!due || now_ms < *due) return std::nullopt;
  return emit(*due);
}

std::optional<Batch> RateLimiter::drain() {
  const auto due = deadline();
  if (!due) return std::nullopt;
  return emit(*due);
}

Batch RateLimiter::emit(std::int64_t at_ms) {
  Batch b;
  b.t_ms = at_ms;
  for (int ch = 0; ch < kSliderCount; ++ch) {
    auto& slot = pending_[static_cast<std::size_t>(ch)];
    if (!slot) continue;
    b.changes.push_back({ch, slot->level});
    b.latency_ms.push_back(at_ms - slot->first_source_ms);
    slot.reset();
  }
  pending_count_ = 0;
  last_emit_ = at_ms;
  return b;
}

}  // namespace padlight
