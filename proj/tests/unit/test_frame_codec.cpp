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
#include <doctest.h>

#include <functional>

#include "core/frame_codec.hpp"
#include "support/oracles.hpp"

using namespace padlight;

namespace {

StreamDecoder counting_decoder(std::int64_t& tick) {
  return StreamDecoder([&tick] { return tick++; });
}

std::vector<TouchSample> samples_of(const std::vector<StreamEvent>& events) {
  std::vector<TouchSample> out;
  for (const auto& ev : events) {
    if (auto* s = std::get_if<TouchSample>(&ev)) out.push_back(*s);
  }
  return out;
}

std::size_t count_kind(const std::vector<StreamEvent>& events,
                       DiagnosticKind kind) {
  std::size_t n = 0;
  for (const auto& ev : events) {
    if (auto* d = std::get_if<Diagnostic>(&ev); d && d->kind == kind) ++n;
  }
  return n;
}

std::vector<StreamEvent> decode_all(std::span<const std::uint8_t> bytes) {
  StreamDecoder dec([] { return std::int64_t{0}; });
  auto out = dec.push(bytes);
  auto tail = dec.finish();
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

TouchSample random_sample(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coord(0, kCoordMax);
  std::uniform_int_distribution<int> press(0, kPressureMax);
  return {coord(rng), coord(rng), press(rng), (rng() & 1) != 0, 0};
}

void append(std::vector<std::uint8_t>& out, const RawFrame& f) {
  out.insert(out.end(), f.begin(), f.end());
}

}  // namespace

TEST_CASE("encode_frame layout") {
  CHECK(encode_frame({0, 0, 0, false, 0}) ==
        RawFrame{0x80, 0x00, 0x00, 0x00, 0x00, 0x00});
  CHECK(encode_frame({6143, 6143, 255, true, 0}) ==
        RawFrame{0x81, 0x17, 0xFF, 0x17, 0xFF, 0xFF});
  // t_ms never reaches the wire
  CHECK(encode_frame({5, 6, 7, true, 1234}) == encode_frame({5, 6, 7, true, 0}));
}

TEST_CASE("encode_frame range errors") {
  auto code_of = [](const TouchSample& s) {
    try {
      encode_frame(s);
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("no error");
    return ErrorCode::kIo;
  };
  CHECK(code_of({6144, 0, 0, true, 0}) == ErrorCode::kRange);
  CHECK(code_of({0, 6144, 0, true, 0}) == ErrorCode::kRange);
  CHECK(code_of({-1, 0, 0, true, 0}) == ErrorCode::kRange);
  CHECK(code_of({0, 0, 256, true, 0}) == ErrorCode::kRange);
}

TEST_CASE("decode_frame") {
  const RawFrame max{0x81, 0x17, 0xFF, 0x17, 0xFF, 0xFF};
  const TouchSample s = decode_frame(max);
  CHECK(s == TouchSample{6143, 6143, 255, true, 0});

  SUBCASE("sync bits absent") {
    const RawFrame f{0x42, 0, 0, 0, 0, 0};
    CHECK_THROWS_WITH_AS(decode_frame(f), "bad sync byte", Error);
    try {
      decode_frame(f);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kFraming);
    }
  }
  SUBCASE("high bits in coordinate bytes") {
    for (std::size_t idx : {1u, 3u}) {
      RawFrame f{0x80, 0, 0, 0, 0, 0};
      f[idx] = 0x20;
      try {
        decode_frame(f);
        FAIL("accepted");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kFraming);
      }
    }
  }
  SUBCASE("x would be 8191") {
    const RawFrame f{0x80, 0x1F, 0xFF, 0x00, 0x00, 0x00};
    try {
      decode_frame(f);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kRange);
    }
  }
  SUBCASE("y just past maximum") {
    const RawFrame f{0x80, 0x00, 0x00, 0x18, 0x00, 0x00};
    CHECK_THROWS_AS(decode_frame(f), Error);
  }
}

TEST_CASE("round trip over random samples and corners") {
  auto rng = oracle::rng(0x5eed);
  for (int i = 0; i < 100000; ++i) {
    const TouchSample s = random_sample(rng);
    REQUIRE(decode_frame(encode_frame(s)) == s);
  }
  for (int x : {0, kCoordMax}) {
    for (int y : {0, kCoordMax}) {
      for (bool finger : {false, true}) {
        const TouchSample s{x, y, 128, finger, 0};
        CHECK(decode_frame(encode_frame(s)) == s);
      }
    }
  }
}

TEST_CASE("stream decoder emits a clean frame on its sixth byte") {
  std::int64_t tick = 1000;
  StreamDecoder dec = counting_decoder(tick);
  const TouchSample s{1234, 4321, 99, true, 0};
  const RawFrame f = encode_frame(s);
  for (std::size_t i = 0; i < 5; ++i) CHECK(dec.push(f[i]).empty());
  const auto out = dec.push(f[5]);
  REQUIRE(out.size() == 1);
  const auto& got = std::get<TouchSample>(out[0]);
  CHECK(got.same_contact(s));
  CHECK(got.t_ms == 1000);  // injected clock
  CHECK(dec.buffered() == 0);
}

TEST_CASE("stream decoder: leading garbage, stepped by hand") {
  // 00 00 00 are skipped silently until the sync byte 0x81 shows up, at
  // which point one skipped-run diagnostic at offset 0 is reported. The
  // frame follows on its sixth byte.
  std::int64_t tick = 0;
  StreamDecoder dec = counting_decoder(tick);
  const TouchSample s{1000, 2000, 80, true, 0};
  const RawFrame f = encode_frame(s);

  for (int i = 0; i < 3; ++i) CHECK(dec.push(0x00).empty());
  auto ev = dec.push(f[0]);
  REQUIRE(ev.size() == 1);
  const auto& d = std::get<Diagnostic>(ev[0]);
  CHECK(d.kind == DiagnosticKind::kSkippedBytes);
  CHECK(d.offset == 0);
  CHECK(d.message == "skipped 3 byte(s) without sync");

  for (std::size_t i = 1; i < 5; ++i) CHECK(dec.push(f[i]).empty());
  ev = dec.push(f[5]);
  REQUIRE(ev.size() == 1);
  CHECK(std::get<TouchSample>(ev[0]).same_contact(s));
}

TEST_CASE("stream decoder: dropped byte, stepped by hand") {
  // A = 81 00 64 00 C8 5A with byte 2 dropped, then B = 81 05 DC 0B B8 46.
  //   @0  81 00 00 C8 5A 81 -> byte3 0xC8 has high bits: bad frame, shift 1
  //   @1..@4 00 00 C8 5A    -> not sync, skipped
  //   @5  81 05 DC 0B B8 46 -> B
  const TouchSample a{100, 200, 90, true, 0};
  const TouchSample b{1500, 3000, 70, true, 0};
  REQUIRE(encode_frame(a) == RawFrame{0x81, 0x00, 0x64, 0x00, 0xC8, 0x5A});
  REQUIRE(encode_frame(b) == RawFrame{0x81, 0x05, 0xDC, 0x0B, 0xB8, 0x46});

  const std::vector<std::uint8_t> stream{0x81, 0x00, 0x00, 0xC8, 0x5A, 0x81,
                                         0x05, 0xDC, 0x0B, 0xB8, 0x46};
  const auto events = decode_all(stream);
  REQUIRE(events.size() == 3);
  const auto& bad = std::get<Diagnostic>(events[0]);
  CHECK(bad.kind == DiagnosticKind::kBadFrame);
  CHECK(bad.code == ErrorCode::kFraming);
  CHECK(bad.offset == 0);
  const auto& skipped = std::get<Diagnostic>(events[1]);
  CHECK(skipped.kind == DiagnosticKind::kSkippedBytes);
  CHECK(skipped.offset == 1);
  CHECK(std::get<TouchSample>(events[2]).same_contact(b));
  CHECK(count_kind(events, DiagnosticKind::kBadFrame) <= 1);
}

TEST_CASE("stream decoder: range error shifts by exactly one byte") {
  // 80 1F FF 00 00 00 fails on x=8191; the decoder must retry at offset 1.
  // Offset 3..5 are zeros, so the valid frame at offset 6 is next.
  std::vector<std::uint8_t> stream{0x80, 0x1F, 0xFF, 0x00, 0x00, 0x00};
  append(stream, encode_frame({1, 2, 3, false, 0}));
  const auto events = decode_all(stream);
  REQUIRE(events.size() == 3);
  const auto& bad = std::get<Diagnostic>(events[0]);
  CHECK(bad.code == ErrorCode::kRange);
  CHECK(bad.offset == 0);
  CHECK(std::get<Diagnostic>(events[1]).offset == 1);
  CHECK(std::get<TouchSample>(events[2]).same_contact({1, 2, 3, false, 0}));
}

TEST_CASE("stream decoder: truncated tail and trailing garbage") {
  std::vector<std::uint8_t> stream;
  append(stream, encode_frame({7, 7, 7, true, 0}));
  stream.push_back(0x81);
  stream.push_back(0x00);
  auto events = decode_all(stream);
  REQUIRE(events.size() == 2);
  CHECK(std::get<Diagnostic>(events[1]).kind == DiagnosticKind::kTruncated);

  events = decode_all(std::vector<std::uint8_t>{0x10, 0x20});
  REQUIRE(events.size() == 1);
  CHECK(std::get<Diagnostic>(events[0]).kind == DiagnosticKind::kSkippedBytes);

  CHECK(decode_all({}).empty());
}

TEST_CASE("stream decoder: chunking does not change the output") {
  auto rng = oracle::rng(42);
  std::vector<std::uint8_t> stream;
  for (int i = 0; i < 200; ++i) {
    append(stream, encode_frame(random_sample(rng)));
    if (i % 7 == 0) stream.push_back(static_cast<std::uint8_t>(rng()));
  }
  const auto whole = decode_all(stream);

  StreamDecoder dec([] { return std::int64_t{0}; });
  std::vector<StreamEvent> pieces;
  std::size_t pos = 0;
  while (pos < stream.size()) {
    const std::size_t n = std::min<std::size_t>(1 + rng() % 11, stream.size() - pos);
    auto ev = dec.push(std::span(stream).subspan(pos, n));
    pieces.insert(pieces.end(), ev.begin(), ev.end());
    pos += n;
  }
  auto tail = dec.finish();
  pieces.insert(pieces.end(), tail.begin(), tail.end());

  REQUIRE(pieces.size() == whole.size());
  for (std::size_t i = 0; i < whole.size(); ++i) {
    REQUIRE(pieces[i].index() == whole[i].index());
    if (auto* s = std::get_if<TouchSample>(&whole[i])) {
      CHECK(*s == std::get<TouchSample>(pieces[i]));
    } else {
      const auto& d0 = std::get<Diagnostic>(whole[i]);
      const auto& d1 = std::get<Diagnostic>(pieces[i]);
      CHECK(d0.offset == d1.offset);
      CHECK(d0.message == d1.message);
    }
  }
}

namespace {

// Frames 0..k-1 must come out untouched and frames k+2.. must be the tail.
bool recovered(const std::vector<TouchSample>& want, std::size_t k,
               const std::vector<TouchSample>& got) {
  const std::size_t tail = want.size() - std::min(want.size(), k + 2);
  if (got.size() < k + tail) return false;
  for (std::size_t i = 0; i < k; ++i) {
    if (!got[i].same_contact(want[i])) return false;
  }
  for (std::size_t i = 0; i < tail; ++i) {
    if (!got[got.size() - tail + i].same_contact(want[want.size() - tail + i]))
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("resync after any single-byte drop, insert or flip") {
  constexpr std::size_t kFrames = 100;
  auto rng = oracle::rng(2024);
  std::vector<TouchSample> want;
  std::vector<std::uint8_t> clean;
  for (std::size_t i = 0; i < kFrames; ++i) {
    want.push_back(random_sample(rng));
    append(clean, encode_frame(want.back()));
  }
  REQUIRE(samples_of(decode_all(clean)).size() == kFrames);

  std::size_t cases = 0;
  for (std::size_t pos = 0; pos < clean.size(); ++pos) {
    const std::size_t k = pos / kFrameSize;

    auto dropped = clean;
    dropped.erase(dropped.begin() + static_cast<std::ptrdiff_t>(pos));
    CHECK_MESSAGE(recovered(want, k, samples_of(decode_all(dropped))),
                  "drop at ", pos);

    for (std::uint8_t extra : {0x00, 0x80, 0x81, 0xFF}) {
      auto inserted = clean;
      inserted.insert(inserted.begin() + static_cast<std::ptrdiff_t>(pos), extra);
      CHECK_MESSAGE(recovered(want, k, samples_of(decode_all(inserted))),
                    "insert ", int(extra), " at ", pos);
    }

    for (int bit = 0; bit < 8; ++bit) {
      auto flipped = clean;
      flipped[pos] ^= static_cast<std::uint8_t>(1u << bit);
      CHECK_MESSAGE(recovered(want, k, samples_of(decode_all(flipped))),
                    "flip bit ", bit, " at ", pos);
    }
    cases += 1 + 4 + 8;
  }
  CHECK(cases == clean.size() * 13);
}

TEST_CASE("stream decoding is deterministic under an injected clock") {
  auto rng = oracle::rng(7);
  std::vector<std::uint8_t> stream(4096);
  for (auto& b : stream) b = static_cast<std::uint8_t>(rng());
  // Sprinkle real frames into the noise.
  for (std::size_t at = 0; at + kFrameSize < stream.size(); at += 97) {
    const RawFrame f = encode_frame(random_sample(rng));
    std::copy(f.begin(), f.end(), stream.begin() + static_cast<std::ptrdiff_t>(at));
  }
  auto run = [&] {
    std::int64_t t = 0;
    StreamDecoder dec([&t] { return t += 3; });
    auto out = dec.push(stream);
    auto tail = dec.finish();
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
  };
  const auto a = run();
  const auto b = run();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].index() == b[i].index());
    if (auto* s = std::get_if<TouchSample>(&a[i])) {
      CHECK(*s == std::get<TouchSample>(b[i]));
    } else {
      CHECK(std::get<Diagnostic>(a[i]).offset == std::get<Diagnostic>(b[i]).offset);
    }
  }
  for (const auto& ev : a) {
    if (auto* s = std::get_if<TouchSample>(&ev)) {
      CHECK(s->x <= kCoordMax);
      CHECK(s->y <= kCoordMax);
    }
  }
}
