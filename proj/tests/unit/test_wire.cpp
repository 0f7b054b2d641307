// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "dualcam/crc.hpp"
#include "dualcam/error.hpp"
#include "dualcam/image_io.hpp"
#include "dualcam/wire.hpp"
#include "helpers.hpp"

using namespace dualcam;

namespace {

std::vector<EncodedPacket> wire_of(const Frame& f, bool key) { return encode_all(packetize(f, key)); }

Frame golden_lr() {
  Frame f({160, 120}, ColorSpace::kGray8);
  for (int y = 0; y < 120; ++y)
    for (int x = 0; x < 160; ++x) f.set(x, y, 0, (x * 3 + y * 7) & 0xFF);
  f.frame_index = 42;
  f.timestamp_ms = 2800;
  return f;
}

Frame golden_key_rows() {
  Frame f({640, 4}, ColorSpace::kSrgb8);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 640; ++x)
      for (int c = 0; c < 3; ++c) f.set(x, y, c, (x + 2 * y + 50 * c) & 0xFF);
  f.frame_index = 15;
  f.timestamp_ms = 1000;
  return f;
}

}  // namespace

TEST_SUITE("wire") {
  TEST_CASE("CRC-16/CCITT-FALSE check value") {
    const std::string s = "123456789";
    CHECK(crc16_ccitt_false({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}) == 0x29B1);
  }

  TEST_CASE("packet encode/decode") {
    Packet p{StreamId::kKeyB, 0x01020304, 7, 1, {9, 8, 7}};
    const auto bytes = encode_packet(p);
    REQUIRE(bytes.size() == kHeaderSize + 3 + kCrcSize);
    CHECK(bytes[0] == 2);
    CHECK(bytes[1] == 0x04);
    CHECK(bytes[4] == 0x01);
    CHECK(bytes[5] == 7);
    CHECK(bytes[8] == 3);
    CHECK(decode_packet(bytes) == p);
    auto bad = bytes;
    bad[11] ^= 0x10;
    CHECK_FALSE(decode_packet(bad).has_value());
    CHECK_FALSE(decode_packet(std::vector<std::uint8_t>(5)).has_value());
    Packet big;
    big.payload.resize(kMaxPayload + 1);
    CHECK_THROWS_AS(encode_packet(big), Error);
  }

  TEST_CASE("packet counts and footer") {
    const Frame lr = test::random_frame({160, 120}, ColorSpace::kGray8, 1);
    const auto lp = packetize(lr, false);
    CHECK(lp.size() == 121);
    const auto& tail = lp.back();
    CHECK(tail.line_index == 120);
    REQUIRE(tail.payload.size() == 7);
    CHECK(tail.payload[4] == 13);
    CHECK(tail.payload[5] == 0);
    CHECK(tail.payload[6] == 10);

    // 1280-byte rows (2 bytes per pixel) need two segments per row.
    std::vector<std::uint8_t> yuv(1280 * 480, 1);
    const auto kp = packetize_rows(yuv, 480, 1280, 0, true, 0);
    CHECK(kp.size() == 480 * 2 + 1);
    int a = 0, b = 0;
    for (const auto& p : kp) (p.stream_id == StreamId::kKeyA ? a : b)++;
    CHECK(a == 481);
    CHECK(b == 480);
    for (const auto& p : kp) CHECK((p.line_index % 2 == 0) == (p.stream_id == StreamId::kKeyA));

    const Frame key = test::random_frame({640, 480}, ColorSpace::kSrgb8, 2);
    CHECK(packetize(key, true).size() == 480 * 2 + 1);
  }

  TEST_CASE("lossless round trip of random frames of both stream types") {
    for (int i = 0; i < 100; ++i) {
      const bool key = i % 2 == 1;
      Frame f = key ? test::random_frame({640, 480}, ColorSpace::kSrgb8, 100 + i)
                    : test::random_frame({160, 120}, ColorSpace::kGray8, 100 + i);
      f.frame_index = i;
      f.timestamp_ms = 67u * i;
      auto packets = channel_transmit(wire_of(f, key), {0.0, 0.0, 3});
      std::reverse(packets.begin(), packets.end());
      const Reassembled r = reassemble(packets, {f.resolution(), f.colorspace()}, i);
      CHECK(r.frame.same_pixels(f));
      CHECK(r.losses.empty());
      CHECK(r.timestamp_known);
      CHECK(r.frame.timestamp_ms == f.timestamp_ms);
    }
  }

  TEST_CASE("lost lines enter the loss map") {
    const Frame f = test::random_frame({160, 120}, ColorSpace::kGray8, 5);
    auto packets = wire_of(f, false);
    packets.erase(packets.begin() + 10, packets.begin() + 12);
    const Reassembled r = reassemble(packets, {f.resolution(), f.colorspace()}, 0);
    CHECK(r.losses == LossMap{{10, 2}});
    for (int x = 0; x < 160; ++x) CHECK(r.frame.at(x, 10) == 0);

    const Frame k = test::random_frame({640, 480}, ColorSpace::kSrgb8, 6);
    auto kp = wire_of(k, true);
    kp.erase(kp.begin() + 2 * 7 + 1);  // second segment of row 7
    CHECK(reassemble(kp, {k.resolution(), k.colorspace()}, 0).losses == LossMap{{7, 1}});
  }

  TEST_CASE("a flipped bit is caught by the CRC") {
    const Frame f = test::random_frame({160, 120}, ColorSpace::kGray8, 8);
    auto packets = wire_of(f, false);
    packets[33][kHeaderSize + 17] ^= 0x04;
    const Reassembled r = reassemble(packets, {f.resolution(), f.colorspace()}, 0);
    CHECK(r.crc_failures == 1);
    CHECK(r.losses == LossMap{{33, 1}});

    const auto flipped = channel_transmit(packets, {0.0, 1.0, 4});
    CHECK(flipped.size() == packets.size());
    CHECK(group_by_frame(flipped).undecodable == packets.size());
  }

  TEST_CASE("missing terminal packet leaves the timestamp unknown") {
    const Frame f = test::random_frame({160, 120}, ColorSpace::kGray8, 9);
    auto packets = wire_of(f, false);
    packets.pop_back();
    const Reassembled r = reassemble(packets, {f.resolution(), f.colorspace()}, 0);
    CHECK_FALSE(r.timestamp_known);
    CHECK(r.frame.same_pixels(f));
  }

  TEST_CASE("loss map invariants") {
    const std::vector<std::uint8_t> lost{0, 1, 1, 0, 1, 0, 0, 1};
    const LossMap m = loss_map_from_lines(lost);
    CHECK(m == LossMap{{1, 2}, {4, 1}, {7, 1}});
    CHECK(lost_line_count(m) == 4);
  }

  TEST_CASE("channel: extremes, determinism and the 7% binomial band") {
    std::vector<EncodedPacket> packets(10000, EncodedPacket(16, 0xAB));
    CHECK(channel_transmit(packets, {0.0, 0.0, 1}).size() == 10000);
    CHECK(channel_transmit(packets, {1.0, 0.0, 1}).empty());
    const auto a = channel_transmit(packets, {0.07, 0.0, 77});
    const auto b = channel_transmit(packets, {0.07, 0.0, 77});
    CHECK(a == b);
    const double sigma = std::sqrt(10000 * 0.07 * 0.93);
    CHECK(std::abs(static_cast<double>(a.size()) - 9300.0) <= 3 * sigma);
    CHECK_THROWS_AS(channel_transmit(packets, {1.5, 0.0, 1}), Error);
  }

  TEST_CASE("grouping keeps arrival order per frame") {
    Frame a = test::random_frame({160, 120}, ColorSpace::kGray8, 1);
    Frame b = test::random_frame({160, 120}, ColorSpace::kGray8, 2);
    a.frame_index = 3;
    b.frame_index = 4;
    auto pa = wire_of(a, false), pb = wire_of(b, false);
    std::vector<EncodedPacket> mixed;
    for (std::size_t i = 0; i < pa.size(); ++i) {
      mixed.push_back(pa[i]);
      mixed.push_back(pb[i]);
    }
    const FrameGroups g = group_by_frame(mixed);
    REQUIRE(g.frames.size() == 2);
    CHECK(g.frames.at(3) == pa);
    CHECK(reassemble(mixed, {a.resolution(), a.colorspace()}, 4).ignored_packets == pa.size());
  }

  TEST_CASE("stream files match the committed goldens") {
    const auto lr = read_file(test::golden_dir() / "lr_frame.ncs");
    CHECK(encode_stream(wire_of(golden_lr(), false)) == lr);
    const auto key = read_file(test::golden_dir() / "key_rows.ncs");
    CHECK(encode_stream(wire_of(golden_key_rows(), true)) == key);

    const auto packets = decode_stream(lr);
    const Reassembled r = reassemble(packets, {{160, 120}, ColorSpace::kGray8}, 42);
    CHECK(r.frame.same_pixels(golden_lr()));
    CHECK(r.frame.timestamp_ms == 2800);

    const auto dir = test::scratch("wire_stream");
    write_stream_file(dir / "x.ncs", packets);
    CHECK(read_stream_file(dir / "x.ncs") == packets);
    CHECK_THROWS_AS(decode_stream(std::vector<std::uint8_t>{'N', 'O'}), Error);
    auto truncated = lr;
    truncated.resize(lr.size() - 3);
    CHECK_THROWS_AS(decode_stream(truncated), Error);
  }

  TEST_CASE("rate report") {
    const RateReport r = rate_report(CaptureConfig{});
    CHECK(r.lr_bps == 2304000.0);
    CHECK(r.lr_fits_one_radio);
    CHECK(r.key_frame_bits == 4915200.0);
    CHECK(r.key_radios == 2);
    CHECK_FALSE(r.key_fits_one_radio);
  }
}
