// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "dualcam/capture.hpp"
#include "dualcam/color.hpp"
#include "dualcam/error.hpp"
#include "dualcam/resample.hpp"
#include "helpers.hpp"

using namespace dualcam;

namespace {

CaptureConfig small_config(int k = 15) {
  CaptureConfig c;
  c.key_interval = k;
  c.lr_res = {16, 12};
  c.hr_res = {64, 48};
  return c;
}

std::vector<Frame> random_gt(std::size_t n, Resolution res, std::uint64_t seed) {
  std::vector<Frame> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(test::random_frame(res, ColorSpace::kSrgb8, seed + i));
  return v;
}

Frame stamped(std::uint32_t ms) {
  Frame f({1, 1}, ColorSpace::kGray8);
  f.timestamp_ms = ms;
  return f;
}

}  // namespace

TEST_SUITE("capture") {
  TEST_CASE("config validation") {
    CaptureConfig c;
    CHECK_NOTHROW(c.validate());
    c.key_interval = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    c = CaptureConfig{};
    c.hr_res = {600, 480};
    try {
      c.validate();
      FAIL("expected a config error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kConfig);
    }
  }

  TEST_CASE("degrade: white stays white and matches the composed oracle") {
    const CaptureConfig cfg;
    const Frame white = test::constant_frame(cfg.hr_res, ColorSpace::kSrgb8, 255);
    const Frame lr = degrade(white, cfg);
    CHECK(lr.resolution() == cfg.lr_res);
    CHECK(lr.same_pixels(test::constant_frame(cfg.lr_res, ColorSpace::kGray8, 255)));

    const Frame gt = test::random_frame(cfg.hr_res, ColorSpace::kSrgb8, 9);
    CHECK(degrade(gt, cfg).same_pixels(resample_bicubic(to_gray(gt), cfg.lr_res, true)));
    CHECK_THROWS_AS(degrade(test::random_frame({10, 10}, ColorSpace::kSrgb8, 1), cfg), Error);
  }

  TEST_CASE("degrade noise is seeded and optional") {
    CaptureConfig cfg = small_config();
    cfg.noise = {true, 2.0, 1.0, 77};
    cfg.seed = 5;
    const Frame gt = test::random_frame(cfg.hr_res, ColorSpace::kSrgb8, 2);
    CHECK(degrade(gt, cfg, 3).same_pixels(degrade(gt, cfg, 3)));
    CHECK_FALSE(degrade(gt, cfg, 3).same_pixels(degrade(gt, cfg, 4)));
    CaptureConfig off = cfg;
    off.noise.enabled = false;
    CHECK_FALSE(degrade(gt, cfg, 3).same_pixels(degrade(gt, off, 3)));
  }

  TEST_CASE("noise-off degrade commutes with horizontal mirroring") {
    const CaptureConfig cfg = small_config();
    const Frame gt = test::random_frame(cfg.hr_res, ColorSpace::kSrgb8, 12);
    auto mirror = [](const Frame& f) {
      Frame m(f.resolution(), f.colorspace());
      for (int y = 0; y < f.height(); ++y)
        for (int x = 0; x < f.width(); ++x)
          for (int c = 0; c < f.channels(); ++c) m.set(f.width() - 1 - x, y, c, f.at(x, y, c));
      return m;
    };
    CHECK(degrade(mirror(gt), cfg).same_pixels(mirror(degrade(gt, cfg))));
  }

  TEST_CASE("key frames sit at multiples of K") {
    const auto gt = random_gt(31, {64, 48}, 100);
    const DualStream s = sample_keyframes(gt, small_config(15));
    REQUIRE(s.key_frames.size() == 3);
    CHECK(s.key_frames[0].frame_index == 0);
    CHECK(s.key_frames[1].frame_index == 15);
    CHECK(s.key_frames[2].frame_index == 30);
    CHECK(s.key_frames[1].same_pixels(gt[15]));
    CHECK(s.lr_frames.size() == 31);
    for (std::size_t t = 1; t < 31; ++t) CHECK(s.lr_frames[t].timestamp_ms > s.lr_frames[t - 1].timestamp_ms);
    CHECK(s.lr_frames[1].timestamp_ms == 67);
    CHECK(s.lr_frames[15].timestamp_ms == 1000);
    CHECK(s.key_frames[1].timestamp_ms == 1000);

    CHECK(sample_keyframes(random_gt(7, {64, 48}, 1), small_config(6)).key_frames.size() == 2);
    CHECK(sample_keyframes(random_gt(5, {64, 48}, 1), small_config(1)).key_frames.size() == 5);
    for (std::size_t n = 1; n < 40; ++n) CHECK(expected_key_count(n, 15) == (n - 1) / 15 + 1);
    CHECK_THROWS_AS(sample_keyframes(std::vector<Frame>{}, small_config()), Error);
  }

  TEST_CASE("parallel capture equals sequential capture") {
    CaptureConfig cfg = small_config(4);
    cfg.noise = {true, 3.0, 2.0, 9};
    const auto gt = random_gt(13, cfg.hr_res, 40);
    const DualStream a = sample_keyframes(gt, cfg, 1);
    const DualStream b = sample_keyframes(gt, cfg, 4);
    for (std::size_t t = 0; t < gt.size(); ++t) CHECK(a.lr_frames[t].same_pixels(b.lr_frames[t]));
  }

  TEST_CASE("windows") {
    auto windows_for = [](std::size_t n) {
      return split_windows(sample_keyframes(random_gt(n, {64, 48}, 7), small_config(15)));
    };
    const auto w31 = windows_for(31);
    REQUIRE(w31.size() == 2);
    CHECK(w31[0].lr.size() == 15);
    CHECK(w31[1].start_index == 15);
    CHECK(w31[1].key_next->frame_index == 30);
    CHECK_FALSE(w31[1].partial);

    const auto w16 = windows_for(16);
    REQUIRE(w16.size() == 1);
    CHECK(w16[0].lr.size() == 15);

    const auto w20 = windows_for(20);
    REQUIRE(w20.size() == 2);
    CHECK(w20[1].partial);
    CHECK(w20[1].lr.size() == 5);
    CHECK_FALSE(w20[1].key_next.has_value());

    const auto w5 = windows_for(5);
    REQUIRE(w5.size() == 1);
    CHECK(w5[0].single_key);

    // Concatenating the windows reproduces the LR sequence.
    const DualStream s = sample_keyframes(random_gt(20, {64, 48}, 3), small_config(15));
    std::size_t t = 0;
    for (const auto& w : split_windows(s))
      for (const auto& f : w.lr) CHECK(f.same_pixels(s.lr_frames[t++]));
    CHECK(t == 20);
  }

  TEST_CASE("synchronisation") {
    const std::vector<Frame> lr{stamped(997), stamped(1063)};
    const std::vector<Frame> key{stamped(1000)};
    const SyncResult r = synchronize(lr, key);
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].second == 0);
    CHECK(r.unpaired_lr == std::vector<std::size_t>{1});

    const std::vector<Frame> wrap_lr{stamped(0xFFFFFFFDu)};
    const std::vector<Frame> wrap_key{stamped(5)};
    CHECK(wrapped_distance(5, 0xFFFFFFFDu) == 8);
    CHECK(synchronize(wrap_lr, wrap_key).pairs.size() == 1);

    const std::vector<Frame> far{stamped(1200)};
    try {
      synchronize(far, key);
      FAIL("expected desync");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kDesync);
    }
  }

  TEST_CASE("synthetic scenes") {
    const auto st = synthesize_scene(SceneKind::kStatic, 3, {64, 48});
    CHECK(st[0].same_pixels(st[2]));
    const auto pan = synthesize_scene(SceneKind::kPanning, 3, {64, 48}, 4.0);
    CHECK_FALSE(pan[0].same_pixels(pan[1]));
    CHECK_THROWS_AS(parse_scene_kind("spinning"), Error);
  }
}
