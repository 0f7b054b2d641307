// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <functional>
#include <stdexcept>

#include "doctest.h"
#include "dualcam/capture.hpp"
#include "dualcam/color.hpp"
#include "dualcam/error.hpp"
#include "dualcam/image_io.hpp"
#include "dualcam/metrics.hpp"
#include "dualcam/reconstruct.hpp"
#include "helpers.hpp"

using namespace dualcam;

namespace {

CaptureConfig small_config() {
  CaptureConfig c;
  c.lr_res = {16, 12};
  c.hr_res = {64, 48};
  return c;
}

DualStream random_stream(std::size_t n, std::uint64_t seed) {
  const CaptureConfig c = small_config();
  std::vector<Frame> gt;
  for (std::size_t i = 0; i < n; ++i) gt.push_back(test::random_frame(c.hr_res, ColorSpace::kSrgb8, seed + i));
  return sample_keyframes(gt, c);
}

class ThrowingDecoder final : public DecoderPlugin {
 public:
  std::string name() const override { return "throwing"; }
  std::vector<Frame> decode(const DecoderWindow& w) const override {
    if (w.window_index == 1) throw std::runtime_error("bad weights");
    return IdentityDecoder().decode(w);
  }
};

class ShortDecoder final : public DecoderPlugin {
 public:
  std::string name() const override { return "short"; }
  std::vector<Frame> decode(const DecoderWindow& w) const override {
    auto v = IdentityDecoder().decode(w);
    v.pop_back();
    return v;
  }
};


}  // namespace

namespace {
ErrorKind error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kInvalidInput;
}
}  // namespace

TEST_SUITE("reconstruct") {
  TEST_CASE("identity decoder covers every frame and keeps keys bit-exact") {
    for (std::size_t n : {31u, 20u, 16u, 1u}) {
      CAPTURE(n);
      const DualStream s = random_stream(n, 7);
      const auto out = reconstruct_sequence(s, IdentityDecoder());
      REQUIRE(out.size() == n);
      for (std::size_t t = 0; t < n; ++t) {
        CHECK(out[t].resolution() == s.config.hr_res);
        CHECK(out[t].colorspace() == ColorSpace::kSrgb8);
        CHECK(out[t].frame_index == t);
        CHECK(out[t].timestamp_ms == nominal_timestamp(t, s.config.lr_fps));
        if (const auto slot = s.key_slot(t)) CHECK(out[t].same_pixels(s.key_frames[*slot]));
      }
    }
  }

  TEST_CASE("colour comes from the nearer key") {
    CaptureConfig c = small_config();
    DualStream s;
    s.config = c;
    for (std::size_t t = 0; t < 16; ++t) {
      Frame f = test::constant_frame(c.lr_res, ColorSpace::kGray8, 128);
      f.frame_index = t;
      f.timestamp_ms = nominal_timestamp(t, c.lr_fps);
      s.lr_frames.push_back(f);
    }
    Frame red(c.hr_res, ColorSpace::kSrgb8), blue(c.hr_res, ColorSpace::kSrgb8);
    for (int y = 0; y < c.hr_res.height; ++y)
      for (int x = 0; x < c.hr_res.width; ++x) {
        red.set(x, y, 0, 220);
        blue.set(x, y, 2, 220);
      }
    red.timestamp_ms = 0;
    blue.frame_index = 15;
    blue.timestamp_ms = nominal_timestamp(15, c.lr_fps);
    s.key_frames = {red, blue};
    const auto out = reconstruct_sequence(s, BaselineDecoder());
    REQUIRE(out.size() == 16);
    for (std::size_t t = 1; t < 15; ++t) {
      CAPTURE(t);
      const double r = out[t].at(32, 24, 0), b = out[t].at(32, 24, 2);
      if (t <= 7) CHECK(r > b + 50);
      else CHECK(b > r + 50);
    }
  }

  TEST_CASE("gray scenes reconstruct without colour cast") {
    CaptureConfig c = small_config();
    std::vector<Frame> gt = synthesize_scene(SceneKind::kPanning, 31, c.hr_res);
    for (auto& f : gt) f = to_gray(f);
    std::vector<Frame> rgb;
    for (const auto& g : gt) {
      Frame f(c.hr_res, ColorSpace::kSrgb8);
      for (int y = 0; y < c.hr_res.height; ++y)
        for (int x = 0; x < c.hr_res.width; ++x)
          for (int ch = 0; ch < 3; ++ch) f.set(x, y, ch, g.at(x, y));
      rgb.push_back(f);
    }
    const auto out = reconstruct_sequence(sample_keyframes(rgb, c), BaselineDecoder());
    double worst = 0.0;
    for (const auto& f : out) {
      const Frame lab = rgb_to_lab(f);
      for (int y = 0; y < lab.height(); ++y)
        for (int x = 0; x < lab.width(); ++x)
          for (int ch = 1; ch < 3; ++ch)
            worst = std::max(worst, std::abs(denormalize_ab(lab.at(x, y, ch))));
    }
    CHECK(worst < 1.5);
  }

  TEST_CASE("reconstruction is deterministic and independent of parallelism") {
    const DualStream s = random_stream(31, 3);
    const auto a = reconstruct_sequence(s, BaselineDecoder(), {Homography(), 1, 10});
    const auto b = reconstruct_sequence(s, BaselineDecoder(), {Homography(), 3, 10});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].same_pixels(b[i]));
  }

  TEST_CASE("static scene quality") {
    CaptureConfig c;
    c.lr_res = {40, 30};
    c.hr_res = {160, 120};
    const auto gt = synthesize_scene(SceneKind::kStatic, 31, c.hr_res);
    const auto out = reconstruct_sequence(sample_keyframes(gt, c), BaselineDecoder());
    CHECK(evaluate_sequence(out, gt, 15, ChannelSet::kAb).mean_psnr >= 40.0);
    CHECK(evaluate_sequence(out, gt, 15, ChannelSet::kRgb).mean_psnr >= 35.0);
  }

  TEST_CASE("error kinds") {
    DualStream s = random_stream(31, 1);
    CHECK(error_kind([&] { reconstruct_sequence(s, ThrowingDecoder()); }) == ErrorKind::kDecoder);
    CHECK(error_kind([&] { reconstruct_sequence(s, ShortDecoder()); }) == ErrorKind::kDecoder);
    CHECK(error_kind([] { make_decoder("nope"); }) == ErrorKind::kConfig);

    DualStream shifted = s;
    shifted.key_frames[1].timestamp_ms += 200;
    CHECK(error_kind([&] { reconstruct_sequence(shifted, IdentityDecoder()); }) == ErrorKind::kDesync);

    DualStream missing = s;
    missing.key_frames.pop_back();
    CHECK(error_kind([&] { reconstruct_sequence(missing, IdentityDecoder()); }) == ErrorKind::kData);
  }

  TEST_CASE("decoder failures name the decoder and window") {
    try {
      reconstruct_sequence(random_stream(31, 1), ThrowingDecoder());
      FAIL("expected an error");
    } catch (const Error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("throwing") != std::string::npos);
      CHECK(msg.find("window 1") != std::string::npos);
    }
  }

  TEST_CASE("external reconstructions are imported and counted") {
    const auto dir = test::scratch("external");
    const DualStream s = random_stream(3, 9);
    const auto frames = reconstruct_sequence(s, IdentityDecoder());
    for (std::size_t i = 0; i < frames.size(); ++i) write_png(dir / frame_file_name(i), frames[i]);
    const auto back = import_external_reconstruction(dir, 3, s.config.hr_res);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(back[i].same_pixels(frames[i]));
    CHECK(error_kind([&] { import_external_reconstruction(dir, 4, s.config.hr_res); }) == ErrorKind::kData);
    CHECK(error_kind([&] { import_external_reconstruction(dir, 3, {32, 24}); }) == ErrorKind::kData);
  }
}
