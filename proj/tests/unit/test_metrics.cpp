// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "dualcam/error.hpp"
#include "dualcam/metrics.hpp"
#include "helpers.hpp"

using namespace dualcam;

TEST_SUITE("metrics") {
  TEST_CASE("PSNR oracles") {
    const Frame a = test::constant_frame({8, 8}, ColorSpace::kGray8, 100);
    const Frame b = test::constant_frame({8, 8}, ColorSpace::kGray8, 110);
    CHECK(psnr(a, b) == doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 100.0)).epsilon(1e-14));
    CHECK(std::isinf(psnr(a, a)));
    CHECK_THROWS_AS(psnr(a, test::constant_frame({8, 7}, ColorSpace::kGray8, 0)), Error);
  }

  TEST_CASE("SSIM oracles") {
    const Frame a = test::constant_frame({16, 16}, ColorSpace::kGray8, 100);
    const Frame b = test::constant_frame({16, 16}, ColorSpace::kGray8, 110);
    // Constant planes reduce SSIM to the luminance term with C1 = (0.01 * 255)^2.
    CHECK(ssim(a, b) == doctest::Approx(0.99547644409150656).epsilon(1e-13));
    const Frame r = test::random_frame({32, 32}, ColorSpace::kGray8, 4);
    CHECK(ssim(r, r) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ssim(r, test::random_frame({32, 32}, ColorSpace::kGray8, 5)) < 0.2);
  }

  TEST_CASE("sequence evaluation excludes keys and flags perfect runs") {
    std::vector<Frame> gt;
    for (int i = 0; i < 16; ++i) gt.push_back(test::random_frame({24, 24}, ColorSpace::kSrgb8, 40 + i));
    const SequenceReport r = evaluate_sequence(gt, gt, 15, ChannelSet::kRgb);
    CHECK(r.excluded_key_frames == 2);
    CHECK(r.frames.size() == 14);
    CHECK(r.perfect);
    CHECK(r.infinite_psnr_frames == 14);
    CHECK(std::isnan(r.mean_psnr));
    CHECK(r.mean_ssim == 1.0);
    CHECK(report_to_json(r).find("\"mean_psnr_db\": null") != std::string::npos);
  }

  TEST_CASE("channel sets separate lightness from colour") {
    Frame gray = test::constant_frame({16, 16}, ColorSpace::kSrgb8, 120);
    Frame tinted = gray;
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x) {
        tinted.set(x, y, 0, 140);
        tinted.set(x, y, 2, 100);
      }
    std::vector<Frame> gt{gray, gray}, pred{gray, tinted};
    const auto y = evaluate_sequence(pred, gt, 15, ChannelSet::kY);
    const auto ab = evaluate_sequence(pred, gt, 15, ChannelSet::kAb);
    CHECK(y.mean_psnr > ab.mean_psnr);
    // Changing only the lightness of a neutral grey leaves AB untouched.
    std::vector<Frame> darker{gray, test::constant_frame({16, 16}, ColorSpace::kSrgb8, 100)};
    CHECK(evaluate_sequence(darker, gt, 15, ChannelSet::kAb).perfect);
    CHECK(evaluate_sequence(darker, gt, 15, ChannelSet::kY).mean_psnr < 30.0);
  }

  TEST_CASE("reports serialise every evaluated frame") {
    std::vector<Frame> gt, pred;
    for (int i = 0; i < 4; ++i) {
      gt.push_back(test::random_frame({16, 16}, ColorSpace::kSrgb8, i));
      pred.push_back(test::random_frame({16, 16}, ColorSpace::kSrgb8, 10 + i));
    }
    const auto r = evaluate_sequence(pred, gt, 2, ChannelSet::kRgb);
    REQUIRE(r.frames.size() == 2);
    CHECK(r.frames[0].index == 1);
    CHECK(r.frames[1].index == 3);
    const std::string csv = report_to_csv(r);
    CHECK(csv.find("frame_index,psnr_db,ssim\n1,") != std::string::npos);
    CHECK(report_to_json(r).find("\"channels\": \"RGB\"") != std::string::npos);
    CHECK(parse_channel_set("ab") == ChannelSet::kAb);
    CHECK_THROWS_AS(parse_channel_set("xyz"), Error);
    CHECK_THROWS_AS(evaluate_sequence(pred, std::span(gt).first(3), 2, ChannelSet::kRgb), Error);
  }
}
