// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_METRICS_HPP_
#define DUALCAM_METRICS_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dualcam/frame.hpp"

namespace dualcam {

/// Returned by psnr() when the frames are identical.
inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

/// 10 log10(max^2 / MSE) over every sample of two equally shaped frames.
double psnr(const Frame& a, const Frame& b, double max_value = 255.0);
double psnr_samples(std::span<const double> a, std::span<const double> b, double max_value);

/// Single-scale SSIM: 11x11 Gaussian window (sigma 1.5), C1 = (0.01 * 255)^2,
/// C2 = (0.03 * 255)^2, averaged over all window positions fully inside the
/// image. Inputs must be single channel.
double ssim(const Frame& a, const Frame& b);
double ssim_plane(std::span<const double> a, std::span<const double> b, int width, int height);

enum class ChannelSet { kY, kAb, kRgb };
const char* to_string(ChannelSet c);
ChannelSet parse_channel_set(const std::string& s);

/// How Y is derived; written into every report.
inline constexpr const char* kYDefinition = "Y = CIELAB L* x 2.55 (range [0, 255]), not YCbCr luma";

struct FrameScore {
  std::size_t index = 0;
  double psnr = 0.0;
  double ssim = 0.0;
};

struct SequenceReport {
  ChannelSet channels = ChannelSet::kRgb;
  int key_interval = 1;
  std::vector<FrameScore> frames;  // non-key frames only, ascending index
  double mean_psnr = 0.0;          // over finite PSNRs; NaN if none
  double mean_ssim = 0.0;
  std::size_t infinite_psnr_frames = 0;
  std::size_t excluded_key_frames = 0;
  bool perfect = false;  // every evaluated frame reproduced exactly
};

/// Per-frame metrics on SRGB8 sequences in the requested channel space,
/// skipping indices t with t % K == 0.
SequenceReport evaluate_sequence(std::span<const Frame> pred, std::span<const Frame> gt,
                                 int key_interval, ChannelSet channels);

std::string report_to_json(const SequenceReport& r, int indent = 2);
std::string report_to_csv(const SequenceReport& r);

}  // namespace dualcam

#endif  // DUALCAM_METRICS_HPP_
