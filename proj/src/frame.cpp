// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/frame.hpp"

#include <algorithm>
#include <cmath>

#include "dualcam/error.hpp"

namespace dualcam {

const char* to_string(ColorSpace cs) noexcept {
  switch (cs) {
    case ColorSpace::kSrgb8: return "SRGB8";
    case ColorSpace::kLabNorm: return "LAB_NORM";
    case ColorSpace::kGray8: return "GRAY8";
    case ColorSpace::kGrayNorm: return "GRAY_NORM";
  }
  return "?";
}

const char* to_string(StreamKind s) noexcept {
  switch (s) {
    case StreamKind::kLr: return "LR";
    case StreamKind::kKey: return "KEY";
    case StreamKind::kGt: return "GT";
  }
  return "?";
}

int channels_of(ColorSpace cs) {
  return (cs == ColorSpace::kSrgb8 || cs == ColorSpace::kLabNorm) ? 3 : 1;
}

std::uint8_t to_u8(double v) {
  if (!(v > 0.0)) return 0;  // also maps NaN to 0
  if (v >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

Frame::Frame(Resolution res, ColorSpace cs)
    : res_(res), channels_(channels_of(cs)), cs_(cs) {
  require(res.width > 0 && res.height > 0, "frame dimensions must be positive");
  if (is_8bit()) {
    bytes_.assign(sample_count(), 0);
  } else {
    reals_.assign(sample_count(), 0.0);
  }
}

void Frame::copy_meta_from(const Frame& other) {
  timestamp_ms = other.timestamp_ms;
  stream = other.stream;
  frame_index = other.frame_index;
}

bool Frame::same_pixels(const Frame& other) const {
  return res_ == other.res_ && cs_ == other.cs_ && bytes_ == other.bytes_ &&
         reals_ == other.reals_;
}

Frame extract_channel(const Frame& f, int c) {
  require(c >= 0 && c < f.channels(), "channel index out of range");
  Frame out(f.resolution(), ColorSpace::kGrayNorm);
  out.copy_meta_from(f);
  auto dst = out.reals();
  for (int y = 0; y < f.height(); ++y)
    for (int x = 0; x < f.width(); ++x)
      dst[static_cast<std::size_t>(y) * f.width() + x] = f.at(x, y, c);
  return out;
}

}  // namespace dualcam
