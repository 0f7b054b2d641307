// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/pad.hpp"

#include <algorithm>

#include "dualcam/error.hpp"

namespace dualcam {

int reflect_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - i;
}

Frame reflect_pad(const Frame& frame, int pad) {
  require(pad >= 0, "reflect_pad: negative pad");
  require(pad < std::min(frame.width(), frame.height()),
          "reflect_pad: pad " + std::to_string(pad) + " too large for " +
              std::to_string(frame.width()) + "x" + std::to_string(frame.height()));
  if (pad == 0) return frame;
  Frame out({frame.width() + 2 * pad, frame.height() + 2 * pad}, frame.colorspace());
  out.copy_meta_from(frame);
  for (int y = 0; y < out.height(); ++y) {
    const int sy = reflect_index(y - pad, frame.height());
    for (int x = 0; x < out.width(); ++x) {
      const int sx = reflect_index(x - pad, frame.width());
      for (int c = 0; c < frame.channels(); ++c) out.set(x, y, c, frame.at(sx, sy, c));
    }
  }
  return out;
}

Frame crop_pad(const Frame& frame, int pad) {
  require(pad >= 0, "crop_pad: negative pad");
  require(2 * pad < std::min(frame.width(), frame.height()),
          "crop_pad: pad " + std::to_string(pad) + " too large");
  if (pad == 0) return frame;
  Frame out({frame.width() - 2 * pad, frame.height() - 2 * pad}, frame.colorspace());
  out.copy_meta_from(frame);
  for (int y = 0; y < out.height(); ++y)
    for (int x = 0; x < out.width(); ++x)
      for (int c = 0; c < frame.channels(); ++c)
        out.set(x, y, c, frame.at(x + pad, y + pad, c));
  return out;
}

}  // namespace dualcam
