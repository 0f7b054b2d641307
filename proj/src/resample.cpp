// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/resample.hpp"

#include <algorithm>
#include <cmath>

#include "dualcam/error.hpp"

namespace dualcam {

double cubic_kernel(double x) {
  const double ax = std::abs(x);
  const double ax2 = ax * ax;
  const double ax3 = ax2 * ax;
  if (ax <= 1.0) return 1.5 * ax3 - 2.5 * ax2 + 1.0;
  if (ax <= 2.0) return -0.5 * ax3 + 2.5 * ax2 - 4.0 * ax + 2.0;
  return 0.0;
}

std::vector<AxisTaps> axis_taps(int in_size, int out_size, bool antialias) {
  require(in_size > 0 && out_size > 0, "resample: sizes must be positive");
  const double scale = static_cast<double>(out_size) / in_size;
  const bool stretch = antialias && scale < 1.0;
  const double width = stretch ? 4.0 / scale : 4.0;
  const int taps = static_cast<int>(std::ceil(width)) + 2;

  std::vector<AxisTaps> out(out_size);
  for (int i = 0; i < out_size; ++i) {
    const double u = (i + 0.5) / scale - 0.5;
    const int left = static_cast<int>(std::floor(u - width / 2.0));
    AxisTaps& t = out[i];
    double sum = 0.0;
    for (int k = 0; k < taps; ++k) {
      const int j = left + k;
      const double d = u - j;
      const double w = stretch ? scale * cubic_kernel(scale * d) : cubic_kernel(d);
      if (w == 0.0) continue;
      const int idx = std::clamp(j, 0, in_size - 1);
      auto it = std::find(t.index.begin(), t.index.end(), idx);
      if (it != t.index.end()) {
        t.weight[it - t.index.begin()] += w;
      } else {
        t.index.push_back(idx);
        t.weight.push_back(w);
      }
      sum += w;
    }
    for (double& w : t.weight) w /= sum;
  }
  return out;
}

Frame resample_bicubic(const Frame& frame, Resolution target, bool antialias) {
  require(!frame.empty(), "resample: empty frame");
  require(target.width >= 1 && target.height >= 1,
          "resample: target resolution must be at least 1x1");
  const int ch = frame.channels();
  const int in_w = frame.width();
  const int in_h = frame.height();
  const auto xt = axis_taps(in_w, target.width, antialias);
  const auto yt = axis_taps(in_h, target.height, antialias);

  // Horizontal pass into a (target.width x in_h) real buffer.
  std::vector<double> tmp(static_cast<std::size_t>(target.width) * in_h * ch);
  for (int y = 0; y < in_h; ++y) {
    for (int x = 0; x < target.width; ++x) {
      const AxisTaps& t = xt[x];
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < t.index.size(); ++k)
          acc += t.weight[k] * frame.at(t.index[k], y, c);
        tmp[(static_cast<std::size_t>(y) * target.width + x) * ch + c] = acc;
      }
    }
  }

  Frame out(target, frame.colorspace());
  out.copy_meta_from(frame);
  for (int y = 0; y < target.height; ++y) {
    const AxisTaps& t = yt[y];
    for (int x = 0; x < target.width; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < t.index.size(); ++k)
          acc += t.weight[k] *
                 tmp[(static_cast<std::size_t>(t.index[k]) * target.width + x) * ch + c];
        out.set(x, y, c, acc);
      }
    }
  }
  return out;
}

}  // namespace dualcam
