// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_RESAMPLE_HPP_
#define DUALCAM_RESAMPLE_HPP_

#include <vector>

#include "dualcam/frame.hpp"

namespace dualcam {

/// Keys cubic convolution kernel with a = -0.5.
double cubic_kernel(double x);

/// Contribution of input samples to one output sample along one axis.
/// Indices are already clamped to the border; weights sum to one.
struct AxisTaps {
  std::vector<int> index;
  std::vector<double> weight;
};

/// Per-output taps for resizing an axis of `in_size` samples to `out_size`.
/// Pixel centres are aligned: output i sits at input (i + 0.5) / s - 0.5.
/// With `antialias` and a downscale the kernel is stretched by 1/s.
std::vector<AxisTaps> axis_taps(int in_size, int out_size, bool antialias);

/// Separable bicubic resize; 8-bit frames are rounded once at the end.
Frame resample_bicubic(const Frame& frame, Resolution target, bool antialias = true);

}  // namespace dualcam

#endif  // DUALCAM_RESAMPLE_HPP_
