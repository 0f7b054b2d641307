// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_COLOR_HPP_
#define DUALCAM_COLOR_HPP_

#include <array>
#include <cstdint>

#include "dualcam/frame.hpp"

namespace dualcam {

struct Lab {
  double l = 0.0;  // [0, 100]
  double a = 0.0;  // nominally [-128, 127]
  double b = 0.0;
};

// Affine map between CIELAB and the [-1, 1] network range. Decoders in any
// language must use exactly these.
//   L*  -> L*/50 - 1
//   a*,b* -> (v + 128)/127.5 - 1
inline double normalize_l(double l) { return l / 50.0 - 1.0; }
inline double normalize_ab(double v) { return (v + 128.0) / 127.5 - 1.0; }
inline double denormalize_l(double n) { return (n + 1.0) * 50.0; }
inline double denormalize_ab(double n) { return (n + 1.0) * 127.5 - 128.0; }

/// sRGB (8-bit, D65) to CIELAB.
Lab srgb_to_lab(double r, double g, double b);
/// CIELAB to unclamped, unrounded sRGB in [0, 255] units.
std::array<double, 3> lab_to_srgb(const Lab& lab);

Frame rgb_to_lab(const Frame& frame);
Frame lab_to_rgb(const Frame& frame);

/// Grayscale sensor model: L* rescaled to [0, 255] (L* x 2.55) and rounded.
Frame to_gray(const Frame& frame);
double gray_level(double r, double g, double b);

/// GRAY8 -> GRAY_NORM on the L* normalization (v/127.5 - 1), and back.
Frame gray_to_norm(const Frame& gray);
Frame norm_to_gray(const Frame& norm);

}  // namespace dualcam

#endif  // DUALCAM_COLOR_HPP_
