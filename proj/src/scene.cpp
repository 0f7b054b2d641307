// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "dualcam/capture.hpp"
#include "dualcam/color.hpp"
#include "dualcam/error.hpp"

namespace dualcam {
namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

Frame render(Resolution res, double shift, bool panning) {
  Frame f(res, ColorSpace::kSrgb8);
  const double w = res.width;
  const double h = res.height;
  for (int y = 0; y < res.height; ++y) {
    for (int x = 0; x < res.width; ++x) {
      const double u = (x + 0.5 + shift) / w;
      const double v = (y + 0.5) / h;
      Lab lab;
      if (panning) {
        // Hue rotates twice across the frame width; luminance has its own
        // slower horizontal period so motion is visible in the gray stream too.
        const double hue = kTau * 2.0 * u;
        lab.l = 58.0 + 14.0 * std::sin(kTau * u + 1.3) + 8.0 * std::cos(kTau * v);
        lab.a = 38.0 * std::cos(hue);
        lab.b = 38.0 * std::sin(hue) + 6.0 * std::cos(kTau * v);
      } else {
        lab.l = 55.0 + 18.0 * std::sin(kTau * (0.7 * u + 0.2 * v)) + 6.0 * std::cos(kTau * v);
        lab.a = 25.0 * std::cos(kTau * (0.5 * u - 0.3 * v));
        lab.b = 25.0 * std::sin(kTau * (0.4 * u + 0.6 * v));
      }
      const auto rgb = lab_to_srgb(lab);
      for (int c = 0; c < 3; ++c) f.set(x, y, c, rgb[c]);
    }
  }
  return f;
}

}  // namespace

std::vector<Frame> synthesize_scene(SceneKind kind, std::size_t frames, Resolution res,
                                    double pan_px) {
  require(frames > 0, "synthesize_scene: need at least one frame");
  std::vector<Frame> out;
  out.reserve(frames);
  const Frame still = kind == SceneKind::kStatic ? render(res, 0.0, false) : Frame{};
  for (std::size_t t = 0; t < frames; ++t) {
    Frame f = kind == SceneKind::kStatic ? still : render(res, pan_px * t, true);
    f.stream = StreamKind::kGt;
    f.frame_index = t;
    out.push_back(std::move(f));
  }
  return out;
}

SceneKind parse_scene_kind(const std::string& name) {
  if (name == "static") return SceneKind::kStatic;
  if (name == "panning") return SceneKind::kPanning;
  fail(ErrorKind::kConfig, "unknown scene '" + name + "' (expected static|panning)");
}

}  // namespace dualcam
