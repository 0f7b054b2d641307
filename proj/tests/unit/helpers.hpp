// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_TESTS_HELPERS_HPP_
#define DUALCAM_TESTS_HELPERS_HPP_

#include <filesystem>
#include <string>

#include "dualcam/frame.hpp"
#include "dualcam/rng.hpp"

namespace dualcam::test {

inline std::filesystem::path data_dir() { return DUALCAM_TEST_DATA; }
inline std::filesystem::path golden_dir() { return DUALCAM_TEST_GOLDEN; }

/// Fresh scratch directory under the test working directory.
inline std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::current_path() / "scratch" / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline Frame random_frame(Resolution res, ColorSpace cs, std::uint64_t seed) {
  Frame f(res, cs);
  Rng rng(seed);
  if (f.is_8bit()) {
    for (auto& b : f.bytes()) b = static_cast<std::uint8_t>(rng.below(256));
  } else {
    for (auto& v : f.reals()) v = 2.0 * rng.uniform() - 1.0;
  }
  return f;
}

inline Frame constant_frame(Resolution res, ColorSpace cs, double v) {
  Frame f(res, cs);
  for (int y = 0; y < res.height; ++y)
    for (int x = 0; x < res.width; ++x)
      for (int c = 0; c < f.channels(); ++c) f.set(x, y, c, v);
  return f;
}

}  // namespace dualcam::test

#endif  // DUALCAM_TESTS_HELPERS_HPP_
