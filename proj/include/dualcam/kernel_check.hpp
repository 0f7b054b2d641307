// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_KERNEL_CHECK_HPP_
#define DUALCAM_KERNEL_CHECK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "dualcam/nnkernels.hpp"

namespace dualcam {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Random stack of `levels` maps plus a query, entries uniform in [-1, 1).
FeatureStack random_feature_stack(int width, int height, int channels, int levels,
                                  std::uint64_t seed);

/// Largest |analytic - numeric| / max(|analytic|, |numeric|, 1e-6) over every
/// input entry, with central differences of step `h` on <upstream, output>.
double attention_gradient_error(const FeatureStack& stack, const FeatureMap& upstream,
                                double h = 1e-5);

/// Runs the kernel property suite (attention, residual block, pixel shuffle,
/// Charbonnier) and reports one result per invariant.
std::vector<CheckResult> run_kernel_checks(std::uint64_t seed = 0);

}  // namespace dualcam

#endif  // DUALCAM_KERNEL_CHECK_HPP_
