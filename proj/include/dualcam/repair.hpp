// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_REPAIR_HPP_
#define DUALCAM_REPAIR_HPP_

#include <optional>

#include "dualcam/frame.hpp"
#include "dualcam/wire.hpp"

namespace dualcam {

/// Rows above a loss that are stretched over it.
inline constexpr int kSnippetRows = 5;

struct RepairResult {
  Frame frame;
  bool fully_lost = false;  // nothing survived; frame is all zero
};

/// Fills lost lines top to bottom. For a run of n lines starting at row r
/// (r >= 5) the five rows above are resized to 5 + n rows with the bicubic
/// resampler and written over rows [r - 5, r + n). Rows above a run may
/// already have been repaired by an earlier run. Runs starting in the top five
/// rows replicate the row above, or the first row below when r == 0.
/// Channels are repaired independently.
RepairResult repair_lost_lines(const Frame& frame, const LossMap& losses);

struct RepairStats {
  double psnr_before = 0.0;  // damaged vs reference
  double psnr_after = 0.0;   // repaired vs reference
  int lost_lines = 0;
};

/// PSNR uses peak 255 for 8-bit frames and 2 for normalised real frames.
RepairStats repair_report(const Frame& before, const Frame& after, const Frame& reference,
                          const std::optional<LossMap>& losses = std::nullopt);

}  // namespace dualcam

#endif  // DUALCAM_REPAIR_HPP_
