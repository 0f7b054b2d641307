// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/repair.hpp"

#include <algorithm>
#include <vector>

#include "dualcam/error.hpp"
#include "dualcam/metrics.hpp"
#include "dualcam/resample.hpp"

namespace dualcam {
namespace {

// Validates the map and merges touching runs so every run is maximal.
std::vector<std::pair<int, int>> normalized_runs(const LossMap& losses, int height) {
  std::vector<std::pair<int, int>> runs;
  int prev_end = 0;
  for (const auto& [start, count] : losses) {
    require(start >= 0 && count > 0 && start + count <= height,
            "repair: loss run " + std::to_string(start) + "+" + std::to_string(count) +
                " outside a frame of height " + std::to_string(height));
    require(runs.empty() || start >= prev_end, "repair: overlapping loss runs");
    if (!runs.empty() && start == prev_end) {
      runs.back().second += count;
    } else {
      runs.emplace_back(start, count);
    }
    prev_end = start + count;
  }
  return runs;
}

void copy_row(Frame& f, int from, int to) {
  for (int x = 0; x < f.width(); ++x)
    for (int c = 0; c < f.channels(); ++c) f.set(x, to, c, f.at(x, from, c));
}

}  // namespace

RepairResult repair_lost_lines(const Frame& frame, const LossMap& losses) {
  require(!frame.empty(), "repair: empty frame");
  const int h = frame.height();
  const auto runs = normalized_runs(losses, h);
  RepairResult result{frame, false};
  Frame& out = result.frame;
  if (runs.empty()) return result;

  if (runs.size() == 1 && runs[0].first == 0 && runs[0].second == h) {
    Frame blank(frame.resolution(), frame.colorspace());
    blank.copy_meta_from(frame);
    result.frame = std::move(blank);
    result.fully_lost = true;
    return result;
  }

  std::vector<double> strip(static_cast<std::size_t>(kSnippetRows));
  for (const auto& [r, n] : runs) {
    if (r < kSnippetRows) {
      const int src = r > 0 ? r - 1 : r + n;
      for (int y = r; y < r + n; ++y) copy_row(out, src, y);
      continue;
    }
    const auto taps = axis_taps(kSnippetRows, kSnippetRows + n, /*antialias=*/false);
    const int top = r - kSnippetRows;
    for (int x = 0; x < out.width(); ++x) {
      for (int c = 0; c < out.channels(); ++c) {
        for (int i = 0; i < kSnippetRows; ++i) strip[i] = out.at(x, top + i, c);
        for (int i = 0; i < kSnippetRows + n; ++i) {
          double acc = 0.0;
          for (std::size_t k = 0; k < taps[i].index.size(); ++k)
            acc += taps[i].weight[k] * strip[taps[i].index[k]];
          out.set(x, top + i, c, acc);
        }
      }
    }
  }
  return result;
}

RepairStats repair_report(const Frame& before, const Frame& after, const Frame& reference,
                          const std::optional<LossMap>& losses) {
  require(before.resolution() == reference.resolution() &&
              after.resolution() == reference.resolution() &&
              before.channels() == reference.channels() &&
              after.channels() == reference.channels(),
          "repair_report: frames differ in shape");
  const double peak = reference.is_8bit() ? 255.0 : 2.0;
  RepairStats s;
  s.psnr_before = psnr(before, reference, peak);
  s.psnr_after = psnr(after, reference, peak);
  s.lost_lines = losses ? lost_line_count(*losses) : 0;
  return s;
}

}  // namespace dualcam
