// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/capture.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "dualcam/color.hpp"
#include "dualcam/error.hpp"
#include "dualcam/resample.hpp"
#include "dualcam/rng.hpp"

namespace dualcam {

void CaptureConfig::validate() const {
  require(key_interval >= 1, "key interval must be >= 1", ErrorKind::kConfig);
  require(lr_fps > 0.0, "frame rate must be positive", ErrorKind::kConfig);
  require(scale >= 1, "scale must be >= 1", ErrorKind::kConfig);
  require(lr_res.width > 0 && lr_res.height > 0, "bad low-resolution size", ErrorKind::kConfig);
  require(hr_res.width == lr_res.width * scale && hr_res.height == lr_res.height * scale,
          "high resolution must equal low resolution times scale", ErrorKind::kConfig);
  require(noise.read_noise_sigma >= 0.0 && noise.fixed_pattern_sigma >= 0.0,
          "noise sigma must be >= 0", ErrorKind::kConfig);
  require(timestamp_jitter_ms >= 0 && 2 * timestamp_jitter_ms < 1000.0 / lr_fps,
          "timestamp jitter must be below half the frame period", ErrorKind::kConfig);
}

std::optional<std::size_t> DualStream::key_slot(std::size_t t) const {
  if (!is_key_index(t)) return std::nullopt;
  const std::size_t slot = t / config.key_interval;
  if (slot >= key_frames.size()) return std::nullopt;
  return slot;
}

std::uint32_t nominal_timestamp(std::uint64_t t, double fps) {
  const double ms = std::round(static_cast<double>(t) * 1000.0 / fps);
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(ms));
}

Frame degrade(const Frame& gt, const CaptureConfig& config, std::uint64_t frame_index) {
  require(gt.colorspace() == ColorSpace::kSrgb8, "degrade: ground truth must be SRGB8");
  require(gt.resolution() == config.hr_res,
          "degrade: ground truth is " + std::to_string(gt.width()) + "x" +
              std::to_string(gt.height()) + ", expected " + std::to_string(config.hr_res.width) +
              "x" + std::to_string(config.hr_res.height));
  Frame lr = resample_bicubic(to_gray(gt), config.lr_res, /*antialias=*/true);
  lr.copy_meta_from(gt);
  lr.stream = StreamKind::kLr;

  const NoiseConfig& nc = config.noise;
  if (nc.enabled && (nc.read_noise_sigma > 0.0 || nc.fixed_pattern_sigma > 0.0)) {
    Rng read(mix_seed(config.seed, frame_index));
    Rng pattern(mix_seed(nc.fixed_pattern_seed, 0xf1bedULL));
    auto px = lr.bytes();
    for (auto& v : px) {
      const double offset = nc.fixed_pattern_sigma * pattern.normal();
      v = to_u8(v + offset + nc.read_noise_sigma * read.normal());
    }
  }
  return lr;
}

DualStream sample_keyframes(std::span<const Frame> gt, const CaptureConfig& config,
                            int parallel) {
  config.validate();
  require(!gt.empty(), "sample_keyframes: empty ground-truth sequence");

  DualStream out;
  out.config = config;
  out.lr_frames.resize(gt.size());

  std::vector<std::uint32_t> stamps(gt.size());
  Rng jitter(mix_seed(config.seed, 0x7173ULL));
  for (std::size_t t = 0; t < gt.size(); ++t) {
    std::int64_t ts = nominal_timestamp(t, config.lr_fps);
    if (config.timestamp_jitter_ms > 0)
      ts += static_cast<std::int64_t>(jitter.below(2 * config.timestamp_jitter_ms + 1)) -
            config.timestamp_jitter_ms;
    stamps[t] = static_cast<std::uint32_t>(ts);
  }

  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t t = begin; t < gt.size(); t += step) {
      Frame lr = degrade(gt[t], config, t);
      lr.frame_index = t;
      lr.timestamp_ms = stamps[t];
      out.lr_frames[t] = std::move(lr);
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, parallel));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
  }

  for (std::size_t t = 0; t < gt.size(); t += config.key_interval) {
    Frame key = gt[t];
    key.stream = StreamKind::kKey;
    key.frame_index = t;
    key.timestamp_ms = stamps[t];
    out.key_frames.push_back(std::move(key));
  }
  return out;
}

std::vector<Window> split_windows(const DualStream& stream) {
  const auto k = static_cast<std::size_t>(stream.config.key_interval);
  const std::size_t n = stream.lr_frames.size();
  require(!stream.key_frames.empty(), "split_windows: stream has no key frames");

  std::vector<Window> out;
  if (stream.key_frames.size() < 2) {
    Window w;
    w.lr = stream.lr_frames;
    w.key_prev = stream.key_frames.front();
    w.partial = true;
    w.single_key = true;
    out.push_back(std::move(w));
    return out;
  }
  const std::size_t full = stream.key_frames.size() - 1;
  for (std::size_t i = 0; i < full; ++i) {
    Window w;
    w.window_index = i;
    w.start_index = i * k;
    w.lr.assign(stream.lr_frames.begin() + i * k, stream.lr_frames.begin() + (i + 1) * k);
    w.key_prev = stream.key_frames[i];
    w.key_next = stream.key_frames[i + 1];
    out.push_back(std::move(w));
  }
  const std::size_t last_key = full * k;
  if (n > last_key + 1) {
    Window w;
    w.window_index = full;
    w.start_index = last_key;
    w.lr.assign(stream.lr_frames.begin() + last_key, stream.lr_frames.end());
    w.key_prev = stream.key_frames.back();
    w.partial = true;
    out.push_back(std::move(w));
  }
  return out;
}

std::uint32_t wrapped_distance(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t d = a - b;
  return std::min<std::uint32_t>(d, 0u - d);
}

SyncResult synchronize(std::span<const Frame> lr, std::span<const Frame> key,
                       std::uint32_t tolerance_ms) {
  SyncResult result;
  std::vector<bool> used(lr.size(), false);
  for (std::size_t ki = 0; ki < key.size(); ++ki) {
    std::size_t best = lr.size();
    std::uint32_t best_d = 0;
    for (std::size_t li = 0; li < lr.size(); ++li) {
      const std::uint32_t d = wrapped_distance(key[ki].timestamp_ms, lr[li].timestamp_ms);
      if (best == lr.size() || d < best_d) {
        best = li;
        best_d = d;
      }
    }
    if (best == lr.size() || best_d > tolerance_ms)
      fail(ErrorKind::kDesync,
           "key frame " + std::to_string(key[ki].frame_index) + " (t=" +
               std::to_string(key[ki].timestamp_ms) + " ms) has no low-resolution frame within " +
               std::to_string(tolerance_ms) + " ms");
    used[best] = true;
    result.pairs.emplace_back(ki, best);
  }
  for (std::size_t li = 0; li < lr.size(); ++li)
    if (!used[li]) result.unpaired_lr.push_back(li);
  return result;
}

}  // namespace dualcam
