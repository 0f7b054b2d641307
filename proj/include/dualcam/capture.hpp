// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_CAPTURE_HPP_
#define DUALCAM_CAPTURE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dualcam/frame.hpp"

namespace dualcam {

/// Sensor noise stand-in: Gaussian read noise per frame plus a static
/// per-pixel offset map. Off by default.
struct NoiseConfig {
  bool enabled = false;
  double read_noise_sigma = 0.0;     // gray levels
  double fixed_pattern_sigma = 0.0;  // gray levels
  std::uint64_t fixed_pattern_seed = 0;
};

struct CaptureConfig {
  double lr_fps = 15.0;
  int key_interval = 15;  // K
  int scale = 4;
  Resolution lr_res = kLrResolution;
  Resolution hr_res = kHrResolution;
  NoiseConfig noise;
  std::uint64_t seed = 0;
  int timestamp_jitter_ms = 0;  // 0 = nominal timestamps

  /// Throws kConfig on K < 1, fps <= 0, or hr_res != lr_res * scale.
  void validate() const;
  double key_fps() const { return lr_fps / key_interval; }
};

struct DualStream {
  std::vector<Frame> lr_frames;   // GRAY8, one per ground-truth frame
  std::vector<Frame> key_frames;  // SRGB8, at ground-truth indices 0, K, 2K, ...
  CaptureConfig config;

  bool is_key_index(std::size_t t) const { return t % config.key_interval == 0; }
  /// Position in key_frames of the key captured at ground-truth index t.
  std::optional<std::size_t> key_slot(std::size_t t) const;
};

/// Nominal capture time of frame t, rounded to the nearest millisecond and
/// wrapped to 32 bits.
std::uint32_t nominal_timestamp(std::uint64_t t, double fps);

/// Ground truth -> low-resolution grayscale: to_gray, antialiased bicubic
/// downsample, optional noise. Deterministic in (gt, config, frame_index).
Frame degrade(const Frame& gt, const CaptureConfig& config, std::uint64_t frame_index = 0);

/// Degrades every frame and keeps every K-th ground-truth frame as a key.
/// `parallel` > 1 degrades frames on worker threads with identical results.
DualStream sample_keyframes(std::span<const Frame> gt, const CaptureConfig& config,
                            int parallel = 1);

inline std::size_t expected_key_count(std::size_t n, int k) { return n == 0 ? 0 : (n - 1) / k + 1; }

struct Window {
  std::size_t window_index = 0;
  std::size_t start_index = 0;  // ground-truth index of lr.front()
  std::vector<Frame> lr;        // GRAY8, indices start_index .. start_index + lr.size() - 1
  Frame key_prev;               // SRGB8 at start_index
  std::optional<Frame> key_next;  // SRGB8 at start_index + K, absent for trailing windows
  bool partial = false;           // trailing window without a closing key
  bool single_key = false;        // the whole stream has fewer than two keys
};

/// Key-to-key windows of K low-resolution frames. A final key frame that
/// closes the last full window belongs to no window; frames after the last
/// key form a trailing partial window.
std::vector<Window> split_windows(const DualStream& stream);

/// |a - b| on the 32-bit millisecond circle.
std::uint32_t wrapped_distance(std::uint32_t a, std::uint32_t b);

struct SyncResult {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (key position, lr position)
  std::vector<std::size_t> unpaired_lr;
};

/// Pairs every key frame with the nearest low-resolution frame in time.
/// Throws kDesync if none lies within `tolerance_ms`.
SyncResult synchronize(std::span<const Frame> lr, std::span<const Frame> key,
                       std::uint32_t tolerance_ms = 10);

enum class SceneKind { kStatic, kPanning };

/// Smooth synthetic ground truth. kStatic repeats one frame; kPanning
/// translates a horizontally periodic color pattern by `pan_px` per frame.
std::vector<Frame> synthesize_scene(SceneKind kind, std::size_t frames, Resolution res,
                                    double pan_px = 4.0);
SceneKind parse_scene_kind(const std::string& name);

}  // namespace dualcam

#endif  // DUALCAM_CAPTURE_HPP_
