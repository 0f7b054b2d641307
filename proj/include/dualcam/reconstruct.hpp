// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_RECONSTRUCT_HPP_
#define DUALCAM_RECONSTRUCT_HPP_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dualcam/capture.hpp"
#include "dualcam/frame.hpp"
#include "dualcam/geometry.hpp"

namespace dualcam {

inline constexpr int kLrPad = 2;
inline constexpr int kKeyPad = 8;

/// Decoder input: one key-to-key window, perspective-corrected, normalised
/// and reflect-padded.
struct DecoderWindow {
  std::size_t window_index = 0;
  std::size_t start_index = 0;
  int key_interval = 15;
  int scale = 4;
  std::vector<Frame> lr;          // GRAY_NORM, padded by kLrPad
  Frame key_prev;                 // LAB_NORM, padded by kKeyPad
  std::optional<Frame> key_next;  // LAB_NORM, padded by kKeyPad
  bool forward_only = false;

  /// Padded output size: hr + 2 * kKeyPad.
  Resolution padded_hr() const;
};

/// A decoder turns a window into one padded SRGB8 frame per LR frame.
/// Outputs at key positions are replaced by the key frames.
class DecoderPlugin {
 public:
  virtual ~DecoderPlugin() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Frame> decode(const DecoderWindow& w) const = 0;
  /// False limits the harness to one window at a time.
  virtual bool concurrent_safe() const { return true; }
};

/// Bicubic luminance upsampling with a*b* copied from the temporally nearest
/// key frame. Ties go to key_prev; forward-only windows use key_prev only.
class BaselineDecoder final : public DecoderPlugin {
 public:
  std::string name() const override { return "baseline"; }
  std::vector<Frame> decode(const DecoderWindow& w) const override;
};

/// Upsampled grayscale replicated to three channels. Test stub.
class IdentityDecoder final : public DecoderPlugin {
 public:
  std::string name() const override { return "identity"; }
  std::vector<Frame> decode(const DecoderWindow& w) const override;
};

/// "baseline" or "identity"; anything else throws kConfig.
std::unique_ptr<DecoderPlugin> make_decoder(const std::string& name);

/// Normalises and pads a capture window for the decoder.
DecoderWindow prepare_window(const Window& w, const CaptureConfig& config);

/// Baseline decode of one capture window, unpadded SRGB8 at hr_res.
std::vector<Frame> baseline_decode(const Window& w, const CaptureConfig& config);

struct ReconstructOptions {
  Homography calib;  // LR plane -> key plane, in LR pixels
  int parallel = 1;
  std::uint32_t sync_tolerance_ms = 10;
};

/// Synchronises, corrects perspective, windows, decodes and stitches. Returns
/// one SRGB8 frame at hr_res per LR frame; key indices carry the key frames.
std::vector<Frame> reconstruct_sequence(const DualStream& stream, const DecoderPlugin& decoder,
                                        const ReconstructOptions& options = {});

/// Loads numbered PNGs and checks count and resolution (kData on mismatch).
std::vector<Frame> import_external_reconstruction(const std::filesystem::path& dir,
                                                  std::size_t expected_count, Resolution hr_res);

}  // namespace dualcam

#endif  // DUALCAM_RECONSTRUCT_HPP_
