// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/reconstruct.hpp"

#include <exception>
#include <functional>
#include <thread>

#include "dualcam/color.hpp"
#include "dualcam/error.hpp"
#include "dualcam/frame_memory.hpp"
#include "dualcam/image_io.hpp"
#include "dualcam/pad.hpp"
#include "dualcam/resample.hpp"

namespace dualcam {
namespace {

// State channels: a*, b* (normalised) and an "initialised" flag.
class ColorCarryStep final : public StepDecoder {
 public:
  ColorCarryStep(Resolution padded_hr) : hr_(padded_hr) {}

  StepOutput step(const Frame& lr, const Frame& prev_out, const FeatureMap& prev_state) override {
    FeatureMap state = prev_state;
    if (state.channels() != 3 || state.at(0, 0, 2) == 0.0) {
      require(prev_out.colorspace() == ColorSpace::kLabNorm && prev_out.resolution() == hr_,
              "color carry needs a LAB_NORM predecessor", ErrorKind::kDecoder);
      state = FeatureMap(hr_.width, hr_.height, 3);
      for (int y = 0; y < hr_.height; ++y)
        for (int x = 0; x < hr_.width; ++x) {
          state.at(x, y, 0) = prev_out.at(x, y, 1);
          state.at(x, y, 1) = prev_out.at(x, y, 2);
          state.at(x, y, 2) = 1.0;
        }
    }
    const Frame luma = resample_bicubic(lr, hr_, false);
    Frame out(hr_, ColorSpace::kLabNorm);
    out.copy_meta_from(lr);
    for (int y = 0; y < hr_.height; ++y)
      for (int x = 0; x < hr_.width; ++x) {
        out.set(x, y, 0, luma.at(x, y, 0));
        out.set(x, y, 1, state.at(x, y, 0));
        out.set(x, y, 2, state.at(x, y, 1));
      }
    return {std::move(out), std::move(state)};
  }

 private:
  Resolution hr_;
};

Frame padded_stub(Resolution res) { return Frame(res, ColorSpace::kGrayNorm); }

void check_window(const DecoderWindow& w) {
  require(!w.lr.empty(), "decoder window has no frames", ErrorKind::kDecoder);
  require(!w.key_prev.empty() || w.key_next.has_value(), "decoder window has no key frame",
          ErrorKind::kDecoder);
}

}  // namespace

Resolution DecoderWindow::padded_hr() const {
  const Frame& l = lr.front();
  return {(l.width() - 2 * kLrPad) * scale + 2 * kKeyPad,
          (l.height() - 2 * kLrPad) * scale + 2 * kKeyPad};
}

std::vector<Frame> BaselineDecoder::decode(const DecoderWindow& w) const {
  check_window(w);
  const Resolution hr = w.padded_hr();
  const std::size_t n = w.lr.size();
  const auto k = static_cast<std::size_t>(w.key_interval);
  const bool use_next = w.key_next.has_value() && !w.forward_only;
  std::vector<Frame> lab(n);

  // Forward from key_prev covers offsets d with d <= K - d.
  std::size_t forward_count = n;
  if (use_next) forward_count = std::min(n, k / 2 + 1);
  if (!w.key_prev.empty()) {
    ColorCarryStep step(hr);
    auto out = run_frame_memory(
        std::span<const Frame>(w.lr.data(), forward_count),
        [&](std::size_t i) { return i == 0 ? &w.key_prev : nullptr; }, step, FeatureMap());
    for (std::size_t i = 0; i < forward_count; ++i) lab[i] = std::move(out[i]);
  } else {
    forward_count = 0;
  }

  // Backward from key_next covers the rest, stepping K, K-1, ...
  if (forward_count < n) {
    require(w.key_next.has_value(), "decoder window has no key frame for its tail",
            ErrorKind::kDecoder);
    std::vector<Frame> seq;
    seq.push_back(padded_stub(w.lr.front().resolution()));
    for (std::size_t d = k; d-- > forward_count;)
      seq.push_back(d < n ? w.lr[d] : padded_stub(w.lr.front().resolution()));
    ColorCarryStep step(hr);
    auto out = run_frame_memory(
        seq, [&](std::size_t i) { return i == 0 ? &*w.key_next : nullptr; }, step, FeatureMap());
    for (std::size_t i = 1; i < out.size(); ++i) {
      const std::size_t d = k - i;
      if (d < n && d >= forward_count) lab[d] = std::move(out[i]);
    }
  }

  std::vector<Frame> rgb;
  rgb.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Frame f = lab_to_rgb(lab[i]);
    f.copy_meta_from(w.lr[i]);
    rgb.push_back(std::move(f));
  }
  return rgb;
}

std::vector<Frame> IdentityDecoder::decode(const DecoderWindow& w) const {
  check_window(w);
  const Resolution hr = w.padded_hr();
  std::vector<Frame> out;
  out.reserve(w.lr.size());
  for (const Frame& l : w.lr) {
    const Frame g = norm_to_gray(resample_bicubic(l, hr, false));
    Frame f(hr, ColorSpace::kSrgb8);
    f.copy_meta_from(l);
    for (int y = 0; y < hr.height; ++y)
      for (int x = 0; x < hr.width; ++x)
        for (int c = 0; c < 3; ++c) f.set(x, y, c, g.at(x, y, 0));
    out.push_back(std::move(f));
  }
  return out;
}

std::unique_ptr<DecoderPlugin> make_decoder(const std::string& name) {
  if (name == "baseline") return std::make_unique<BaselineDecoder>();
  if (name == "identity") return std::make_unique<IdentityDecoder>();
  fail(ErrorKind::kConfig, "unknown decoder '" + name + "' (expected baseline or identity)");
}

DecoderWindow prepare_window(const Window& w, const CaptureConfig& config) {
  DecoderWindow d;
  d.window_index = w.window_index;
  d.start_index = w.start_index;
  d.key_interval = config.key_interval;
  d.scale = config.scale;
  d.forward_only = w.partial;
  d.lr.reserve(w.lr.size());
  for (const Frame& f : w.lr) d.lr.push_back(reflect_pad(gray_to_norm(f), kLrPad));
  d.key_prev = reflect_pad(rgb_to_lab(w.key_prev), kKeyPad);
  if (w.key_next) d.key_next = reflect_pad(rgb_to_lab(*w.key_next), kKeyPad);
  return d;
}

std::vector<Frame> baseline_decode(const Window& w, const CaptureConfig& config) {
  auto padded = BaselineDecoder().decode(prepare_window(w, config));
  std::vector<Frame> out;
  out.reserve(padded.size());
  for (const Frame& f : padded) out.push_back(crop_pad(f, kKeyPad));
  return out;
}

std::vector<Frame> reconstruct_sequence(const DualStream& stream, const DecoderPlugin& decoder,
                                        const ReconstructOptions& options) {
  const CaptureConfig& cfg = stream.config;
  cfg.validate();
  require(!stream.lr_frames.empty(), "reconstruct: empty low-resolution stream", ErrorKind::kData);
  require(stream.key_frames.size() == expected_key_count(stream.lr_frames.size(), cfg.key_interval),
          "reconstruct: expected " +
              std::to_string(expected_key_count(stream.lr_frames.size(), cfg.key_interval)) +
              " key frames, got " + std::to_string(stream.key_frames.size()),
          ErrorKind::kData);

  const SyncResult sync = synchronize(stream.lr_frames, stream.key_frames, options.sync_tolerance_ms);
  for (const auto& [ki, li] : sync.pairs)
    if (li != ki * cfg.key_interval)
      fail(ErrorKind::kDesync, "key frame " + std::to_string(ki * cfg.key_interval) +
                                   " pairs with low-resolution frame " + std::to_string(li));

  DualStream corrected;
  const DualStream* src = &stream;
  if (!options.calib.is_identity()) {
    corrected.config = cfg;
    corrected.key_frames = stream.key_frames;
    for (const Frame& f : stream.lr_frames) {
      Frame w = warp_frame(f, options.calib, f.resolution()).frame;
      w.copy_meta_from(f);
      corrected.lr_frames.push_back(std::move(w));
    }
    src = &corrected;
  }

  const auto windows = split_windows(*src);
  std::vector<std::vector<Frame>> decoded(windows.size());
  std::vector<std::exception_ptr> errors(windows.size());
  auto run = [&](std::size_t i) {
    const Window& w = windows[i];
    try {
      auto out = decoder.decode(prepare_window(w, cfg));
      if (out.size() != w.lr.size())
        fail(ErrorKind::kDecoder, "returned " + std::to_string(out.size()) + " frames for " +
                                      std::to_string(w.lr.size()) + " inputs");
      const Resolution want{cfg.hr_res.width + 2 * kKeyPad, cfg.hr_res.height + 2 * kKeyPad};
      for (std::size_t j = 0; j < out.size(); ++j) {
        if (out[j].colorspace() != ColorSpace::kSrgb8 || out[j].resolution() != want)
          fail(ErrorKind::kDecoder, "frame " + std::to_string(w.start_index + j) +
                                        " is not a padded SRGB8 frame");
        out[j] = crop_pad(out[j], kKeyPad);
      }
      decoded[i] = std::move(out);
    } catch (const std::exception& e) {
      errors[i] = std::make_exception_ptr(
          Error(ErrorKind::kDecoder, "decoder '" + decoder.name() + "' failed on window " +
                                         std::to_string(w.window_index) + ": " + e.what()));
    }
  };
  const std::size_t workers =
      decoder.concurrent_safe() ? static_cast<std::size_t>(std::max(1, options.parallel)) : 1;
  if (workers == 1) {
    for (std::size_t i = 0; i < windows.size(); ++i) run(i);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < windows.size(); i += workers) run(i);
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  const std::size_t n = stream.lr_frames.size();
  std::vector<Frame> out(n);
  for (std::size_t i = 0; i < windows.size(); ++i)
    for (std::size_t j = 0; j < decoded[i].size(); ++j)
      out[windows[i].start_index + j] = std::move(decoded[i][j]);
  for (std::size_t t = 0; t < n; ++t) {
    if (auto slot = stream.key_slot(t)) out[t] = stream.key_frames[*slot];
    require(!out[t].empty(), "reconstruct: frame " + std::to_string(t) + " was not produced",
            ErrorKind::kDecoder);
    out[t].frame_index = t;
    out[t].timestamp_ms = stream.lr_frames[t].timestamp_ms;
    out[t].stream = StreamKind::kGt;
  }
  return out;
}

std::vector<Frame> import_external_reconstruction(const std::filesystem::path& dir,
                                                  std::size_t expected_count, Resolution hr_res) {
  require(std::filesystem::is_directory(dir), "not a directory: " + dir.string(), ErrorKind::kData);
  const auto files = list_pngs(dir);
  if (files.size() != expected_count)
    fail(ErrorKind::kData, "external reconstruction in " + dir.string() + ": expected " +
                               std::to_string(expected_count) + " frames, found " +
                               std::to_string(files.size()));
  std::vector<Frame> out;
  out.reserve(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    Frame f = read_png(files[i]);
    if (f.colorspace() != ColorSpace::kSrgb8 || f.resolution() != hr_res)
      fail(ErrorKind::kData, files[i].filename().string() + ": expected " +
                                 std::to_string(hr_res.width) + "x" + std::to_string(hr_res.height) +
                                 " RGB, got " + std::to_string(f.width()) + "x" +
                                 std::to_string(f.height()) + " " + to_string(f.colorspace()));
    f.frame_index = i;
    f.stream = StreamKind::kGt;
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace dualcam
