// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_FRAME_HPP_
#define DUALCAM_FRAME_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dualcam {

struct Resolution {
  int width = 0;
  int height = 0;

  friend bool operator==(const Resolution&, const Resolution&) = default;
  std::size_t area() const { return static_cast<std::size_t>(width) * height; }
};

inline constexpr Resolution kLrResolution{160, 120};
inline constexpr Resolution kHrResolution{640, 480};

enum class ColorSpace : std::uint8_t {
  kSrgb8,     // 3 x 8-bit sRGB
  kLabNorm,   // 3 x real CIELAB, each channel affinely mapped to [-1, 1]
  kGray8,     // 1 x 8-bit
  kGrayNorm,  // 1 x real in [-1, 1]
};

enum class StreamKind : std::uint8_t { kLr, kKey, kGt };

const char* to_string(ColorSpace cs) noexcept;
const char* to_string(StreamKind s) noexcept;

inline bool is_8bit(ColorSpace cs) {
  return cs == ColorSpace::kSrgb8 || cs == ColorSpace::kGray8;
}
int channels_of(ColorSpace cs);

/// Rounds half away from zero and clamps to [0, 255].
std::uint8_t to_u8(double v);

/// Row-major, channel-interleaved image. 8-bit colorspaces keep their samples
/// as bytes, real colorspaces as doubles; `at`/`set` work for both.
class Frame {
 public:
  Frame() = default;
  Frame(Resolution res, ColorSpace cs);

  int width() const { return res_.width; }
  int height() const { return res_.height; }
  Resolution resolution() const { return res_; }
  int channels() const { return channels_; }
  ColorSpace colorspace() const { return cs_; }
  bool is_8bit() const { return dualcam::is_8bit(cs_); }
  bool empty() const { return channels_ == 0; }
  std::size_t sample_count() const { return res_.area() * channels_; }

  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * res_.width + x) * channels_ + c;
  }
  double at(int x, int y, int c = 0) const {
    return is_8bit() ? bytes_[index(x, y, c)] : reals_[index(x, y, c)];
  }
  /// 8-bit frames round and clamp the value.
  void set(int x, int y, int c, double v) {
    if (is_8bit()) {
      bytes_[index(x, y, c)] = to_u8(v);
    } else {
      reals_[index(x, y, c)] = v;
    }
  }

  std::span<std::uint8_t> bytes() { return bytes_; }
  std::span<const std::uint8_t> bytes() const { return bytes_; }
  std::span<double> reals() { return reals_; }
  std::span<const double> reals() const { return reals_; }

  /// Copies metadata (timestamp, stream, index) from another frame.
  void copy_meta_from(const Frame& other);

  /// Bit-exact comparison of geometry, colorspace and samples (metadata ignored).
  bool same_pixels(const Frame& other) const;

  std::uint32_t timestamp_ms = 0;
  StreamKind stream = StreamKind::kGt;
  std::uint64_t frame_index = 0;

 private:
  Resolution res_{};
  int channels_ = 0;
  ColorSpace cs_ = ColorSpace::kGray8;
  std::vector<std::uint8_t> bytes_;
  std::vector<double> reals_;
};

/// Single channel c of a frame as a real-valued kGrayNorm-tagged frame
/// (values are copied verbatim, not rescaled).
Frame extract_channel(const Frame& f, int c);

}  // namespace dualcam

#endif  // DUALCAM_FRAME_HPP_
