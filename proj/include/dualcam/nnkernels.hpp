// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_NNKERNELS_HPP_
#define DUALCAM_NNKERNELS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace dualcam {

/// Real tensor laid out (height, width, channels), channels fastest.
class FeatureMap {
 public:
  FeatureMap() = default;
  FeatureMap(int width, int height, int channels, double fill = 0.0);

  int width() const { return w_; }
  int height() const { return h_; }
  int channels() const { return c_; }
  bool same_shape(const FeatureMap& o) const { return w_ == o.w_ && h_ == o.h_ && c_ == o.c_; }

  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * w_ + x) * c_;
  }
  double& at(int x, int y, int c) { return v_[offset(x, y) + c]; }
  double at(int x, int y, int c) const { return v_[offset(x, y) + c]; }
  /// The channel vector at one location.
  std::span<double> pixel(int x, int y) { return {v_.data() + offset(x, y), static_cast<std::size_t>(c_)}; }
  std::span<const double> pixel(int x, int y) const {
    return {v_.data() + offset(x, y), static_cast<std::size_t>(c_)};
  }
  std::span<double> values() { return v_; }
  std::span<const double> values() const { return v_; }

  friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

 private:
  int w_ = 0;
  int h_ = 0;
  int c_ = 0;
  std::vector<double> v_;
};

/// Pairwise (cascade) summation; the reduction order depends only on length.
double pairwise_sum(std::span<const double> v);
double pairwise_dot(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------
// Attention feature filter
//
// For each location the query f_t is scored against every level map f_l by a
// plain dot product over channels; a softmax over levels turns the scores
// into weights and the output is the weighted sum of the level vectors. The
// weight is shared by all channels at that location. Scores are not scaled
// by 1/sqrt(c). Reductions over levels are order independent, so permuting
// the levels permutes the weights and leaves the output bit-identical.

struct FeatureStack {
  std::vector<FeatureMap> levels;  // L maps, default L = 4
  FeatureMap query;

  /// Throws on L == 0 or any shape mismatch.
  void validate() const;
};

/// weights(x, y, l), each location sums to one.
class AttentionWeights {
 public:
  AttentionWeights() = default;
  AttentionWeights(int width, int height, int levels)
      : w_(width), h_(height), l_(levels), v_(static_cast<std::size_t>(width) * height * levels) {}

  int width() const { return w_; }
  int height() const { return h_; }
  int levels() const { return l_; }
  double& at(int x, int y, int l) { return v_[(static_cast<std::size_t>(y) * w_ + x) * l_ + l]; }
  double at(int x, int y, int l) const { return v_[(static_cast<std::size_t>(y) * w_ + x) * l_ + l]; }

 private:
  int w_ = 0, h_ = 0, l_ = 0;
  std::vector<double> v_;
};

struct AttentionOutput {
  FeatureMap output;
  AttentionWeights weights;
};

AttentionOutput attention_filter_forward(const FeatureStack& stack);

struct AttentionGradients {
  std::vector<FeatureMap> levels;
  FeatureMap query;
};

/// Gradients of <upstream, output> with respect to every level map and the
/// query, through both the weighted sum and the softmax scores.
AttentionGradients attention_filter_backward(const FeatureStack& stack, const FeatureMap& upstream);

// ---------------------------------------------------------------------------
// Convolution / residual block

/// 3x3 convolution, zero "same" padding. weight is [c_out][c_in][3][3].
struct Conv3x3 {
  int in_channels = 0;
  int out_channels = 0;
  std::vector<double> weight;
  std::vector<double> bias;

  static Conv3x3 zeros(int in_channels, int out_channels);
  double& w(int co, int ci, int ky, int kx) {
    return weight[((static_cast<std::size_t>(co) * in_channels + ci) * 3 + ky) * 3 + kx];
  }
};

FeatureMap conv3x3(const FeatureMap& x, const Conv3x3& conv);
FeatureMap relu(FeatureMap x);

struct ResidualBlockParams {
  Conv3x3 conv1;
  Conv3x3 conv2;
};

/// y = x + conv2(relu(conv1(x))).
FeatureMap residual_block_forward(const FeatureMap& x, const ResidualBlockParams& params);

// ---------------------------------------------------------------------------
// Sub-pixel upsampling
//
// Input channel q = c * r * r + dy * r + dx lands at output (x * r + dx,
// y * r + dy) in channel c. A 1x1x4 input (a, b, c, d) with r = 2 becomes
// [[a, b], [c, d]].

FeatureMap pixel_shuffle(const FeatureMap& x, int r);
FeatureMap pixel_unshuffle(const FeatureMap& x, int r);

// ---------------------------------------------------------------------------
// Charbonnier loss

enum class CharbonnierMode {
  kElement,  // mean over elements of sqrt(d^2 + eps^2)
  kFrame,    // sqrt(sum d^2 + eps^2) over the whole tensor
};

double charbonnier(std::span<const double> pred, std::span<const double> gt, double epsilon = 1e-3,
                   CharbonnierMode mode = CharbonnierMode::kElement);

// ---------------------------------------------------------------------------
// Tensor files: u32 LE rank, rank x u64 LE dims, then f64 LE values.

struct Tensor {
  std::vector<std::uint64_t> shape;
  std::vector<double> values;
};

std::vector<std::uint8_t> encode_tensor(const Tensor& t);
Tensor decode_tensor(std::span<const std::uint8_t> bytes);
void write_tensor(const std::filesystem::path& path, const Tensor& t);
Tensor read_tensor(const std::filesystem::path& path);
Tensor to_tensor(const FeatureMap& f);
FeatureMap from_tensor(const Tensor& t);

}  // namespace dualcam

#endif  // DUALCAM_NNKERNELS_HPP_
