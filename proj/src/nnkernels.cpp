// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/nnkernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "dualcam/error.hpp"
#include "dualcam/image_io.hpp"

namespace dualcam {

FeatureMap::FeatureMap(int width, int height, int channels, double fill)
    : w_(width), h_(height), c_(channels) {
  require(width > 0 && height > 0 && channels > 0, "feature map dimensions must be positive");
  v_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double pairwise_dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  }
  const std::size_t half = a.size() / 2;
  return pairwise_dot(a.first(half), b.first(half)) +
         pairwise_dot(a.subspan(half), b.subspan(half));
}

void FeatureStack::validate() const {
  require(!levels.empty(), "attention: feature stack needs at least one level");
  for (std::size_t l = 0; l < levels.size(); ++l)
    require(levels[l].same_shape(query),
            "attention: level " + std::to_string(l) + " shape differs from the query map");
}

namespace {

// Sum over levels that does not depend on the order of the levels.
double level_sum(std::vector<double>& scratch, std::span<const double> terms) {
  scratch.assign(terms.begin(), terms.end());
  std::sort(scratch.begin(), scratch.end());
  return pairwise_sum(scratch);
}

// Softmax over the per-level scores at one location.
void softmax_scores(const FeatureStack& s, int x, int y, std::vector<double>& scores,
                    std::vector<double>& weights, std::vector<double>& scratch) {
  const auto q = s.query.pixel(x, y);
  const std::size_t n = s.levels.size();
  double m = -INFINITY;
  for (std::size_t l = 0; l < n; ++l) {
    scores[l] = pairwise_dot(s.levels[l].pixel(x, y), q);
    m = std::max(m, scores[l]);
  }
  for (std::size_t l = 0; l < n; ++l) weights[l] = std::exp(scores[l] - m);
  const double z = level_sum(scratch, weights);
  for (double& w : weights) w /= z;
}

}  // namespace

AttentionOutput attention_filter_forward(const FeatureStack& stack) {
  stack.validate();
  const FeatureMap& q = stack.query;
  const std::size_t n = stack.levels.size();
  AttentionOutput out{FeatureMap(q.width(), q.height(), q.channels()),
                      AttentionWeights(q.width(), q.height(), static_cast<int>(n))};
  std::vector<double> scores(n), weights(n), terms(n), scratch;
  for (int y = 0; y < q.height(); ++y) {
    for (int x = 0; x < q.width(); ++x) {
      softmax_scores(stack, x, y, scores, weights, scratch);
      for (std::size_t l = 0; l < n; ++l) out.weights.at(x, y, static_cast<int>(l)) = weights[l];
      auto dst = out.output.pixel(x, y);
      for (int c = 0; c < q.channels(); ++c) {
        for (std::size_t l = 0; l < n; ++l) terms[l] = weights[l] * stack.levels[l].at(x, y, c);
        dst[c] = level_sum(scratch, terms);
      }
    }
  }
  return out;
}

AttentionGradients attention_filter_backward(const FeatureStack& stack, const FeatureMap& upstream) {
  stack.validate();
  require(upstream.same_shape(stack.query), "attention backward: upstream gradient shape mismatch");
  const FeatureMap& q = stack.query;
  const std::size_t n = stack.levels.size();
  const int ch = q.channels();

  AttentionGradients g;
  g.levels.assign(n, FeatureMap(q.width(), q.height(), ch));
  g.query = FeatureMap(q.width(), q.height(), ch);

  std::vector<double> scores(n), weights(n), grad_w(n), grad_s(n), terms(n), scratch;
  for (int y = 0; y < q.height(); ++y) {
    for (int x = 0; x < q.width(); ++x) {
      softmax_scores(stack, x, y, scores, weights, scratch);
      const auto up = upstream.pixel(x, y);
      const auto qv = q.pixel(x, y);
      for (std::size_t l = 0; l < n; ++l) {
        grad_w[l] = pairwise_dot(up, stack.levels[l].pixel(x, y));
        terms[l] = weights[l] * grad_w[l];
      }
      const double mean_grad = level_sum(scratch, terms);
      for (std::size_t l = 0; l < n; ++l) grad_s[l] = weights[l] * (grad_w[l] - mean_grad);

      for (std::size_t l = 0; l < n; ++l) {
        auto dst = g.levels[l].pixel(x, y);
        for (int c = 0; c < ch; ++c) dst[c] = weights[l] * up[c] + grad_s[l] * qv[c];
      }
      auto dq = g.query.pixel(x, y);
      for (int c = 0; c < ch; ++c) {
        for (std::size_t l = 0; l < n; ++l) terms[l] = grad_s[l] * stack.levels[l].at(x, y, c);
        dq[c] = level_sum(scratch, terms);
      }
    }
  }
  return g;
}

Conv3x3 Conv3x3::zeros(int in_channels, int out_channels) {
  Conv3x3 c;
  c.in_channels = in_channels;
  c.out_channels = out_channels;
  c.weight.assign(static_cast<std::size_t>(out_channels) * in_channels * 9, 0.0);
  c.bias.assign(out_channels, 0.0);
  return c;
}

FeatureMap conv3x3(const FeatureMap& x, const Conv3x3& conv) {
  require(conv.in_channels == x.channels(),
          "conv3x3: weights expect " + std::to_string(conv.in_channels) +
              " input channels, got " + std::to_string(x.channels()));
  require(conv.out_channels > 0 &&
              conv.weight.size() == static_cast<std::size_t>(conv.out_channels) * conv.in_channels * 9 &&
              conv.bias.size() == static_cast<std::size_t>(conv.out_channels),
          "conv3x3: malformed parameter tensors");
  FeatureMap y(x.width(), x.height(), conv.out_channels);
  for (int py = 0; py < x.height(); ++py) {
    for (int px = 0; px < x.width(); ++px) {
      for (int co = 0; co < conv.out_channels; ++co) {
        double acc = conv.bias[co];
        for (int ky = 0; ky < 3; ++ky) {
          const int sy = py + ky - 1;
          if (sy < 0 || sy >= x.height()) continue;
          for (int kx = 0; kx < 3; ++kx) {
            const int sx = px + kx - 1;
            if (sx < 0 || sx >= x.width()) continue;
            const auto in = x.pixel(sx, sy);
            const double* w = &conv.weight[(static_cast<std::size_t>(co) * conv.in_channels) * 9 + ky * 3 + kx];
            for (int ci = 0; ci < conv.in_channels; ++ci) acc += w[ci * 9] * in[ci];
          }
        }
        y.at(px, py, co) = acc;
      }
    }
  }
  return y;
}

FeatureMap relu(FeatureMap x) {
  for (double& v : x.values()) v = std::max(v, 0.0);
  return x;
}

FeatureMap residual_block_forward(const FeatureMap& x, const ResidualBlockParams& params) {
  require(params.conv1.in_channels == x.channels() && params.conv2.out_channels == x.channels(),
          "residual block: channel mismatch with weights");
  FeatureMap y = conv3x3(relu(conv3x3(x, params.conv1)), params.conv2);
  auto yv = y.values();
  auto xv = x.values();
  for (std::size_t i = 0; i < yv.size(); ++i) yv[i] += xv[i];
  return y;
}

FeatureMap pixel_shuffle(const FeatureMap& x, int r) {
  require(r >= 1, "pixel_shuffle: factor must be >= 1");
  require(x.channels() % (r * r) == 0,
          "pixel_shuffle: " + std::to_string(x.channels()) + " channels not divisible by " +
              std::to_string(r * r));
  const int co = x.channels() / (r * r);
  FeatureMap y(x.width() * r, x.height() * r, co);
  for (int py = 0; py < x.height(); ++py)
    for (int px = 0; px < x.width(); ++px)
      for (int c = 0; c < co; ++c)
        for (int dy = 0; dy < r; ++dy)
          for (int dx = 0; dx < r; ++dx)
            y.at(px * r + dx, py * r + dy, c) = x.at(px, py, (c * r + dy) * r + dx);
  return y;
}

FeatureMap pixel_unshuffle(const FeatureMap& x, int r) {
  require(r >= 1, "pixel_unshuffle: factor must be >= 1");
  require(x.width() % r == 0 && x.height() % r == 0,
          "pixel_unshuffle: spatial size not divisible by factor");
  const int co = x.channels();
  FeatureMap y(x.width() / r, x.height() / r, co * r * r);
  for (int py = 0; py < y.height(); ++py)
    for (int px = 0; px < y.width(); ++px)
      for (int c = 0; c < co; ++c)
        for (int dy = 0; dy < r; ++dy)
          for (int dx = 0; dx < r; ++dx)
            y.at(px, py, (c * r + dy) * r + dx) = x.at(px * r + dx, py * r + dy, c);
  return y;
}

double charbonnier(std::span<const double> pred, std::span<const double> gt, double epsilon,
                   CharbonnierMode mode) {
  require(pred.size() == gt.size() && !pred.empty(), "charbonnier: shape mismatch");
  require(epsilon > 0.0, "charbonnier: epsilon must be positive");
  const double eps2 = epsilon * epsilon;
  std::vector<double> terms(pred.size());
  if (mode == CharbonnierMode::kFrame) {
    for (std::size_t i = 0; i < pred.size(); ++i) {
      const double d = pred[i] - gt[i];
      terms[i] = d * d;
    }
    return std::sqrt(pairwise_sum(terms) + eps2);
  }
  // Accumulate the excess over epsilon so identical inputs give exactly epsilon.
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - gt[i];
    terms[i] = std::sqrt(d * d + eps2) - epsilon;
  }
  return epsilon + pairwise_sum(terms) / static_cast<double>(pred.size());
}

std::vector<std::uint8_t> encode_tensor(const Tensor& t) {
  std::size_t n = 1;
  for (auto d : t.shape) n *= d;
  require(n == t.values.size(), "tensor: shape does not match value count");
  std::vector<std::uint8_t> out;
  auto put = [&out](std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  put(t.shape.size(), 4);
  for (auto d : t.shape) put(d, 8);
  for (double v : t.values) put(std::bit_cast<std::uint64_t>(v), 8);
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  auto get = [&](int n) {
    if (pos + n > bytes.size()) fail(ErrorKind::kData, "tensor: truncated file");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(bytes[pos + i]) << (8 * i);
    pos += n;
    return v;
  };
  Tensor t;
  const auto rank = get(4);
  if (rank > 8) fail(ErrorKind::kData, "tensor: implausible rank");
  std::uint64_t n = 1;
  for (std::uint64_t i = 0; i < rank; ++i) {
    t.shape.push_back(get(8));
    n *= t.shape.back();
  }
  if (bytes.size() - pos != n * 8) fail(ErrorKind::kData, "tensor: value count does not match shape");
  t.values.resize(n);
  for (auto& v : t.values) v = std::bit_cast<double>(get(8));
  return t;
}

void write_tensor(const std::filesystem::path& path, const Tensor& t) {
  write_file(path, encode_tensor(t));
}

Tensor read_tensor(const std::filesystem::path& path) { return decode_tensor(read_file(path)); }

Tensor to_tensor(const FeatureMap& f) {
  Tensor t;
  t.shape = {static_cast<std::uint64_t>(f.height()), static_cast<std::uint64_t>(f.width()),
             static_cast<std::uint64_t>(f.channels())};
  t.values.assign(f.values().begin(), f.values().end());
  return t;
}

FeatureMap from_tensor(const Tensor& t) {
  require(t.shape.size() == 3, "tensor: feature maps are rank 3 (h, w, c)", ErrorKind::kData);
  FeatureMap f(static_cast<int>(t.shape[1]), static_cast<int>(t.shape[0]),
               static_cast<int>(t.shape[2]));
  std::copy(t.values.begin(), t.values.end(), f.values().begin());
  return f;
}

}  // namespace dualcam
