// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/kernel_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dualcam/rng.hpp"

namespace dualcam {
namespace {

FeatureMap random_map(int w, int h, int c, Rng& rng) {
  FeatureMap f(w, h, c);
  for (double& v : f.values()) v = 2.0 * rng.uniform() - 1.0;
  return f;
}

double objective(const FeatureStack& s, const FeatureMap& up) {
  const auto out = attention_filter_forward(s).output;
  return pairwise_dot(out.values(), up.values());
}

double relative_error(double a, double n) {
  return std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-6});
}

std::string fmt_double(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << v;
  return ss.str();
}

}  // namespace

FeatureStack random_feature_stack(int width, int height, int channels, int levels,
                                  std::uint64_t seed) {
  Rng rng(seed);
  FeatureStack s;
  for (int l = 0; l < levels; ++l) s.levels.push_back(random_map(width, height, channels, rng));
  s.query = random_map(width, height, channels, rng);
  return s;
}

double attention_gradient_error(const FeatureStack& stack, const FeatureMap& upstream, double h) {
  const auto grads = attention_filter_backward(stack, upstream);
  double worst = 0.0;
  FeatureStack probe = stack;
  auto check_map = [&](FeatureMap& target, const FeatureMap& analytic) {
    auto v = target.values();
    auto a = analytic.values();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double saved = v[i];
      v[i] = saved + h;
      const double up = objective(probe, upstream);
      v[i] = saved - h;
      const double down = objective(probe, upstream);
      v[i] = saved;
      worst = std::max(worst, relative_error(a[i], (up - down) / (2.0 * h)));
    }
  };
  for (std::size_t l = 0; l < probe.levels.size(); ++l) check_map(probe.levels[l], grads.levels[l]);
  check_map(probe.query, grads.query);
  return worst;
}

std::vector<CheckResult> run_kernel_checks(std::uint64_t seed) {
  std::vector<CheckResult> results;
  auto record = [&results](std::string name, bool ok, std::string detail = {}) {
    results.push_back({std::move(name), ok, std::move(detail)});
  };

  {  // weights form a distribution at every location
    double worst = 0.0;
    bool positive = true;
    for (int i = 0; i < 50; ++i) {
      const auto s = random_feature_stack(4, 4, 8, 4, mix_seed(seed, i));
      const auto w = attention_filter_forward(s).weights;
      for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) {
          double sum = 0.0;
          for (int l = 0; l < 4; ++l) {
            sum += w.at(x, y, l);
            positive = positive && w.at(x, y, l) > 0.0 && w.at(x, y, l) < 1.0;
          }
          worst = std::max(worst, std::abs(sum - 1.0));
        }
    }
    record("attention.weights_sum_to_one", worst <= 1e-12, "max |sum-1| = " + fmt_double(worst));
    record("attention.weights_in_open_unit_interval", positive);
  }
  {
    auto s = random_feature_stack(5, 3, 8, 1, mix_seed(seed, 100));
    const auto r = attention_filter_forward(s);
    bool ones = true;
    for (int y = 0; y < 3; ++y)
      for (int x = 0; x < 5; ++x) ones = ones && r.weights.at(x, y, 0) == 1.0;
    record("attention.single_level_passthrough", r.output == s.levels[0] && ones);
  }
  {
    auto s = random_feature_stack(4, 4, 8, 4, mix_seed(seed, 101));
    for (int l = 1; l < 4; ++l) s.levels[l] = s.levels[0];
    const auto r = attention_filter_forward(s);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.output.values().size(); ++i)
      worst = std::max(worst, std::abs(r.output.values()[i] - s.levels[0].values()[i]));
    record("attention.equal_levels_average", worst <= 1e-12, "max dev = " + fmt_double(worst));
  }
  {
    bool ok = true;
    for (int i = 0; i < 20 && ok; ++i) {
      const auto s = random_feature_stack(4, 4, 8, 4, mix_seed(seed, 200 + i));
      FeatureStack p = s;
      std::vector<int> perm{2, 0, 3, 1};
      for (int l = 0; l < 4; ++l) p.levels[l] = s.levels[perm[l]];
      const auto a = attention_filter_forward(s);
      const auto b = attention_filter_forward(p);
      ok = a.output == b.output;
      for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x)
          for (int l = 0; l < 4; ++l) ok = ok && b.weights.at(x, y, l) == a.weights.at(x, y, perm[l]);
    }
    record("attention.level_permutation_invariance", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
      const auto s = random_feature_stack(4, 4, 1, 4, mix_seed(seed, 300 + i));
      const auto r = attention_filter_forward(s);
      for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 4; ++x) {
          double lo = INFINITY, hi = -INFINITY;
          for (const auto& m : s.levels) {
            lo = std::min(lo, m.at(x, y, 0));
            hi = std::max(hi, m.at(x, y, 0));
          }
          const double v = r.output.at(x, y, 0);
          ok = ok && v >= lo - 1e-15 && v <= hi + 1e-15;
        }
    }
    record("attention.convex_hull_c1", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
      const auto s = random_feature_stack(3, 3, 8, 4, mix_seed(seed, 400 + i));
      FeatureStack t = s;
      const int level = i % 4;
      for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) {
          auto dst = t.levels[level].pixel(x, y);
          const auto q = s.query.pixel(x, y);
          for (std::size_t c = 0; c < dst.size(); ++c) dst[c] += 0.5 * q[c];
        }
      const auto a = attention_filter_forward(s).weights;
      const auto b = attention_filter_forward(t).weights;
      for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 3; ++x) ok = ok && b.at(x, y, level) > a.at(x, y, level);
    }
    record("attention.sharpening", ok);
  }
  {
    const auto s = random_feature_stack(4, 4, 8, 4, mix_seed(seed, 500));
    const auto g = attention_filter_backward(s, FeatureMap(4, 4, 8));
    bool zero = true;
    for (const auto& m : g.levels)
      for (double v : m.values()) zero = zero && v == 0.0;
    for (double v : g.query.values()) zero = zero && v == 0.0;
    record("attention.backward_zero_upstream", zero);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto s = random_feature_stack(4, 4, 8, 4, mix_seed(seed, 600 + i));
      Rng rng(mix_seed(seed, 700 + i));
      const auto up = random_map(4, 4, 8, rng);
      worst = std::max(worst, attention_gradient_error(s, up));
    }
    record("attention.backward_vs_finite_differences", worst <= 1e-4,
           "max rel err = " + fmt_double(worst) + " over 50 instances");
  }
  {
    FeatureMap x(160, 120, 48);
    Rng rng(mix_seed(seed, 800));
    for (double& v : x.values()) v = rng.uniform();
    const auto y = pixel_shuffle(x, 4);
    record("pixel_shuffle.160x120x48_to_640x480x3",
           y.width() == 640 && y.height() == 480 && y.channels() == 3);
    record("pixel_shuffle.inverse_roundtrip", pixel_unshuffle(y, 4) == x);
  }
  {
    FeatureMap x(1, 1, 4);
    for (int c = 0; c < 4; ++c) x.at(0, 0, c) = c + 1.0;
    const auto y = pixel_shuffle(x, 2);
    record("pixel_shuffle.channel_order",
           y.at(0, 0, 0) == 1 && y.at(1, 0, 0) == 2 && y.at(0, 1, 0) == 3 && y.at(1, 1, 0) == 4);
  }
  {
    FeatureMap x(7, 5, 6);
    Rng rng(mix_seed(seed, 900));
    for (double& v : x.values()) v = 2.0 * rng.uniform() - 1.0;
    ResidualBlockParams p{Conv3x3::zeros(6, 6), Conv3x3::zeros(6, 6)};
    record("residual_block.zero_weights_identity", residual_block_forward(x, p) == x);
  }
  {
    std::vector<double> v(1000, 0.25);
    const bool ok = charbonnier(v, v, 1e-3, CharbonnierMode::kElement) == 1e-3 &&
                    charbonnier(v, v, 1e-3, CharbonnierMode::kFrame) == 1e-3;
    record("charbonnier.zero_difference_equals_epsilon", ok);
  }
  return results;
}

}  // namespace dualcam
