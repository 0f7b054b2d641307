// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "dualcam/error.hpp"
#include "dualcam/kernel_check.hpp"
#include "dualcam/nnkernels.hpp"
#include "helpers.hpp"

using namespace dualcam;

namespace {

FeatureMap scalar_map(double v) { return FeatureMap(1, 1, 1, v); }

}  // namespace

TEST_SUITE("nnkernels") {
  TEST_CASE("attention two-level oracle") {
    FeatureStack s;
    s.query = scalar_map(1.0);
    s.levels = {scalar_map(1.0), scalar_map(0.0)};
    const AttentionOutput o = attention_filter_forward(s);
    // softmax([1, 0]) with the query dotted against each level.
    CHECK(o.weights.at(0, 0, 0) == doctest::Approx(0.73105857863000488).epsilon(1e-15));
    CHECK(o.weights.at(0, 0, 1) == doctest::Approx(0.26894142136999512).epsilon(1e-15));
    CHECK(o.output.at(0, 0, 0) == doctest::Approx(0.73105857863000488).epsilon(1e-15));
  }

  TEST_CASE("attention rejects malformed stacks") {
    FeatureStack s;
    s.query = FeatureMap(2, 2, 3);
    CHECK_THROWS_AS(attention_filter_forward(s), Error);
    s.levels = {FeatureMap(2, 2, 3), FeatureMap(2, 3, 3)};
    CHECK_THROWS_AS(attention_filter_forward(s), Error);
    s.levels = {FeatureMap(2, 2, 3)};
    CHECK_THROWS_AS(attention_filter_backward(s, FeatureMap(2, 2, 2)), Error);
  }

  TEST_CASE("attention backward matches finite differences") {
    const FeatureStack s = random_feature_stack(3, 3, 5, 4, 11);
    const FeatureStack u = random_feature_stack(3, 3, 5, 1, 12);
    CHECK(attention_gradient_error(s, u.query) <= 1e-4);
  }

  TEST_CASE("pairwise sum is exact on small integers") {
    std::vector<double> v(1000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
    CHECK(pairwise_sum(v) == 499500.0);
    CHECK(pairwise_dot(v, v) == 332833500.0);
  }

  TEST_CASE("residual block oracle") {
    ResidualBlockParams p{Conv3x3::zeros(1, 1), Conv3x3::zeros(1, 1)};
    p.conv1.w(0, 0, 1, 1) = 2.0;
    p.conv2.w(0, 0, 1, 1) = 0.475;
    CHECK(residual_block_forward(scalar_map(0.5), p).at(0, 0, 0) == doctest::Approx(0.975).epsilon(1e-15));
    p.conv1.bias[0] = -5.0;  // ReLU clamps the branch to zero
    p.conv2.bias[0] = 0.1;
    CHECK(residual_block_forward(scalar_map(0.5), p).at(0, 0, 0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_THROWS_AS(residual_block_forward(FeatureMap(1, 1, 2), p), Error);
  }

  TEST_CASE("conv3x3 zero-pads the border") {
    Conv3x3 box = Conv3x3::zeros(1, 1);
    for (int ky = 0; ky < 3; ++ky)
      for (int kx = 0; kx < 3; ++kx) box.w(0, 0, ky, kx) = 1.0;
    const FeatureMap y = conv3x3(FeatureMap(3, 3, 1, 1.0), box);
    CHECK(y.at(0, 0, 0) == 4.0);
    CHECK(y.at(1, 0, 0) == 6.0);
    CHECK(y.at(1, 1, 0) == 9.0);
  }

  TEST_CASE("pixel shuffle 2x2 layout") {
    FeatureMap x(1, 1, 4);
    for (int c = 0; c < 4; ++c) x.at(0, 0, c) = c;
    const FeatureMap y = pixel_shuffle(x, 2);
    REQUIRE(y.width() == 2);
    REQUIRE(y.channels() == 1);
    CHECK(y.at(0, 0, 0) == 0);
    CHECK(y.at(1, 0, 0) == 1);
    CHECK(y.at(0, 1, 0) == 2);
    CHECK(y.at(1, 1, 0) == 3);
    CHECK(pixel_unshuffle(y, 2) == x);
    CHECK_THROWS_AS(pixel_shuffle(FeatureMap(1, 1, 3), 2), Error);
    CHECK_THROWS_AS(pixel_unshuffle(FeatureMap(3, 2, 1), 2), Error);
  }

  TEST_CASE("charbonnier modes") {
    const std::vector<double> a{0.0, 0.0, 0.0, 0.0};
    const std::vector<double> b{3.0, 0.0, 0.0, 4.0};
    CHECK(charbonnier(a, a) == 1e-3);
    CHECK(charbonnier(a, a, 1e-3, CharbonnierMode::kFrame) == 1e-3);
    CHECK(charbonnier(a, b, 1e-3, CharbonnierMode::kFrame) == doctest::Approx(std::sqrt(25.0 + 1e-6)));
    const double e = (std::sqrt(9.0 + 1e-6) + std::sqrt(16.0 + 1e-6) + 2e-3) / 4.0;
    CHECK(charbonnier(a, b) == doctest::Approx(e).epsilon(1e-14));
    CHECK_THROWS_AS(charbonnier(a, std::vector<double>{1.0}), Error);
  }

  TEST_CASE("tensor file round trip") {
    const FeatureStack s = random_feature_stack(5, 3, 4, 1, 3);
    const auto path = test::scratch("tensor") / "q.bin";
    write_tensor(path, to_tensor(s.query));
    CHECK(from_tensor(read_tensor(path)) == s.query);
    auto bytes = encode_tensor(to_tensor(s.query));
    bytes.resize(bytes.size() - 1);
    CHECK_THROWS_AS(decode_tensor(bytes), Error);
  }

  TEST_CASE("kernel self-checks all pass") {
    for (const CheckResult& r : run_kernel_checks(0)) {
      CAPTURE(r.name);
      CAPTURE(r.detail);
      CHECK(r.passed);
    }
  }
}
