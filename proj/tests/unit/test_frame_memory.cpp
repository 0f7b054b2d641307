// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include <stdexcept>

#include "doctest.h"
#include "dualcam/error.hpp"
#include "dualcam/frame_memory.hpp"
#include "helpers.hpp"

using namespace dualcam;

namespace {

// Output = previous output + 1; state counts the steps since the last key.
class CountingDecoder : public StepDecoder {
 public:
  int throw_at = -1;
  StepOutput step(const Frame& lr, const Frame& prev_out, const FeatureMap& prev_state) override {
    if (static_cast<int>(prev_state.at(0, 0, 0)) == throw_at) throw std::runtime_error("boom");
    Frame out = prev_out.empty() ? Frame(lr.resolution(), ColorSpace::kGray8) : prev_out;
    for (auto& b : out.bytes()) b = static_cast<std::uint8_t>(b + 1);
    return {out, FeatureMap(1, 1, 1, prev_state.at(0, 0, 0) + 1)};
  }
};

}  // namespace

TEST_SUITE("frame_memory") {
  TEST_CASE("keys replace decoder output and reset the state") {
    std::vector<Frame> lr(6, Frame({2, 2}, ColorSpace::kGray8));
    const Frame key = test::constant_frame({2, 2}, ColorSpace::kGray8, 100);
    CountingDecoder dec;
    const auto out = run_frame_memory(
        lr, [&](std::size_t i) { return i % 3 == 0 ? &key : nullptr; }, dec, FeatureMap(1, 1, 1));
    REQUIRE(out.size() == 6);
    const int expect[] = {100, 101, 102, 100, 101, 102};
    for (int i = 0; i < 6; ++i) CHECK(out[i].at(0, 0) == expect[i]);
  }

  TEST_CASE("state carries across steps") {
    std::vector<Frame> lr(4, Frame({1, 1}, ColorSpace::kGray8));
    CountingDecoder dec;
    dec.throw_at = 7;
    const auto out = run_frame_memory(lr, [](std::size_t) { return nullptr; }, dec, FeatureMap(1, 1, 1));
    CHECK(out.back().at(0, 0) == 4);
  }

  TEST_CASE("decoder exceptions become decoder errors with the timestep") {
    std::vector<Frame> lr(5, Frame({1, 1}, ColorSpace::kGray8));
    CountingDecoder dec;
    dec.throw_at = 2;
    try {
      run_frame_memory(lr, [](std::size_t) { return nullptr; }, dec, FeatureMap(1, 1, 1));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::kDecoder);
      CHECK(std::string(e.what()).find("timestep 2") != std::string::npos);
    }
  }
}
