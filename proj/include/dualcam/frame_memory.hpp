// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_FRAME_MEMORY_HPP_
#define DUALCAM_FRAME_MEMORY_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dualcam/frame.hpp"
#include "dualcam/nnkernels.hpp"

namespace dualcam {

struct StepOutput {
  Frame out;
  FeatureMap state;
};

/// One recurrent update: (l_t, h_{t-1}, s_{t-1}) -> (h_t, s_t).
class StepDecoder {
 public:
  virtual ~StepDecoder() = default;
  virtual StepOutput step(const Frame& lr, const Frame& prev_out, const FeatureMap& prev_state) = 0;
};

/// Key-frame steps emit the key frame unchanged and reset the state to zeros
/// of the previous state's shape; every other step is delegated to `decoder`.
/// Decoder exceptions are rethrown as kDecoder errors naming `timestep`.
StepOutput frame_memory_step(const Frame& lr, const Frame* key, const Frame& prev_out,
                             const FeatureMap& prev_state, StepDecoder& decoder,
                             std::size_t timestep);

/// Runs the recurrence over `lr` in the given order. `key_at(i)` returns the
/// key frame for position i or nullptr.
std::vector<Frame> run_frame_memory(std::span<const Frame> lr,
                                    const std::function<const Frame*(std::size_t)>& key_at,
                                    StepDecoder& decoder, FeatureMap initial_state);

}  // namespace dualcam

#endif  // DUALCAM_FRAME_MEMORY_HPP_
