// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/frame_memory.hpp"

#include <exception>
#include <string>

#include "dualcam/error.hpp"

namespace dualcam {

StepOutput frame_memory_step(const Frame& lr, const Frame* key, const Frame& prev_out,
                             const FeatureMap& prev_state, StepDecoder& decoder,
                             std::size_t timestep) {
  if (key != nullptr) {
    StepOutput o{*key, FeatureMap()};
    if (prev_state.channels() > 0)
      o.state = FeatureMap(prev_state.width(), prev_state.height(), prev_state.channels());
    return o;
  }
  try {
    return decoder.step(lr, prev_out, prev_state);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kDecoder,
                "decoder failed at timestep " + std::to_string(timestep) + ": " + e.what());
  }
}

std::vector<Frame> run_frame_memory(std::span<const Frame> lr,
                                    const std::function<const Frame*(std::size_t)>& key_at,
                                    StepDecoder& decoder, FeatureMap initial_state) {
  std::vector<Frame> outputs;
  outputs.reserve(lr.size());
  Frame prev;
  FeatureMap state = std::move(initial_state);
  for (std::size_t i = 0; i < lr.size(); ++i) {
    StepOutput o = frame_memory_step(lr[i], key_at(i), prev, state, decoder, i);
    prev = o.out;
    state = std::move(o.state);
    outputs.push_back(std::move(o.out));
  }
  return outputs;
}

}  // namespace dualcam
