// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/error.hpp"
#include "dualcam/rng.hpp"
#include "dualcam/wire.hpp"

namespace dualcam {

std::vector<EncodedPacket> channel_transmit(std::span<const EncodedPacket> packets,
                                            const ChannelModel& model) {
  require(model.loss_prob >= 0.0 && model.loss_prob <= 1.0,
          "channel: loss probability must be in [0, 1]", ErrorKind::kConfig);
  require(model.bit_error_prob >= 0.0 && model.bit_error_prob <= 1.0,
          "channel: bit-error probability must be in [0, 1]", ErrorKind::kConfig);
  Rng rng(model.seed);
  std::vector<EncodedPacket> out;
  out.reserve(packets.size());
  for (const auto& p : packets) {
    if (rng.bernoulli(model.loss_prob)) continue;
    out.push_back(p);
    if (model.bit_error_prob > 0.0 && rng.bernoulli(model.bit_error_prob) && !p.empty()) {
      const auto bit = rng.below(p.size() * 8);
      out.back()[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    }
  }
  return out;
}

}  // namespace dualcam
