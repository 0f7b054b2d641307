// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/crc.hpp"

#include <boost/crc.hpp>

namespace dualcam {

std::uint16_t crc16_ccitt_false(std::span<const std::uint8_t> data) {
  boost::crc_optimal<16, 0x1021, 0xFFFF, 0, false, false> crc;
  crc.process_bytes(data.data(), data.size());
  return static_cast<std::uint16_t>(crc.checksum());
}

}  // namespace dualcam
