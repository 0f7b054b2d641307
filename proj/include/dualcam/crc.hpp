// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_CRC_HPP_
#define DUALCAM_CRC_HPP_

#include <cstdint>
#include <span>

namespace dualcam {

/// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no final xor.
/// Check value for "123456789" is 0x29B1.
std::uint16_t crc16_ccitt_false(std::span<const std::uint8_t> data);

}  // namespace dualcam

#endif  // DUALCAM_CRC_HPP_
