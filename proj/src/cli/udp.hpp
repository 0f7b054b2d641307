// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_CLI_UDP_HPP_
#define DUALCAM_CLI_UDP_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dualcam/wire.hpp"

namespace dualcam::cli {

// Live pipe over UDP on the loopback interface. One packet per datagram;
// a 6-byte "NCSEOF" datagram ends the stream.

inline constexpr char kUdpEof[] = "NCSEOF";

void udp_send(std::uint16_t port, std::span<const EncodedPacket> packets, int pace_us = 0,
              const std::string& host = "127.0.0.1");

class UdpReceiver {
 public:
  /// Binds 127.0.0.1:port; port 0 picks a free one.
  explicit UdpReceiver(std::uint16_t port = 0);
  ~UdpReceiver();
  UdpReceiver(const UdpReceiver&) = delete;
  UdpReceiver& operator=(const UdpReceiver&) = delete;

  std::uint16_t port() const { return port_; }
  /// Collects datagrams in arrival order until the end marker, or until no
  /// datagram arrives for `idle_timeout_ms`.
  std::vector<EncodedPacket> receive_all(int idle_timeout_ms = 2000);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace dualcam::cli

#endif  // DUALCAM_CLI_UDP_HPP_
