// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "udp.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "dualcam/error.hpp"

namespace dualcam::cli {
namespace {

[[noreturn]] void sys_fail(const std::string& what) {
  fail(ErrorKind::kData, what + ": " + std::strerror(errno));
}

sockaddr_in make_addr(const std::string& host, std::uint16_t port) {
  sockaddr_in a{};
  a.sin_family = AF_INET;
  a.sin_port = htons(port);
  if (inet_pton(AF_INET, host.c_str(), &a.sin_addr) != 1)
    fail(ErrorKind::kConfig, "invalid IPv4 address '" + host + "'");
  return a;
}

}  // namespace

void udp_send(std::uint16_t port, std::span<const EncodedPacket> packets, int pace_us,
              const std::string& host) {
  const int fd = socket(AF_INET, SOCK_DGRAM, 0);
  if (fd < 0) sys_fail("socket");
  const sockaddr_in to = make_addr(host, port);
  auto send_one = [&](const void* data, std::size_t n) {
    if (sendto(fd, data, n, 0, reinterpret_cast<const sockaddr*>(&to), sizeof to) < 0) {
      const int err = errno;
      close(fd);
      errno = err;
      sys_fail("sendto");
    }
  };
  for (const auto& p : packets) {
    send_one(p.data(), p.size());
    if (pace_us > 0) std::this_thread::sleep_for(std::chrono::microseconds(pace_us));
  }
  send_one(kUdpEof, sizeof kUdpEof - 1);
  close(fd);
}

UdpReceiver::UdpReceiver(std::uint16_t port) {
  fd_ = socket(AF_INET, SOCK_DGRAM, 0);
  if (fd_ < 0) sys_fail("socket");
  int buf = 16 << 20;
  setsockopt(fd_, SOL_SOCKET, SO_RCVBUF, &buf, sizeof buf);
  sockaddr_in a = make_addr("127.0.0.1", port);
  if (bind(fd_, reinterpret_cast<sockaddr*>(&a), sizeof a) < 0) {
    const int err = errno;
    close(fd_);
    errno = err;
    sys_fail("bind 127.0.0.1:" + std::to_string(port));
  }
  socklen_t len = sizeof a;
  getsockname(fd_, reinterpret_cast<sockaddr*>(&a), &len);
  port_ = ntohs(a.sin_port);
}

UdpReceiver::~UdpReceiver() {
  if (fd_ >= 0) close(fd_);
}

std::vector<EncodedPacket> UdpReceiver::receive_all(int idle_timeout_ms) {
  std::vector<EncodedPacket> out;
  std::vector<std::uint8_t> buf(65536);
  for (;;) {
    pollfd p{fd_, POLLIN, 0};
    const int r = poll(&p, 1, idle_timeout_ms);
    if (r < 0) {
      if (errno == EINTR) continue;
      sys_fail("poll");
    }
    if (r == 0) break;
    const ssize_t n = recv(fd_, buf.data(), buf.size(), 0);
    if (n < 0) sys_fail("recv");
    if (static_cast<std::size_t>(n) == sizeof kUdpEof - 1 &&
        std::memcmp(buf.data(), kUdpEof, n) == 0)
      break;
    out.emplace_back(buf.begin(), buf.begin() + n);
  }
  return out;
}

}  // namespace dualcam::cli
