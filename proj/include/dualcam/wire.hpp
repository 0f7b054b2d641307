// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_WIRE_HPP_
#define DUALCAM_WIRE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dualcam/capture.hpp"
#include "dualcam/frame.hpp"

namespace dualcam {

// Packet layout, little-endian throughout:
//
//   offset  size  field
//   0       1     stream_id (0 = LR, 1 = KEY_A, 2 = KEY_B)
//   1       4     frame_seq
//   5       2     line_index (== frame height for the terminal packet)
//   7       1     segment_index
//   8       2     payload_len (<= 1024)
//   10      n     payload
//   10+n    2     CRC-16/CCITT-FALSE over bytes [0, 10+n)
//
// The terminal packet carries the 32-bit capture timestamp followed by the
// frame footer 13, 0, 10.

inline constexpr std::size_t kMaxPayload = 1024;
inline constexpr std::size_t kHeaderSize = 10;
inline constexpr std::size_t kCrcSize = 2;
inline constexpr std::array<std::uint8_t, 3> kFrameFooter{13, 0, 10};

enum class StreamId : std::uint8_t { kLr = 0, kKeyA = 1, kKeyB = 2 };

struct Packet {
  StreamId stream_id = StreamId::kLr;
  std::uint32_t frame_seq = 0;
  std::uint16_t line_index = 0;
  std::uint8_t segment_index = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const Packet&, const Packet&) = default;
};

using EncodedPacket = std::vector<std::uint8_t>;

EncodedPacket encode_packet(const Packet& p);
/// nullopt when the buffer is malformed or the CRC does not verify.
std::optional<Packet> decode_packet(std::span<const std::uint8_t> bytes);

inline std::size_t segments_per_row(std::size_t row_bytes) {
  return (row_bytes + kMaxPayload - 1) / kMaxPayload;
}

/// One packet per (row, segment) plus the terminal packet. Key-frame rows
/// alternate KEY_A / KEY_B by line parity, modelling the two radios.
std::vector<Packet> packetize_rows(std::span<const std::uint8_t> pixels, int height,
                                   std::size_t row_bytes, std::uint32_t timestamp_ms,
                                   bool key_stream, std::uint32_t frame_seq);
/// 8-bit frames only; frame_seq is the frame's ground-truth index.
std::vector<Packet> packetize(const Frame& frame, bool key_stream);
std::vector<EncodedPacket> encode_all(std::span<const Packet> packets);

/// start line -> number of consecutive lost lines; disjoint and ascending.
using LossMap = std::map<int, int>;
int lost_line_count(const LossMap& m);
/// Maximal runs of `lost[y] != 0`.
LossMap loss_map_from_lines(std::span<const std::uint8_t> lost);

struct ChannelModel {
  double loss_prob = 0.0;       // independent per-packet drop probability
  double bit_error_prob = 0.0;  // per surviving packet: flip one random bit
  std::uint64_t seed = 0;
};

/// Order-preserving Bernoulli loss; deterministic per seed.
std::vector<EncodedPacket> channel_transmit(std::span<const EncodedPacket> packets,
                                            const ChannelModel& model);

struct FrameLayout {
  Resolution res;
  ColorSpace colorspace = ColorSpace::kGray8;  // GRAY8 or SRGB8
};

struct Reassembled {
  Frame frame;  // missing segments zero-filled
  LossMap losses;
  bool timestamp_known = false;
  std::size_t crc_failures = 0;
  std::size_t ignored_packets = 0;  // other frame_seq or out-of-range index
};

/// Rebuilds one frame from packets in any order. Packets that fail the CRC
/// count as lost. Only packets with `frame_seq` are used.
Reassembled reassemble(std::span<const EncodedPacket> packets, const FrameLayout& layout,
                       std::uint32_t frame_seq);

/// Decodable packets grouped by frame_seq, preserving arrival order. Packets
/// failing the CRC cannot be attributed and are counted in `undecodable`.
struct FrameGroups {
  std::map<std::uint32_t, std::vector<EncodedPacket>> frames;
  std::size_t undecodable = 0;
};
FrameGroups group_by_frame(std::span<const EncodedPacket> packets);

// .ncs stream file: "NCSTRM01" then u16 LE length + packet bytes, repeated.
inline constexpr std::array<char, 8> kStreamMagic{'N', 'C', 'S', 'T', 'R', 'M', '0', '1'};
std::vector<std::uint8_t> encode_stream(std::span<const EncodedPacket> packets);
std::vector<EncodedPacket> decode_stream(std::span<const std::uint8_t> bytes);
void write_stream_file(const std::filesystem::path& path, std::span<const EncodedPacket> packets);
std::vector<EncodedPacket> read_stream_file(const std::filesystem::path& path);

struct RateReport {
  double radio_bps = 2.5e6;
  double lr_bps = 0.0;
  double key_frame_bits = 0.0;
  double key_bps = 0.0;
  int lr_radios = 0;
  int key_radios = 0;
  bool lr_fits_one_radio = false;
  bool key_fits_one_radio = false;
};

/// Raw (uncompressed) stream rates: 8-bit gray LR video and 16 bit/pixel
/// (YUV 4:2:2) key frames at lr_fps / K.
RateReport rate_report(const CaptureConfig& config, double radio_bps = 2.5e6,
                       int key_bits_per_pixel = 16);

}  // namespace dualcam

#endif  // DUALCAM_WIRE_HPP_
