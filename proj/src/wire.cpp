// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/wire.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "dualcam/crc.hpp"
#include "dualcam/error.hpp"
#include "dualcam/image_io.hpp"

namespace dualcam {
namespace {

void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(const std::uint8_t* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

StreamId key_radio(int line) { return (line % 2 == 0) ? StreamId::kKeyA : StreamId::kKeyB; }

}  // namespace

EncodedPacket encode_packet(const Packet& p) {
  require(p.payload.size() <= kMaxPayload, "packet payload exceeds 1024 bytes");
  EncodedPacket out;
  out.reserve(kHeaderSize + p.payload.size() + kCrcSize);
  out.push_back(static_cast<std::uint8_t>(p.stream_id));
  put_le(out, p.frame_seq, 4);
  put_le(out, p.line_index, 2);
  out.push_back(p.segment_index);
  put_le(out, p.payload.size(), 2);
  out.insert(out.end(), p.payload.begin(), p.payload.end());
  put_le(out, crc16_ccitt_false(out), 2);
  return out;
}

std::optional<Packet> decode_packet(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize + kCrcSize) return std::nullopt;
  const auto len = static_cast<std::size_t>(get_le(bytes.data() + 8, 2));
  if (len > kMaxPayload || bytes.size() != kHeaderSize + len + kCrcSize) return std::nullopt;
  const auto body = bytes.first(kHeaderSize + len);
  if (crc16_ccitt_false(body) != get_le(bytes.data() + kHeaderSize + len, 2)) return std::nullopt;
  if (bytes[0] > static_cast<std::uint8_t>(StreamId::kKeyB)) return std::nullopt;
  Packet p;
  p.stream_id = static_cast<StreamId>(bytes[0]);
  p.frame_seq = static_cast<std::uint32_t>(get_le(bytes.data() + 1, 4));
  p.line_index = static_cast<std::uint16_t>(get_le(bytes.data() + 5, 2));
  p.segment_index = bytes[7];
  p.payload.assign(bytes.begin() + kHeaderSize, bytes.begin() + kHeaderSize + len);
  return p;
}

std::vector<Packet> packetize_rows(std::span<const std::uint8_t> pixels, int height,
                                   std::size_t row_bytes, std::uint32_t timestamp_ms,
                                   bool key_stream, std::uint32_t frame_seq) {
  require(height > 0 && height < 0xFFFF, "packetize: bad frame height");
  require(row_bytes > 0 && pixels.size() == row_bytes * height,
          "packetize: pixel buffer does not match geometry");
  const std::size_t segs = segments_per_row(row_bytes);
  require(segs <= 256, "packetize: row too long for 8-bit segment index");

  std::vector<Packet> out;
  out.reserve(height * segs + 1);
  for (int y = 0; y < height; ++y) {
    const auto row = pixels.subspan(y * row_bytes, row_bytes);
    for (std::size_t s = 0; s < segs; ++s) {
      const std::size_t begin = s * kMaxPayload;
      const std::size_t end = std::min(row_bytes, begin + kMaxPayload);
      Packet p;
      p.stream_id = key_stream ? key_radio(y) : StreamId::kLr;
      p.frame_seq = frame_seq;
      p.line_index = static_cast<std::uint16_t>(y);
      p.segment_index = static_cast<std::uint8_t>(s);
      p.payload.assign(row.begin() + begin, row.begin() + end);
      out.push_back(std::move(p));
    }
  }
  Packet tail;
  tail.stream_id = key_stream ? key_radio(height) : StreamId::kLr;
  tail.frame_seq = frame_seq;
  tail.line_index = static_cast<std::uint16_t>(height);
  put_le(tail.payload, timestamp_ms, 4);
  tail.payload.insert(tail.payload.end(), kFrameFooter.begin(), kFrameFooter.end());
  out.push_back(std::move(tail));
  return out;
}

std::vector<Packet> packetize(const Frame& frame, bool key_stream) {
  require(frame.is_8bit(), "packetize: only 8-bit frames travel on the wire");
  return packetize_rows(frame.bytes(), frame.height(),
                        static_cast<std::size_t>(frame.width()) * frame.channels(),
                        frame.timestamp_ms, key_stream,
                        static_cast<std::uint32_t>(frame.frame_index));
}

std::vector<EncodedPacket> encode_all(std::span<const Packet> packets) {
  std::vector<EncodedPacket> out;
  out.reserve(packets.size());
  for (const auto& p : packets) out.push_back(encode_packet(p));
  return out;
}

int lost_line_count(const LossMap& m) {
  int n = 0;
  for (const auto& [start, count] : m) n += count;
  return n;
}

LossMap loss_map_from_lines(std::span<const std::uint8_t> lost) {
  LossMap m;
  for (std::size_t y = 0; y < lost.size();) {
    if (!lost[y]) {
      ++y;
      continue;
    }
    std::size_t end = y;
    while (end < lost.size() && lost[end]) ++end;
    m.emplace(static_cast<int>(y), static_cast<int>(end - y));
    y = end;
  }
  return m;
}

Reassembled reassemble(std::span<const EncodedPacket> packets, const FrameLayout& layout,
                       std::uint32_t frame_seq) {
  require(is_8bit(layout.colorspace), "reassemble: layout must be an 8-bit colorspace");
  Reassembled r;
  r.frame = Frame(layout.res, layout.colorspace);
  r.frame.frame_index = frame_seq;
  const int height = layout.res.height;
  const std::size_t row_bytes = static_cast<std::size_t>(layout.res.width) * r.frame.channels();
  const std::size_t segs = segments_per_row(row_bytes);
  std::vector<std::uint8_t> have(static_cast<std::size_t>(height) * segs, 0);
  auto pixels = r.frame.bytes();

  for (const auto& bytes : packets) {
    const auto p = decode_packet(bytes);
    if (!p) {
      ++r.crc_failures;
      continue;
    }
    if (p->frame_seq != frame_seq) {
      ++r.ignored_packets;
      continue;
    }
    if (p->line_index == height) {
      if (p->segment_index == 0 && p->payload.size() == 4 + kFrameFooter.size() &&
          std::equal(kFrameFooter.begin(), kFrameFooter.end(), p->payload.begin() + 4)) {
        r.frame.timestamp_ms = static_cast<std::uint32_t>(get_le(p->payload.data(), 4));
        r.timestamp_known = true;
      } else {
        ++r.ignored_packets;
      }
      continue;
    }
    const std::size_t begin = static_cast<std::size_t>(p->segment_index) * kMaxPayload;
    if (p->line_index > height || p->segment_index >= segs ||
        p->payload.size() != std::min(kMaxPayload, row_bytes - begin)) {
      ++r.ignored_packets;
      continue;
    }
    std::memcpy(pixels.data() + p->line_index * row_bytes + begin, p->payload.data(),
                p->payload.size());
    have[p->line_index * segs + p->segment_index] = 1;
  }

  std::vector<std::uint8_t> lost(height, 0);
  for (int y = 0; y < height; ++y)
    for (std::size_t s = 0; s < segs; ++s)
      if (!have[y * segs + s]) lost[y] = 1;
  r.losses = loss_map_from_lines(lost);
  return r;
}

FrameGroups group_by_frame(std::span<const EncodedPacket> packets) {
  FrameGroups g;
  for (const auto& bytes : packets) {
    const auto p = decode_packet(bytes);
    if (!p) {
      ++g.undecodable;
      continue;
    }
    g.frames[p->frame_seq].push_back(bytes);
  }
  return g;
}

std::vector<std::uint8_t> encode_stream(std::span<const EncodedPacket> packets) {
  std::vector<std::uint8_t> out(kStreamMagic.begin(), kStreamMagic.end());
  for (const auto& p : packets) {
    require(p.size() <= 0xFFFF, "stream: packet too long");
    put_le(out, p.size(), 2);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

std::vector<EncodedPacket> decode_stream(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kStreamMagic.size() ||
      !std::equal(kStreamMagic.begin(), kStreamMagic.end(), bytes.begin()))
    fail(ErrorKind::kData, "stream: missing NCSTRM01 magic");
  std::vector<EncodedPacket> out;
  std::size_t pos = kStreamMagic.size();
  while (pos < bytes.size()) {
    if (pos + 2 > bytes.size()) fail(ErrorKind::kData, "stream: truncated length prefix");
    const auto len = static_cast<std::size_t>(get_le(bytes.data() + pos, 2));
    pos += 2;
    if (pos + len > bytes.size())
      fail(ErrorKind::kData, "stream: packet " + std::to_string(out.size()) + " truncated");
    out.emplace_back(bytes.begin() + pos, bytes.begin() + pos + len);
    pos += len;
  }
  return out;
}

void write_stream_file(const std::filesystem::path& path, std::span<const EncodedPacket> packets) {
  write_file(path, encode_stream(packets));
}

std::vector<EncodedPacket> read_stream_file(const std::filesystem::path& path) {
  return decode_stream(read_file(path));
}

RateReport rate_report(const CaptureConfig& config, double radio_bps, int key_bits_per_pixel) {
  config.validate();
  require(radio_bps > 0.0, "radio throughput must be positive");
  RateReport r;
  r.radio_bps = radio_bps;
  r.lr_bps = static_cast<double>(config.lr_res.area()) * 8.0 * config.lr_fps;
  r.key_frame_bits = static_cast<double>(config.hr_res.area()) * key_bits_per_pixel;
  r.key_bps = r.key_frame_bits * config.key_fps();
  r.lr_radios = static_cast<int>(std::ceil(r.lr_bps / radio_bps));
  r.key_radios = static_cast<int>(std::ceil(r.key_bps / radio_bps));
  r.lr_fits_one_radio = r.lr_bps <= radio_bps;
  r.key_fits_one_radio = r.key_bps <= radio_bps;
  return r;
}

}  // namespace dualcam
