// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_CLI_STREAM_DIR_HPP_
#define DUALCAM_CLI_STREAM_DIR_HPP_

#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "dualcam/capture.hpp"
#include "dualcam/wire.hpp"
#include "json.hpp"

namespace dualcam::cli {

// Stream directory layout:
//   stream.json   capture config plus (index, timestamp_ms) per frame
//   lr/NNNNNN.png GRAY8 frames, named by ground-truth index
//   key/NNNNNN.png SRGB8 frames, named by ground-truth index
//   lossmaps.json optional, {"lr": {index: {start: count}}, "key": {...}}

nlohmann::ordered_json capture_to_json(const CaptureConfig& c);
CaptureConfig capture_from_json(const nlohmann::ordered_json& j);

void write_stream_dir(const std::filesystem::path& dir, const DualStream& s);
DualStream read_stream_dir(const std::filesystem::path& dir);

struct StreamLosses {
  std::map<std::uint64_t, LossMap> lr;
  std::map<std::uint64_t, LossMap> key;
};
void write_lossmaps(const std::filesystem::path& path, const StreamLosses& l);
StreamLosses read_lossmaps(const std::filesystem::path& path);

/// Writes frames as NNNNNN.png named by frame_index.
void write_frame_dir(const std::filesystem::path& dir, std::span<const Frame> frames);
/// Reads every PNG in name order; frame_index is the position.
std::vector<Frame> read_frame_dir(const std::filesystem::path& dir);

/// Ground-truth directory: numbered PNGs plus optional gt.json {"fps": ...}.
struct GroundTruth {
  std::vector<Frame> frames;
  double fps = 15.0;
};
GroundTruth read_ground_truth(const std::filesystem::path& dir);
void write_ground_truth(const std::filesystem::path& dir, std::span<const Frame> frames, double fps);

}  // namespace dualcam::cli

#endif  // DUALCAM_CLI_STREAM_DIR_HPP_
