// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "stream_dir.hpp"

#include "dualcam/error.hpp"
#include "dualcam/image_io.hpp"

namespace dualcam::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json parse_file(const fs::path& path) {
  try {
    return ordered_json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kData, path.string() + ": " + e.what());
  }
}

ordered_json frame_list(std::span<const Frame> frames) {
  ordered_json a = ordered_json::array();
  for (const Frame& f : frames) a.push_back({f.frame_index, f.timestamp_ms});
  return a;
}

std::vector<Frame> load_listed(const fs::path& dir, const ordered_json& list, StreamKind kind,
                               ColorSpace want) {
  std::vector<Frame> out;
  for (const auto& item : list) {
    const auto index = item.at(0).get<std::uint64_t>();
    const fs::path p = dir / frame_file_name(index);
    Frame f = read_png(p);
    if (f.colorspace() != want)
      fail(ErrorKind::kData, p.string() + ": expected " + to_string(want) + " but found " +
                                 to_string(f.colorspace()));
    f.frame_index = index;
    f.timestamp_ms = item.at(1).get<std::uint32_t>();
    f.stream = kind;
    out.push_back(std::move(f));
  }
  return out;
}

ordered_json losses_json(const std::map<std::uint64_t, LossMap>& m) {
  ordered_json o = ordered_json::object();
  for (const auto& [index, lm] : m) {
    ordered_json runs = ordered_json::array();
    for (const auto& [start, count] : lm) runs.push_back({start, count});
    o[std::to_string(index)] = runs;
  }
  return o;
}

std::map<std::uint64_t, LossMap> losses_from(const ordered_json& o) {
  std::map<std::uint64_t, LossMap> m;
  for (const auto& [key, runs] : o.items()) {
    LossMap lm;
    for (const auto& r : runs) lm[r.at(0).get<int>()] = r.at(1).get<int>();
    m[std::stoull(key)] = lm;
  }
  return m;
}

}  // namespace

ordered_json capture_to_json(const CaptureConfig& c) {
  return {{"lr_fps", c.lr_fps},
          {"key_interval", c.key_interval},
          {"scale", c.scale},
          {"lr_res", {c.lr_res.width, c.lr_res.height}},
          {"hr_res", {c.hr_res.width, c.hr_res.height}}};
}

CaptureConfig capture_from_json(const ordered_json& j) {
  CaptureConfig c;
  try {
    c.lr_fps = j.at("lr_fps").get<double>();
    c.key_interval = j.at("key_interval").get<int>();
    c.scale = j.at("scale").get<int>();
    c.lr_res = {j.at("lr_res").at(0).get<int>(), j.at("lr_res").at(1).get<int>()};
    c.hr_res = {j.at("hr_res").at(0).get<int>(), j.at("hr_res").at(1).get<int>()};
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kData, std::string("stream capture block: ") + e.what());
  }
  c.validate();
  return c;
}

void write_frame_dir(const fs::path& dir, std::span<const Frame> frames) {
  fs::create_directories(dir);
  for (const Frame& f : frames) write_png(dir / frame_file_name(f.frame_index), f);
}

std::vector<Frame> read_frame_dir(const fs::path& dir) {
  require(fs::is_directory(dir), "not a directory: " + dir.string(), ErrorKind::kData);
  std::vector<Frame> out;
  for (const auto& p : list_pngs(dir)) {
    Frame f = read_png(p);
    f.frame_index = out.size();
    out.push_back(std::move(f));
  }
  return out;
}

void write_stream_dir(const fs::path& dir, const DualStream& s) {
  fs::create_directories(dir);
  write_frame_dir(dir / "lr", s.lr_frames);
  write_frame_dir(dir / "key", s.key_frames);
  ordered_json j;
  j["capture"] = capture_to_json(s.config);
  j["lr"] = frame_list(s.lr_frames);
  j["key"] = frame_list(s.key_frames);
  write_text(dir / "stream.json", j.dump(2) + "\n");
}

DualStream read_stream_dir(const fs::path& dir) {
  const fs::path meta = dir / "stream.json";
  require(fs::exists(meta), "missing stream manifest " + meta.string(), ErrorKind::kData);
  const ordered_json j = parse_file(meta);
  DualStream s;
  try {
    s.config = capture_from_json(j.at("capture"));
    s.lr_frames = load_listed(dir / "lr", j.at("lr"), StreamKind::kLr, ColorSpace::kGray8);
    s.key_frames = load_listed(dir / "key", j.at("key"), StreamKind::kKey, ColorSpace::kSrgb8);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kData, meta.string() + ": " + e.what());
  }
  for (std::size_t i = 0; i < s.lr_frames.size(); ++i)
    if (s.lr_frames[i].frame_index != i)
      fail(ErrorKind::kData, meta.string() + ": low-resolution frame " + std::to_string(i) +
                                 " is missing");
  return s;
}

void write_lossmaps(const fs::path& path, const StreamLosses& l) {
  ordered_json j;
  j["lr"] = losses_json(l.lr);
  j["key"] = losses_json(l.key);
  write_text(path, j.dump(2) + "\n");
}

StreamLosses read_lossmaps(const fs::path& path) {
  const ordered_json j = parse_file(path);
  try {
    return {losses_from(j.at("lr")), losses_from(j.at("key"))};
  } catch (const std::exception& e) {
    fail(ErrorKind::kData, path.string() + ": " + e.what());
  }
}

GroundTruth read_ground_truth(const fs::path& dir) {
  GroundTruth gt;
  gt.frames = read_frame_dir(dir);
  require(!gt.frames.empty(), "no PNG frames in " + dir.string(), ErrorKind::kData);
  for (const Frame& f : gt.frames)
    if (f.colorspace() != ColorSpace::kSrgb8)
      fail(ErrorKind::kData, "ground-truth frame " + std::to_string(f.frame_index) + " in " +
                                 dir.string() + " is not RGB");
  if (fs::exists(dir / "gt.json")) {
    const ordered_json j = parse_file(dir / "gt.json");
    gt.fps = j.value("fps", gt.fps);
  }
  return gt;
}

void write_ground_truth(const fs::path& dir, std::span<const Frame> frames, double fps) {
  write_frame_dir(dir, frames);
  const ordered_json j = {{"fps", fps},
                          {"resolution", {frames.front().width(), frames.front().height()}}};
  write_text(dir / "gt.json", j.dump(2) + "\n");
}

}  // namespace dualcam::cli
