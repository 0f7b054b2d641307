// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "config.hpp"

#include <fmt/format.h>

#include "dualcam/error.hpp"
#include "dualcam/image_io.hpp"
#include "dualcam/rng.hpp"

namespace dualcam::cli {

using nlohmann::ordered_json;

namespace {

Resolution parse_res(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorKind::kConfig, "resolution must be [width, height]");
  return {j[0].get<int>(), j[1].get<int>()};
}

Point2 parse_point(const ordered_json& j) {
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::kConfig, "point must be [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

void RunConfig::propagate_seed() {
  capture.seed = mix_seed(seed, 1);
  capture.noise.fixed_pattern_seed = mix_seed(seed, 2);
  channel.seed = mix_seed(seed, 3);
}

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["seed"] = seed;
  j["capture"] = {
      {"lr_fps", capture.lr_fps},
      {"key_interval", capture.key_interval},
      {"scale", capture.scale},
      {"lr_res", {capture.lr_res.width, capture.lr_res.height}},
      {"hr_res", {capture.hr_res.width, capture.hr_res.height}},
      {"timestamp_jitter_ms", capture.timestamp_jitter_ms},
      {"noise",
       {{"enabled", capture.noise.enabled},
        {"read_noise_sigma", capture.noise.read_noise_sigma},
        {"fixed_pattern_sigma", capture.noise.fixed_pattern_sigma}}}};
  j["scene"] = {{"kind", scene}, {"frames", frames}, {"pan_px", pan_px}};
  j["channel"] = {{"loss_prob", channel.loss_prob}, {"bit_error_prob", channel.bit_error_prob}};
  j["decoder"] = decoder;
  j["calibration"] = calibration_to_json(calib);
  j["sync_tolerance_ms"] = sync_tolerance_ms;
  j["parallel"] = parallel;
  return j;
}

RunConfig config_from_json(const ordered_json& j) {
  RunConfig c;
  if (!j.is_object()) fail(ErrorKind::kConfig, "configuration must be a JSON object");
  try {
    c.seed = j.value("seed", c.seed);
    if (j.contains("capture")) {
      const auto& k = j["capture"];
      c.capture.lr_fps = k.value("lr_fps", c.capture.lr_fps);
      c.capture.key_interval = k.value("key_interval", c.capture.key_interval);
      c.capture.scale = k.value("scale", c.capture.scale);
      if (k.contains("lr_res")) c.capture.lr_res = parse_res(k["lr_res"]);
      if (k.contains("hr_res")) c.capture.hr_res = parse_res(k["hr_res"]);
      c.capture.timestamp_jitter_ms = k.value("timestamp_jitter_ms", 0);
      if (k.contains("noise")) {
        const auto& n = k["noise"];
        c.capture.noise.enabled = n.value("enabled", false);
        c.capture.noise.read_noise_sigma = n.value("read_noise_sigma", 0.0);
        c.capture.noise.fixed_pattern_sigma = n.value("fixed_pattern_sigma", 0.0);
      }
    }
    if (j.contains("scene")) {
      const auto& s = j["scene"];
      c.scene = s.value("kind", c.scene);
      c.frames = s.value("frames", c.frames);
      c.pan_px = s.value("pan_px", c.pan_px);
    }
    if (j.contains("channel")) {
      c.channel.loss_prob = j["channel"].value("loss_prob", 0.0);
      c.channel.bit_error_prob = j["channel"].value("bit_error_prob", 0.0);
    }
    c.decoder = j.value("decoder", c.decoder);
    if (j.contains("calibration")) c.calib = parse_calibration(j["calibration"]);
    c.sync_tolerance_ms = j.value("sync_tolerance_ms", c.sync_tolerance_ms);
    c.parallel = j.value("parallel", c.parallel);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kConfig, std::string("configuration: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  ordered_json j;
  try {
    j = ordered_json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kConfig, path.string() + ": " + e.what());
  } catch (const Error& e) {
    fail(ErrorKind::kConfig, e.what());
  }
  return config_from_json(j);
}

Homography parse_calibration(const ordered_json& j) {
  try {
    if (j.contains("matrix")) {
      const auto& m = j["matrix"];
      if (!m.is_array() || m.size() != 9)
        fail(ErrorKind::kConfig, "calibration matrix must have 9 entries");
      std::array<double, 9> a{};
      for (int i = 0; i < 9; ++i) a[i] = m[i].get<double>();
      return Homography::from_matrix(a);
    }
    if (j.contains("src") && j.contains("dst")) {
      Correspondences c;
      if (j["src"].size() != 4 || j["dst"].size() != 4)
        fail(ErrorKind::kConfig, "calibration needs exactly 4 src and 4 dst points");
      for (int i = 0; i < 4; ++i) {
        c.src[i] = parse_point(j["src"][i]);
        c.dst[i] = parse_point(j["dst"][i]);
      }
      return estimate_homography(c);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kConfig, std::string("calibration: ") + e.what());
  } catch (const Error& e) {
    fail(ErrorKind::kConfig, std::string("calibration: ") + e.what());
  }
  fail(ErrorKind::kConfig, "calibration must contain \"matrix\" or \"src\"/\"dst\"");
}

Homography load_calibration(const std::filesystem::path& path) {
  try {
    return parse_calibration(ordered_json::parse(read_text(path)));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kConfig, path.string() + ": " + e.what());
  }
}

ordered_json calibration_to_json(const Homography& h) {
  ordered_json m = ordered_json::array();
  for (double v : h.matrix()) m.push_back(v);
  return {{"matrix", m}};
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t h) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) { return fmt::format("{:016x}", v); }

std::string config_hash(const ordered_json& j) {
  const std::string s = j.dump();
  return hex64(fnv1a(s.data(), s.size()));
}

}  // namespace dualcam::cli
