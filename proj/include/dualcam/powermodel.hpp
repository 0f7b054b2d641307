// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_POWERMODEL_HPP_
#define DUALCAM_POWERMODEL_HPP_

#include <string>
#include <utility>
#include <vector>

#include "dualcam/frame.hpp"

namespace dualcam {

enum class PowerCategory { kSensor, kCompute, kRadio };

struct PowerEntry {
  std::string name;
  double active_current_ma = 0.0;
  double voltage_v = 0.0;
  double duty_cycle = 1.0;
  PowerCategory category = PowerCategory::kSensor;
  bool unoptimized = false;  // counted in totals, not in the camera budget

  /// Throws kConfig on negative current/voltage or duty outside [0, 1].
  void validate() const;
};

struct SystemProfile {
  std::vector<PowerEntry> entries;
  Resolution lr_res = kLrResolution;
  Resolution hr_res = kHrResolution;
  double lr_fps = 15.0;
  double key_fps = 1.0;
  double hr_active_ms = 40.0;  // colour sensor on-time per key frame

  static SystemProfile defaults();
  /// Defaults overridden by any keys present in a JSON object.
  static SystemProfile from_json(const std::string& text);
  std::string to_json() const;
  void validate() const;
  const PowerEntry& entry(const std::string& name) const;
};

double average_current_ma(const PowerEntry& e);
double average_power_mw(const PowerEntry& e);

/// Sum over sensor entries.
double camera_subsystem_power_mw(const SystemProfile& p);
/// The colour sensor run continuously at lr_fps.
double single_camera_sensor_power_mw(const SystemProfile& p);
double sensor_power_ratio(const SystemProfile& p);

double total_power_mw(const SystemProfile& p);
double total_current_ma(const SystemProfile& p);

struct DataReduction {
  double per_frame = 0.0;  // HR RGB samples / LR gray samples
  double full_rate = 0.0;  // HR RGB at lr_fps / (LR gray at lr_fps + HR RGB at key_fps)
};
DataReduction data_reduction_factor(const SystemProfile& p);

/// Single-camera pixel rate over dual-camera pixel rate.
double codec_pixel_power_ratio(const SystemProfile& p);

/// (0.75 total, 0.25 total). Throws kInvalidInput for total <= 0.
std::pair<double, double> bitrate_split(double total_bps);

/// Average-power reduction from capturing one frame per second instead of fps.
double duty_cycle_savings(double fps);

std::string power_report_markdown(const SystemProfile& p);
std::string power_report_json(const SystemProfile& p);

}  // namespace dualcam

#endif  // DUALCAM_POWERMODEL_HPP_
