// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/powermodel.hpp"

#include <fmt/format.h>

#include "dualcam/error.hpp"
#include "dualcam/wire.hpp"
#include "json.hpp"

namespace dualcam {
namespace {

using nlohmann::ordered_json;

const char* category_name(PowerCategory c) {
  switch (c) {
    case PowerCategory::kSensor: return "sensor";
    case PowerCategory::kCompute: return "compute";
    case PowerCategory::kRadio: return "radio";
  }
  return "?";
}

PowerCategory parse_category(const std::string& s) {
  if (s == "sensor") return PowerCategory::kSensor;
  if (s == "compute") return PowerCategory::kCompute;
  if (s == "radio") return PowerCategory::kRadio;
  fail(ErrorKind::kConfig, "unknown power category '" + s + "'");
}

double pixel_rate_single(const SystemProfile& p) {
  return static_cast<double>(p.hr_res.area()) * p.lr_fps;
}

double pixel_rate_dual(const SystemProfile& p) {
  return static_cast<double>(p.lr_res.area()) * p.lr_fps +
         static_cast<double>(p.hr_res.area()) * p.key_fps;
}

// Reference values the report is compared against.
constexpr double kRefCameraMw = 5.8;
constexpr double kRefOvCurrentMa = 1.10;
constexpr double kRefSingleMw = 46.2;
constexpr double kRefSensorRatio = 8.0;
constexpr double kRefDataFactor = 48.0;
constexpr double kRefDutySavings = 15.0;
constexpr double kRefTotalMwA = 106.0;
constexpr double kRefTotalMwB = 85.0;

}  // namespace

void PowerEntry::validate() const {
  require(active_current_ma >= 0.0 && voltage_v >= 0.0,
          name + ": current and voltage must be non-negative", ErrorKind::kConfig);
  require(duty_cycle >= 0.0 && duty_cycle <= 1.0, name + ": duty cycle must lie in [0, 1]",
          ErrorKind::kConfig);
}

SystemProfile SystemProfile::defaults() {
  SystemProfile p;
  p.entries = {
      {"HM01B0", 0.97, 2.8, 1.0, PowerCategory::kSensor, false},
      {"OV7692", 27.52, 2.8, 0.04, PowerCategory::kSensor, false},
      {"STM32L496", 4.57, 1.8, 1.0, PowerCategory::kCompute, true},
      {"STM32U575", 18.0, 1.8, 1.0, PowerCategory::kCompute, true},
      {"CC2640R2F", 21.42, 1.8, 1.0, PowerCategory::kRadio, true},
  };
  return p;
}

SystemProfile SystemProfile::from_json(const std::string& text) {
  SystemProfile p = defaults();
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::kConfig, std::string("power profile: ") + e.what());
  }
  require(j.is_object(), "power profile must be a JSON object", ErrorKind::kConfig);
  try {
    if (j.contains("entries")) {
      p.entries.clear();
      for (const auto& e : j.at("entries")) {
        PowerEntry pe;
        pe.name = e.at("name").get<std::string>();
        pe.active_current_ma = e.at("active_current_ma").get<double>();
        pe.voltage_v = e.at("voltage_v").get<double>();
        pe.duty_cycle = e.value("duty_cycle", 1.0);
        pe.category = parse_category(e.value("category", std::string("sensor")));
        pe.unoptimized = e.value("unoptimized", false);
        p.entries.push_back(pe);
      }
    }
    if (j.contains("lr_res")) p.lr_res = {j["lr_res"].at(0).get<int>(), j["lr_res"].at(1).get<int>()};
    if (j.contains("hr_res")) p.hr_res = {j["hr_res"].at(0).get<int>(), j["hr_res"].at(1).get<int>()};
    p.lr_fps = j.value("lr_fps", p.lr_fps);
    p.key_fps = j.value("key_fps", p.key_fps);
    p.hr_active_ms = j.value("hr_active_ms", p.hr_active_ms);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kConfig, std::string("power profile: ") + e.what());
  }
  p.validate();
  return p;
}

std::string SystemProfile::to_json() const {
  ordered_json j;
  j["entries"] = ordered_json::array();
  for (const auto& e : entries)
    j["entries"].push_back({{"name", e.name},
                            {"active_current_ma", e.active_current_ma},
                            {"voltage_v", e.voltage_v},
                            {"duty_cycle", e.duty_cycle},
                            {"category", category_name(e.category)},
                            {"unoptimized", e.unoptimized}});
  j["lr_res"] = {lr_res.width, lr_res.height};
  j["hr_res"] = {hr_res.width, hr_res.height};
  j["lr_fps"] = lr_fps;
  j["key_fps"] = key_fps;
  j["hr_active_ms"] = hr_active_ms;
  return j.dump(2);
}

void SystemProfile::validate() const {
  require(!entries.empty(), "power profile has no entries", ErrorKind::kConfig);
  for (const auto& e : entries) e.validate();
  require(lr_res.area() > 0 && hr_res.area() > 0, "power profile: empty resolution",
          ErrorKind::kConfig);
  require(lr_fps > 0.0 && key_fps >= 0.0 && hr_active_ms >= 0.0,
          "power profile: rates must be non-negative", ErrorKind::kConfig);
}

const PowerEntry& SystemProfile::entry(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  fail(ErrorKind::kConfig, "power profile has no entry '" + name + "'");
}

double average_current_ma(const PowerEntry& e) { return e.active_current_ma * e.duty_cycle; }
double average_power_mw(const PowerEntry& e) { return average_current_ma(e) * e.voltage_v; }

double camera_subsystem_power_mw(const SystemProfile& p) {
  double sum = 0.0;
  int sensors = 0;
  for (const auto& e : p.entries)
    if (e.category == PowerCategory::kSensor) {
      sum += average_power_mw(e);
      ++sensors;
    }
  require(sensors >= 2, "camera subsystem needs both sensors", ErrorKind::kConfig);
  return sum;
}

double single_camera_sensor_power_mw(const SystemProfile& p) {
  const PowerEntry& hr = p.entry("OV7692");
  const double duty = std::min(1.0, p.hr_active_ms * p.lr_fps / 1000.0);
  return hr.active_current_ma * duty * hr.voltage_v;
}

double sensor_power_ratio(const SystemProfile& p) {
  return single_camera_sensor_power_mw(p) / camera_subsystem_power_mw(p);
}

double total_power_mw(const SystemProfile& p) {
  double sum = 0.0;
  for (const auto& e : p.entries) sum += average_power_mw(e);
  return sum;
}

double total_current_ma(const SystemProfile& p) {
  double sum = 0.0;
  for (const auto& e : p.entries) sum += average_current_ma(e);
  return sum;
}

DataReduction data_reduction_factor(const SystemProfile& p) {
  const double hr = static_cast<double>(p.hr_res.area()) * 3.0;
  const double lr = static_cast<double>(p.lr_res.area());
  return {hr / lr, hr * p.lr_fps / (lr * p.lr_fps + hr * p.key_fps)};
}

double codec_pixel_power_ratio(const SystemProfile& p) {
  return pixel_rate_single(p) / pixel_rate_dual(p);
}

std::pair<double, double> bitrate_split(double total_bps) {
  require(total_bps > 0.0, "bitrate_split: total must be positive");
  return {0.75 * total_bps, 0.25 * total_bps};
}

double duty_cycle_savings(double fps) {
  require(fps >= 1.0, "duty_cycle_savings: fps must be at least 1");
  return fps;
}

std::string power_report_markdown(const SystemProfile& p) {
  p.validate();
  std::string s = "# Power and bandwidth report\n\n";
  s += "| Component | Active current (mA) | Voltage (V) | Duty | Avg current (mA) | Avg power (mW) | Note |\n";
  s += "|---|---:|---:|---:|---:|---:|---|\n";
  for (const auto& e : p.entries)
    s += fmt::format("| {} | {:.2f} | {:.1f} | {:.3f} | {:.4f} | {:.4f} | {} |\n", e.name,
                     e.active_current_ma, e.voltage_v, e.duty_cycle, average_current_ma(e),
                     average_power_mw(e), e.unoptimized ? "unoptimized" : category_name(e.category));
  const auto dr = data_reduction_factor(p);
  const auto split = bitrate_split(1e6);
  const auto rr = rate_report(CaptureConfig{});
  s += "\n| Quantity | Computed | Reference |\n|---|---:|---:|\n";
  s += fmt::format("| Camera subsystem average power | {:.4f} mW | {:.1f} mW |\n",
                   camera_subsystem_power_mw(p), kRefCameraMw);
  s += fmt::format("| OV7692 average current | {:.4f} mA | {:.2f} mA |\n",
                   average_current_ma(p.entry("OV7692")), kRefOvCurrentMa);
  s += fmt::format("| Single colour camera at {:g} fps | {:.4f} mW | {:.1f} mW |\n", p.lr_fps,
                   single_camera_sensor_power_mw(p), kRefSingleMw);
  s += fmt::format("| Sensor power ratio (single / dual) | {:.3f}x | {:.0f}x |\n",
                   sensor_power_ratio(p), kRefSensorRatio);
  s += fmt::format("| System total (all entries) | {:.4f} mW, {:.4f} mA | {:.0f} mW or {:.0f} mW |\n",
                   total_power_mw(p), total_current_ma(p), kRefTotalMwA, kRefTotalMwB);
  s += fmt::format("| Data reduction, per frame (HR RGB / LR gray samples) | {:.4f}x | {:.0f}x |\n",
                   dr.per_frame, kRefDataFactor);
  s += fmt::format("| Data reduction, full rate (incl. {:g} key/s) | {:.4f}x | - |\n", p.key_fps,
                   dr.full_rate);
  s += fmt::format("| Codec pixel-rate ratio | {:.4f}x | 7-8x |\n", codec_pixel_power_ratio(p));
  s += fmt::format("| Duty-cycle savings at {:g} fps | {:.0f}x | {:.0f}x |\n", p.lr_fps,
                   duty_cycle_savings(p.lr_fps), kRefDutySavings);
  s += fmt::format("| Bitrate split of 1 Mbps (LR, key) | {:.0f} bps, {:.0f} bps | 3/4, 1/4 |\n",
                   split.first, split.second);
  s += fmt::format("| LR stream bit rate | {:.0f} bps | - |\n", rr.lr_bps);
  s += fmt::format("| Key frame size | {:.0f} bits | 5 Mb |\n", rr.key_frame_bits);
  return s;
}

std::string power_report_json(const SystemProfile& p) {
  p.validate();
  const auto dr = data_reduction_factor(p);
  const auto split = bitrate_split(1e6);
  const auto rr = rate_report(CaptureConfig{});
  ordered_json j;
  j["profile"] = ordered_json::parse(p.to_json());
  ordered_json comps = ordered_json::array();
  for (const auto& e : p.entries)
    comps.push_back({{"name", e.name},
                     {"average_current_ma", average_current_ma(e)},
                     {"average_power_mw", average_power_mw(e)},
                     {"unoptimized", e.unoptimized}});
  j["components"] = comps;
  j["camera_subsystem_power_mw"] = {{"computed", camera_subsystem_power_mw(p)},
                                    {"reference", kRefCameraMw}};
  j["ov7692_average_current_ma"] = {{"computed", average_current_ma(p.entry("OV7692"))},
                                    {"reference", kRefOvCurrentMa}};
  j["single_camera_sensor_power_mw"] = {{"computed", single_camera_sensor_power_mw(p)},
                                        {"reference", kRefSingleMw}};
  j["sensor_power_ratio"] = {{"computed", sensor_power_ratio(p)}, {"reference", kRefSensorRatio}};
  j["total_power_mw"] = {{"computed", total_power_mw(p)},
                         {"reference", {kRefTotalMwA, kRefTotalMwB}}};
  j["total_current_ma"] = total_current_ma(p);
  j["data_reduction"] = {{"per_frame", dr.per_frame},
                         {"full_rate", dr.full_rate},
                         {"reference", kRefDataFactor}};
  j["codec_pixel_power_ratio"] = codec_pixel_power_ratio(p);
  j["duty_cycle_savings"] = duty_cycle_savings(p.lr_fps);
  j["bitrate_split_1mbps"] = {split.first, split.second};
  j["lr_bps"] = rr.lr_bps;
  j["key_frame_bits"] = rr.key_frame_bits;
  j["key_radios"] = rr.key_radios;
  return j.dump(2) + "\n";
}

}  // namespace dualcam
