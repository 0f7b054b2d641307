// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "app.hpp"
#include "dualcam/color.hpp"
#include "dualcam/error.hpp"
#include "dualcam/geometry.hpp"
#include "dualcam/kernel_check.hpp"
#include "dualcam/metrics.hpp"
#include "dualcam/powermodel.hpp"
#include "dualcam/repair.hpp"
#include "dualcam/wire.hpp"

namespace py = pybind11;
using namespace dualcam;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

Frame frame_from_array(const U8Array& a) {
  if (a.ndim() == 2) {
    Frame f({static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0))}, ColorSpace::kGray8);
    std::memcpy(f.bytes().data(), a.data(), f.bytes().size());
    return f;
  }
  if (a.ndim() == 3 && a.shape(2) == 3) {
    Frame f({static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0))}, ColorSpace::kSrgb8);
    std::memcpy(f.bytes().data(), a.data(), f.bytes().size());
    return f;
  }
  throw Error(ErrorKind::kInvalidInput, "expected an HxW or HxWx3 uint8 array");
}

U8Array array_from_frame(const Frame& f) {
  std::vector<py::ssize_t> shape{f.height(), f.width()};
  if (f.channels() == 3) shape.push_back(3);
  U8Array a(shape);
  std::memcpy(a.mutable_data(), f.bytes().data(), f.bytes().size());
  return a;
}

Homography homography_from(const std::array<double, 9>& m) { return Homography::from_matrix(m); }

}  // namespace

PYBIND11_MODULE(_dualcam, m) {
  m.doc() = "Dual-mode camera simulator core";

  py::register_exception<Error>(m, "DualcamError", PyExc_RuntimeError);

  m.def("run_cli", static_cast<int (*)(const std::vector<std::string>&)>(&cli::run_cli), py::arg("args"),
        "Run a dualcam command line (without the program name); returns the exit code.");

  m.def("srgb_to_lab", [](double r, double g, double b) {
    const Lab lab = srgb_to_lab(r, g, b);
    return std::make_tuple(lab.l, lab.a, lab.b);
  });
  m.def("lab_to_srgb", [](double l, double a, double b) { return lab_to_srgb(Lab{l, a, b}); });

  m.def("psnr", [](const U8Array& a, const U8Array& b) { return psnr(frame_from_array(a), frame_from_array(b)); });
  m.def("ssim", [](const U8Array& a, const U8Array& b) { return ssim(frame_from_array(a), frame_from_array(b)); });

  m.def("estimate_homography",
        [](const std::vector<std::pair<double, double>>& src, const std::vector<std::pair<double, double>>& dst) {
          if (src.size() != 4 || dst.size() != 4)
            throw Error(ErrorKind::kInvalidInput, "estimate_homography needs exactly four point pairs");
          Correspondences c;
          for (int i = 0; i < 4; ++i) {
            c.src[i] = {src[i].first, src[i].second};
            c.dst[i] = {dst[i].first, dst[i].second};
          }
          return estimate_homography(c).matrix();
        });
  m.def("apply_homography", [](const std::array<double, 9>& h, double x, double y) {
    const Point2 p = apply_homography(homography_from(h), {x, y});
    return std::make_pair(p.x, p.y);
  });

  m.def("packetize", [](const U8Array& a, bool key_stream, std::uint32_t frame_seq, std::uint32_t ts) {
    Frame f = frame_from_array(a);
    f.frame_index = frame_seq;
    f.timestamp_ms = ts;
    std::vector<py::bytes> out;
    for (const auto& p : encode_all(packetize(f, key_stream)))
      out.emplace_back(reinterpret_cast<const char*>(p.data()), p.size());
    return out;
  }, py::arg("frame"), py::arg("key_stream") = false, py::arg("frame_seq") = 0, py::arg("timestamp_ms") = 0);

  m.def("reassemble", [](const std::vector<py::bytes>& packets, int width, int height, bool rgb, std::uint32_t frame_seq) {
    std::vector<EncodedPacket> enc;
    for (const auto& b : packets) {
      const std::string s = b;
      enc.emplace_back(s.begin(), s.end());
    }
    const Reassembled r = reassemble(enc, {{width, height}, rgb ? ColorSpace::kSrgb8 : ColorSpace::kGray8}, frame_seq);
    return py::make_tuple(array_from_frame(r.frame), r.losses, r.timestamp_known ? py::cast(r.frame.timestamp_ms) : py::none());
  }, py::arg("packets"), py::arg("width"), py::arg("height"), py::arg("rgb") = false, py::arg("frame_seq") = 0);

  m.def("repair", [](const U8Array& a, const std::map<int, int>& losses) {
    return array_from_frame(repair_lost_lines(frame_from_array(a), losses).frame);
  });

  m.def("power_report", [](const std::string& format) {
    const SystemProfile p = SystemProfile::defaults();
    return format == "json" ? power_report_json(p) : power_report_markdown(p);
  }, py::arg("format") = "json");

  m.def("kernel_checks", [](std::uint64_t seed) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& r : run_kernel_checks(seed)) out.emplace_back(r.name, r.passed, r.detail);
    return out;
  }, py::arg("seed") = 0);
}
