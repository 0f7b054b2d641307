// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/color.hpp"

#include <cmath>

#include "dualcam/error.hpp"

namespace dualcam {
namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

constexpr Mat3 kRgbToXyz{{{0.4124564, 0.3575761, 0.1804375},
                          {0.2126729, 0.7151522, 0.0721750},
                          {0.0193339, 0.1191920, 0.9503041}}};

Mat3 invert(const Mat3& m) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  Mat3 r{};
  r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return r;
}

const Mat3& xyz_to_rgb() {
  static const Mat3 inv = invert(kRgbToXyz);
  return inv;
}

// Reference white is the image of sRGB (1,1,1), so white maps to a* = b* = 0.
const std::array<double, 3>& white() {
  static const std::array<double, 3> w = [] {
    std::array<double, 3> s{};
    for (int i = 0; i < 3; ++i)
      s[i] = kRgbToXyz[i][0] + kRgbToXyz[i][1] + kRgbToXyz[i][2];
    return s;
  }();
  return w;
}

double srgb_to_linear_exact(double v8) {
  const double c = v8 / 255.0;
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

// Byte inputs hit a table holding the same values.
double srgb_to_linear(double v8) {
  static const auto lut = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = srgb_to_linear_exact(i);
    return t;
  }();
  if (v8 >= 0.0 && v8 <= 255.0 && v8 == std::floor(v8)) return lut[static_cast<int>(v8)];
  return srgb_to_linear_exact(v8);
}

double linear_to_srgb(double lin) {
  const double c =
      lin <= 0.0031308 ? lin * 12.92 : 1.055 * std::pow(lin, 1.0 / 2.4) - 0.055;
  return c * 255.0;
}

constexpr double kDelta = 6.0 / 29.0;

double lab_f(double t) {
  return t > kDelta * kDelta * kDelta ? std::cbrt(t)
                                      : t / (3.0 * kDelta * kDelta) + 4.0 / 29.0;
}

double lab_f_inv(double f) {
  return f > kDelta ? f * f * f : 3.0 * kDelta * kDelta * (f - 4.0 / 29.0);
}

void check(const Frame& f, ColorSpace cs, const char* op) {
  require(f.colorspace() == cs && f.channels() == channels_of(cs),
          std::string(op) + ": expected " + to_string(cs) + " input, got " +
              to_string(f.colorspace()));
}

}  // namespace

Lab srgb_to_lab(double r, double g, double b) {
  const std::array<double, 3> lin{srgb_to_linear(r), srgb_to_linear(g),
                                  srgb_to_linear(b)};
  std::array<double, 3> f{};
  for (int i = 0; i < 3; ++i) {
    const double xyz = kRgbToXyz[i][0] * lin[0] + kRgbToXyz[i][1] * lin[1] +
                       kRgbToXyz[i][2] * lin[2];
    f[i] = lab_f(xyz / white()[i]);
  }
  return {116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])};
}

std::array<double, 3> lab_to_srgb(const Lab& lab) {
  const double fy = (lab.l + 16.0) / 116.0;
  const std::array<double, 3> xyz{lab_f_inv(fy + lab.a / 500.0) * white()[0],
                                  lab_f_inv(fy) * white()[1],
                                  lab_f_inv(fy - lab.b / 200.0) * white()[2]};
  const Mat3& m = xyz_to_rgb();
  std::array<double, 3> rgb{};
  for (int i = 0; i < 3; ++i)
    rgb[i] = linear_to_srgb(m[i][0] * xyz[0] + m[i][1] * xyz[1] + m[i][2] * xyz[2]);
  return rgb;
}

double gray_level(double r, double g, double b) {
  return srgb_to_lab(r, g, b).l * 2.55;
}

Frame rgb_to_lab(const Frame& frame) {
  check(frame, ColorSpace::kSrgb8, "rgb_to_lab");
  Frame out(frame.resolution(), ColorSpace::kLabNorm);
  out.copy_meta_from(frame);
  auto src = frame.bytes();
  auto dst = out.reals();
  for (std::size_t i = 0; i < src.size(); i += 3) {
    const Lab lab = srgb_to_lab(src[i], src[i + 1], src[i + 2]);
    dst[i] = normalize_l(lab.l);
    dst[i + 1] = normalize_ab(lab.a);
    dst[i + 2] = normalize_ab(lab.b);
  }
  return out;
}

Frame lab_to_rgb(const Frame& frame) {
  check(frame, ColorSpace::kLabNorm, "lab_to_rgb");
  Frame out(frame.resolution(), ColorSpace::kSrgb8);
  out.copy_meta_from(frame);
  auto src = frame.reals();
  auto dst = out.bytes();
  for (std::size_t i = 0; i < src.size(); i += 3) {
    const auto rgb = lab_to_srgb({denormalize_l(src[i]), denormalize_ab(src[i + 1]),
                                  denormalize_ab(src[i + 2])});
    for (int c = 0; c < 3; ++c) dst[i + c] = to_u8(rgb[c]);
  }
  return out;
}

Frame to_gray(const Frame& frame) {
  check(frame, ColorSpace::kSrgb8, "to_gray");
  Frame out(frame.resolution(), ColorSpace::kGray8);
  out.copy_meta_from(frame);
  auto src = frame.bytes();
  auto dst = out.bytes();
  for (std::size_t i = 0, p = 0; i < src.size(); i += 3, ++p)
    dst[p] = to_u8(gray_level(src[i], src[i + 1], src[i + 2]));
  return out;
}

Frame gray_to_norm(const Frame& gray) {
  check(gray, ColorSpace::kGray8, "gray_to_norm");
  Frame out(gray.resolution(), ColorSpace::kGrayNorm);
  out.copy_meta_from(gray);
  auto src = gray.bytes();
  auto dst = out.reals();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] / 127.5 - 1.0;
  return out;
}

Frame norm_to_gray(const Frame& norm) {
  check(norm, ColorSpace::kGrayNorm, "norm_to_gray");
  Frame out(norm.resolution(), ColorSpace::kGray8);
  out.copy_meta_from(norm);
  auto src = norm.reals();
  auto dst = out.bytes();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = to_u8((src[i] + 1.0) * 127.5);
  return out;
}

}  // namespace dualcam
