// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dualcam/error.hpp"

namespace dualcam {
namespace {

using Mat3 = std::array<double, 9>;

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i * 3 + j] = a[i * 3] * b[j] + a[i * 3 + 1] * b[3 + j] + a[i * 3 + 2] * b[6 + j];
  return r;
}

Mat3 adjugate(const Mat3& m) {
  return {m[4] * m[8] - m[5] * m[7], m[2] * m[7] - m[1] * m[8], m[1] * m[5] - m[2] * m[4],
          m[5] * m[6] - m[3] * m[8], m[0] * m[8] - m[2] * m[6], m[2] * m[3] - m[0] * m[5],
          m[3] * m[7] - m[4] * m[6], m[1] * m[6] - m[0] * m[7], m[0] * m[4] - m[1] * m[3]};
}

double det3(const Mat3& m) {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

bool collinear(const Point2& a, const Point2& b, const Point2& c) {
  const double ux = b.x - a.x, uy = b.y - a.y;
  const double vx = c.x - a.x, vy = c.y - a.y;
  const double cross = ux * vy - uy * vx;
  const double scale = std::hypot(ux, uy) * std::hypot(vx, vy);
  return std::abs(cross) <= 1e-10 * scale || scale == 0.0;
}

bool any_collinear(const std::array<Point2, 4>& p) {
  return collinear(p[0], p[1], p[2]) || collinear(p[0], p[1], p[3]) ||
         collinear(p[0], p[2], p[3]) || collinear(p[1], p[2], p[3]);
}

// Similarity taking the centroid to the origin and the mean distance to sqrt(2).
Mat3 normalizer(const std::array<Point2, 4>& p) {
  double cx = 0.0, cy = 0.0;
  for (const auto& q : p) {
    cx += q.x;
    cy += q.y;
  }
  cx /= 4.0;
  cy /= 4.0;
  double d = 0.0;
  for (const auto& q : p) d += std::hypot(q.x - cx, q.y - cy);
  const double s = std::sqrt(2.0) / (d / 4.0);
  return {s, 0.0, -s * cx, 0.0, s, -s * cy, 0.0, 0.0, 1.0};
}

Point2 map(const Mat3& m, Point2 p) {
  const double w = m[6] * p.x + m[7] * p.y + m[8];
  return {(m[0] * p.x + m[1] * p.y + m[2]) / w, (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

// Solves a x = b in place (a is 8x8 row-major); false if singular.
bool solve8(std::array<double, 64>& a, std::array<double, 8>& b) {
  constexpr int n = 8;
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) <= 1e-12 * scale) return false;
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
      std::swap(b[col], b[piv]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
      b[r] -= f * b[col];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[r];
    for (int k = r + 1; k < n; ++k) acc -= a[r * n + k] * b[k];
    b[r] = acc / a[r * n + r];
  }
  return true;
}

}  // namespace

Homography::Homography() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

Homography Homography::from_matrix(const std::array<double, 9>& m) {
  double norm = 0.0;
  for (double v : m) norm = std::max(norm, std::abs(v));
  if (!(norm > 0.0) || std::abs(m[8]) <= 1e-12 * norm)
    fail(ErrorKind::kDegenerate, "homography: h33 is zero, cannot normalise to 1");
  Homography h;
  for (int i = 0; i < 9; ++i) h.m_[i] = m[i] / m[8];
  h.m_[8] = 1.0;
  if (std::abs(h.determinant()) <= 1e-14)
    fail(ErrorKind::kDegenerate, "homography: matrix is singular");
  return h;
}

Homography Homography::translation(double dx, double dy) {
  return from_matrix({1, 0, dx, 0, 1, dy, 0, 0, 1});
}

Homography Homography::scaling(double sx, double sy) {
  return from_matrix({sx, 0, 0, 0, sy, 0, 0, 0, 1});
}

double Homography::determinant() const { return det3(m_); }

bool Homography::is_identity() const { return m_ == Homography().m_; }

Homography Homography::inverse() const { return from_matrix(adjugate(m_)); }

Homography operator*(const Homography& a, const Homography& b) {
  return Homography::from_matrix(multiply(a.m_, b.m_));
}

Homography estimate_homography(const Correspondences& c) {
  if (any_collinear(c.src) || any_collinear(c.dst))
    fail(ErrorKind::kDegenerate, "estimate_homography: three reference points are collinear");

  const Mat3 ts = normalizer(c.src);
  const Mat3 td = normalizer(c.dst);
  std::array<double, 64> a{};
  std::array<double, 8> b{};
  for (int i = 0; i < 4; ++i) {
    const Point2 s = map(ts, c.src[i]);
    const Point2 d = map(td, c.dst[i]);
    double* rx = &a[(2 * i) * 8];
    double* ry = &a[(2 * i + 1) * 8];
    rx[0] = s.x; rx[1] = s.y; rx[2] = 1.0; rx[6] = -d.x * s.x; rx[7] = -d.x * s.y;
    ry[3] = s.x; ry[4] = s.y; ry[5] = 1.0; ry[6] = -d.y * s.x; ry[7] = -d.y * s.y;
    b[2 * i] = d.x;
    b[2 * i + 1] = d.y;
  }
  if (!solve8(a, b))
    fail(ErrorKind::kDegenerate, "estimate_homography: correspondence system is singular");

  const Mat3 hn{b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7], 1.0};
  const Mat3 td_inv = adjugate(td);  // similarity: adjugate is a scalar multiple of the inverse
  return Homography::from_matrix(multiply(td_inv, multiply(hn, ts)));
}

Point2 apply_homography(const Homography& h, Point2 p) {
  const auto& m = h.matrix();
  const double w = m[6] * p.x + m[7] * p.y + 1.0;
  if (std::abs(w) <= 1e-12)
    fail(ErrorKind::kDegenerate, "apply_homography: point maps to infinity");
  return {(m[0] * p.x + m[1] * p.y + m[2]) / w, (m[3] * p.x + m[4] * p.y + m[5]) / w};
}

WarpResult warp_frame(const Frame& frame, const Homography& h, Resolution out) {
  require(!frame.empty(), "warp_frame: empty frame");
  const Homography inv = h.inverse();
  const auto& m = inv.matrix();
  WarpResult r{Frame(out, frame.colorspace()), std::vector<std::uint8_t>(out.area(), 0)};
  r.frame.copy_meta_from(frame);
  const int w = frame.width();
  const int hh = frame.height();
  constexpr double kEps = 1e-9;

  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const double px = x + 0.5;
      const double py = y + 0.5;
      const double den = m[6] * px + m[7] * py + 1.0;
      if (std::abs(den) <= 1e-12) continue;
      double fx = (m[0] * px + m[1] * py + m[2]) / den - 0.5;
      double fy = (m[3] * px + m[4] * py + m[5]) / den - 0.5;
      if (fx < -kEps || fy < -kEps || fx > w - 1 + kEps || fy > hh - 1 + kEps) continue;
      fx = std::clamp(fx, 0.0, static_cast<double>(w - 1));
      fy = std::clamp(fy, 0.0, static_cast<double>(hh - 1));
      const int x0 = static_cast<int>(std::floor(fx));
      const int y0 = static_cast<int>(std::floor(fy));
      const int x1 = std::min(x0 + 1, w - 1);
      const int y1 = std::min(y0 + 1, hh - 1);
      const double ax = fx - x0;
      const double ay = fy - y0;
      for (int c = 0; c < frame.channels(); ++c) {
        const double top = frame.at(x0, y0, c) * (1.0 - ax) + frame.at(x1, y0, c) * ax;
        const double bot = frame.at(x0, y1, c) * (1.0 - ax) + frame.at(x1, y1, c) * ax;
        r.frame.set(x, y, c, top * (1.0 - ay) + bot * ay);
      }
      r.valid[static_cast<std::size_t>(y) * out.width + x] = 1;
    }
  }
  return r;
}

}  // namespace dualcam
