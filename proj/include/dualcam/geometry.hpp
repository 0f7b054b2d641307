// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_GEOMETRY_HPP_
#define DUALCAM_GEOMETRY_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "dualcam/frame.hpp"

namespace dualcam {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// 3x3 projective transform, row-major, with h33 fixed to 1.
class Homography {
 public:
  Homography();  // identity

  /// Normalises by m[8]; throws kDegenerate if m[8] is ~0 or det ~0.
  static Homography from_matrix(const std::array<double, 9>& m);
  static Homography translation(double dx, double dy);
  static Homography scaling(double sx, double sy);

  double operator()(int row, int col) const { return m_[row * 3 + col]; }
  const std::array<double, 9>& matrix() const { return m_; }
  double determinant() const;
  bool is_identity() const;

  Homography inverse() const;
  /// (a * b)(p) == a(b(p)).
  friend Homography operator*(const Homography& a, const Homography& b);

 private:
  std::array<double, 9> m_;
};

/// Four point pairs, src in the low-resolution plane, dst in the key-frame plane.
struct Correspondences {
  std::array<Point2, 4> src;
  std::array<Point2, 4> dst;
};

/// Exactly-determined DLT with h33 = 1: an 8x8 system solved by Gaussian
/// elimination with partial pivoting on Hartley-normalised coordinates.
/// Throws kDegenerate when three points are collinear or the system is singular.
Homography estimate_homography(const Correspondences& c);

/// Throws kDegenerate when the projective denominator is within 1e-12 of 0.
Point2 apply_homography(const Homography& h, Point2 p);

struct WarpResult {
  Frame frame;
  std::vector<std::uint8_t> valid;  // 1 where the source sample was in bounds
};

/// Inverse-mapping warp with bilinear sampling. Pixel (i, j) has centre
/// (j + 0.5, i + 0.5); out-of-bounds samples are 0 and flagged invalid.
WarpResult warp_frame(const Frame& frame, const Homography& h, Resolution out);

}  // namespace dualcam

#endif  // DUALCAM_GEOMETRY_HPP_
