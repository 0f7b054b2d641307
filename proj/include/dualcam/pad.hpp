// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_PAD_HPP_
#define DUALCAM_PAD_HPP_

#include "dualcam/frame.hpp"

namespace dualcam {

/// Reflect-mode border extension (edge sample not repeated):
/// row [1,2,3] padded by 2 becomes [3,2,1,2,3,2,1]. Requires pad < min(w, h).
Frame reflect_pad(const Frame& frame, int pad);

/// Removes `pad` samples from every border.
Frame crop_pad(const Frame& frame, int pad);

/// Index into [0, n) after reflecting about the edge samples.
int reflect_index(int i, int n);

}  // namespace dualcam

#endif  // DUALCAM_PAD_HPP_
