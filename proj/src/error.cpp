// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/error.hpp"

namespace dualcam {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kData: return "data";
    case ErrorKind::kDesync: return "desync";
    case ErrorKind::kDecoder: return "decoder";
    case ErrorKind::kDegenerate: return "degenerate";
  }
  return "unknown";
}

}  // namespace dualcam
