// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_ERROR_HPP_
#define DUALCAM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dualcam {

enum class ErrorKind {
  kInvalidInput,   // wrong colorspace, shape, out-of-range argument
  kConfig,         // unreadable or inconsistent configuration
  kData,           // malformed file or frame payload
  kDesync,         // timelines cannot be paired
  kDecoder,        // a reconstruction plug-in failed
  kDegenerate,     // singular geometry
};

/// Every failure raised by the library carries a kind so front ends can map it
/// to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what,
                    ErrorKind kind = ErrorKind::kInvalidInput) {
  if (!cond) throw Error(kind, what);
}

}  // namespace dualcam

#endif  // DUALCAM_ERROR_HPP_
