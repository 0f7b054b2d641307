// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_CLI_APP_HPP_
#define DUALCAM_CLI_APP_HPP_

#include <string>
#include <vector>

#include "dualcam/error.hpp"

namespace dualcam::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // a check reported failures
  kExitConfig = 2,
  kExitData = 3,
  kExitDesync = 4,
  kExitDecoder = 5,
};

int exit_code_for(ErrorKind kind);

/// Runs the command line; args excludes the program name.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace dualcam::cli

#endif  // DUALCAM_CLI_APP_HPP_
