// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "app.hpp"

int main(int argc, char** argv) { return dualcam::cli::run_cli(argc, argv); }
