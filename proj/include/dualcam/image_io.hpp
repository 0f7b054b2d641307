// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DUALCAM_IMAGE_IO_HPP_
#define DUALCAM_IMAGE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dualcam/frame.hpp"

namespace dualcam {

/// Reads an 8-bit PNG as GRAY8 (gray / gray+alpha) or SRGB8 (anything else).
Frame read_png(const std::filesystem::path& path);
/// Writes a GRAY8 or SRGB8 frame. Output bytes depend only on the pixels.
void write_png(const std::filesystem::path& path, const Frame& frame);

// Raw planar dump: u32 LE width, height, channels, then the channel planes.
// 8-bit colorspaces store one byte per sample, real colorspaces one f64 LE.
// The sample width is recovered from the file size.
std::vector<std::uint8_t> encode_raw(const Frame& frame);
Frame decode_raw(const std::vector<std::uint8_t>& data, ColorSpace real_cs = ColorSpace::kLabNorm);
void write_raw(const std::filesystem::path& path, const Frame& frame);
Frame read_raw(const std::filesystem::path& path, ColorSpace real_cs = ColorSpace::kLabNorm);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& data);
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Version string of the linked PNG library.
std::string png_library_version();

/// "000042.png" style name used by every frame directory.
std::string frame_file_name(std::uint64_t index);
/// Sorted list of *.png files in a directory.
std::vector<std::filesystem::path> list_pngs(const std::filesystem::path& dir);

}  // namespace dualcam

#endif  // DUALCAM_IMAGE_IO_HPP_
