// Copyright 2026 The dualcam Authors
// SPDX-License-Identifier: Apache-2.0

#include "dualcam/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "dualcam/error.hpp"

namespace dualcam {
namespace fs = std::filesystem;

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

Frame read_png(const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    fail(ErrorKind::kData, "cannot read PNG " + path.string() + ": " + image.message);

  const bool gray = (image.format & PNG_FORMAT_FLAG_COLOR) == 0;
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  Frame frame({static_cast<int>(image.width), static_cast<int>(image.height)},
              gray ? ColorSpace::kGray8 : ColorSpace::kSrgb8);
  if (!png_image_finish_read(&image, nullptr, frame.bytes().data(), 0, nullptr)) {
    png_image_free(&image);
    fail(ErrorKind::kData, "cannot decode PNG " + path.string() + ": " + image.message);
  }
  return frame;
}

void write_png(const fs::path& path, const Frame& frame) {
  require(frame.is_8bit(), "write_png: only 8-bit frames can be written as PNG");
  std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(path.c_str(), "wb"));
  if (!fp) fail(ErrorKind::kData, "cannot open " + path.string() + " for writing");

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorKind::kData, "libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorKind::kData, "libpng failed writing " + path.string());
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, frame.width(), frame.height(), 8,
               frame.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 3);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(frame.width()) * frame.channels();
  auto bytes = frame.bytes();
  for (int y = 0; y < frame.height(); ++y)
    png_write_row(png, const_cast<png_bytep>(bytes.data() + y * stride));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

std::vector<std::uint8_t> encode_raw(const Frame& frame) {
  std::vector<std::uint8_t> out;
  out.reserve(12 + frame.sample_count() * (frame.is_8bit() ? 1 : 8));
  put_u32(out, static_cast<std::uint32_t>(frame.width()));
  put_u32(out, static_cast<std::uint32_t>(frame.height()));
  put_u32(out, static_cast<std::uint32_t>(frame.channels()));
  for (int c = 0; c < frame.channels(); ++c) {
    for (int y = 0; y < frame.height(); ++y) {
      for (int x = 0; x < frame.width(); ++x) {
        if (frame.is_8bit()) {
          out.push_back(static_cast<std::uint8_t>(frame.at(x, y, c)));
        } else {
          const auto bits = std::bit_cast<std::uint64_t>(frame.at(x, y, c));
          for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
        }
      }
    }
  }
  return out;
}

Frame decode_raw(const std::vector<std::uint8_t>& data, ColorSpace real_cs) {
  if (data.size() < 12) fail(ErrorKind::kData, "raw frame: truncated header");
  const std::uint32_t w = get_u32(data.data());
  const std::uint32_t h = get_u32(data.data() + 4);
  const std::uint32_t c = get_u32(data.data() + 8);
  if (w == 0 || h == 0 || (c != 1 && c != 3) || w > 1u << 16 || h > 1u << 16)
    fail(ErrorKind::kData, "raw frame: bad header");
  const std::size_t n = static_cast<std::size_t>(w) * h * c;
  const std::size_t payload = data.size() - 12;
  ColorSpace cs;
  if (payload == n) {
    cs = c == 1 ? ColorSpace::kGray8 : ColorSpace::kSrgb8;
  } else if (payload == 8 * n) {
    cs = c == 1 ? ColorSpace::kGrayNorm : real_cs;
    require(channels_of(cs) == static_cast<int>(c), "raw frame: colorspace mismatch",
            ErrorKind::kData);
  } else {
    fail(ErrorKind::kData, "raw frame: payload size does not match header");
  }
  Frame f({static_cast<int>(w), static_cast<int>(h)}, cs);
  const std::uint8_t* p = data.data() + 12;
  for (std::uint32_t ch = 0; ch < c; ++ch) {
    for (std::uint32_t y = 0; y < h; ++y) {
      for (std::uint32_t x = 0; x < w; ++x) {
        if (f.is_8bit()) {
          f.set(x, y, ch, *p++);
        } else {
          std::uint64_t bits = 0;
          for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(*p++) << (8 * i);
          f.set(x, y, ch, std::bit_cast<double>(bits));
        }
      }
    }
  }
  return f;
}

void write_raw(const fs::path& path, const Frame& frame) { write_file(path, encode_raw(frame)); }

Frame read_raw(const fs::path& path, ColorSpace real_cs) {
  return decode_raw(read_file(path), real_cs);
}

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kData, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::vector<std::uint8_t>& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kData, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kData, "cannot open " + path.string() + " for writing");
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kData, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string frame_file_name(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06llu.png", static_cast<unsigned long long>(index));
  return buf;
}

std::vector<fs::path> list_pngs(const fs::path& dir) {
  if (!fs::is_directory(dir)) fail(ErrorKind::kData, "not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

std::string png_library_version() { return PNG_LIBPNG_VER_STRING; }

}  // namespace dualcam
