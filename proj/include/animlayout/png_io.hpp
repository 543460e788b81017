/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace animlayout {

/// Row-major RGB frame buffer, 3 bytes per pixel.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  Frame() = default;
  Frame(int w, int h) : width(w), height(h), pixels(static_cast<size_t>(w) * h * 3, 0) {}

  uint8_t* at(int x, int y) { return pixels.data() + 3 * (static_cast<size_t>(y) * width + x); }
  const uint8_t* at(int x, int y) const {
    return pixels.data() + 3 * (static_cast<size_t>(y) * width + x);
  }
};

/// Write an 8-bit RGB PNG with fixed encoder settings, so identical frames
/// produce identical files. Throws std::runtime_error on IO failure.
void write_png(const std::filesystem::path& path, const Frame& frame);

/// Read an 8-bit RGB PNG (gray/palette/alpha inputs are expanded).
/// Returns nullopt when the file is missing or not a decodable PNG.
std::optional<Frame> read_png(const std::filesystem::path& path);

}  // namespace animlayout
