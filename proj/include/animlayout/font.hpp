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
#include <vector>

namespace animlayout {

/// Fixed-cell monospace bitmap font covering printable ASCII (32..126).
/// Row bits are LSB-first: bit x of rows[c][y] is the pixel at (x, y).
struct GlyphFont {
  int cell_w = 0;
  int cell_h = 0;
  std::vector<std::vector<uint8_t>> glyphs;  // 95 entries, cell_h bytes each

  bool covered(char c) const { return c >= 32 && c <= 126; }
  const std::vector<uint8_t>& rows(char c) const { return glyphs[static_cast<size_t>(c - 32)]; }

  // Pixel query at an arbitrary integer size (glyph height); the cell is
  // resampled by nearest neighbor. `px` in [0, advance(size)), `py` in
  // [0, size).
  int advance(int size) const;
  bool pixel(char c, int size, int px, int py) const;
};

/// The compiled-in 8x16 font.
const GlyphFont& builtin_font();

/// Load a font from a PGM strip of 95 horizontally laid out cells
/// (width divisible by 95); nonzero pixels are glyph pixels.
GlyphFont load_font_strip(const std::filesystem::path& pgm_path);

}  // namespace animlayout
