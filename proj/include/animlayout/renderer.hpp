/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "animlayout/font.hpp"
#include "animlayout/png_io.hpp"
#include "animlayout/st_model.hpp"

namespace animlayout {

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RenderConfig {
  double scale = 1.0;                     // output scale factor, > 0
  const GlyphFont* font = nullptr;        // nullptr selects the builtin font
  Color logo_placeholder{0xC8, 0xC8, 0xC8};
  std::optional<std::filesystem::path> background_image_dir;
  // With this set, a missing background image degrades to flat #808080 and
  // a warning instead of a RenderError.
  bool allow_missing_background = true;

  const GlyphFont& glyph_font() const { return font ? *font : builtin_font(); }
};

/// One laid-out text line; coordinates are the top-left pixel of the first
/// glyph cell, in the same space as the bbox handed to fit_text.
struct TextLine {
  std::string text;
  int x = 0;
  int y = 0;
};

/// Glyph placement plan: integer pixel size plus centered lines.
struct TextPlan {
  int size = 0;
  std::vector<TextLine> lines;
};

/// Largest integer pixel size whose single line fits 90% of the box; wraps
/// at spaces when that size falls below 8 px. Minimum glyph size is 4 px;
/// nullopt means the text is unrenderable in this box.
std::optional<TextPlan> fit_text(const std::string& text, const BBox& bbox, const GlyphFont& font);

/// Rasterize one frame. Paint order: background, foreground objects in list
/// order (animated via the timeline), banner strips, banner objects.
/// Throws std::out_of_range for a frame outside [0, duration).
Frame render_frame(const VideoST& doc, int frame_index, const RenderConfig& cfg,
                   std::vector<std::string>* warnings = nullptr);

struct RenderManifest {
  int fps = 0;
  int frames = 0;
  int width = 0;
  int height = 0;
  std::vector<std::string> warnings;

  std::string to_json() const;
};

/// Write frames 0..duration-1 as frame_%05d.png plus manifest.json.
/// Deterministic for fixed (doc, cfg); `jobs` rasterizes frames in parallel.
RenderManifest render_video(const VideoST& doc, const RenderConfig& cfg,
                            const std::filesystem::path& out_dir, int jobs = 1);

}  // namespace animlayout
