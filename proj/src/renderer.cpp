/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "animlayout/renderer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <set>
#include <thread>

#include <json.hpp>

#include "animlayout/hash.hpp"
#include "animlayout/timeline.hpp"

namespace animlayout {

std::string fnv1a64_hex(std::string_view data) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

namespace {

constexpr Color kMissingBackgroundGray{0x80, 0x80, 0x80};
constexpr Color kLogoBorder{0x00, 0x00, 0x00};

struct PixelRect {
  int x0, y0, x1, y1;  // half-open

  bool empty() const { return x0 >= x1 || y0 >= y1; }
  PixelRect clipped(int w, int h) const {
    return {std::max(x0, 0), std::max(y0, 0), std::min(x1, w), std::min(y1, h)};
  }
  bool contains(int x, int y) const { return x >= x0 && x < x1 && y >= y0 && y < y1; }
};

PixelRect to_pixels(const BBox& b, double scale) {
  return {static_cast<int>(std::llround(b.x1 * scale)),
          static_cast<int>(std::llround(b.y1 * scale)),
          static_cast<int>(std::llround((b.x1 + b.w) * scale)),
          static_cast<int>(std::llround((b.y1 + b.h) * scale))};
}

void fill_rect(Frame& frame, const PixelRect& rect, Color c) {
  const PixelRect r = rect.clipped(frame.width, frame.height);
  if (r.empty()) return;
  for (int y = r.y0; y < r.y1; ++y) {
    uint8_t* p = frame.at(r.x0, y);
    for (int x = r.x0; x < r.x1; ++x) {
      *p++ = static_cast<uint8_t>(c.r);
      *p++ = static_cast<uint8_t>(c.g);
      *p++ = static_cast<uint8_t>(c.b);
    }
  }
}

void draw_border(Frame& frame, const PixelRect& rect, Color c) {
  const PixelRect r = rect.clipped(frame.width, frame.height);
  if (r.empty()) return;
  for (int x = r.x0; x < r.x1; ++x) {
    if (rect.y0 >= 0 && rect.y0 < frame.height) {
      auto* p = frame.at(x, rect.y0);
      p[0] = c.r; p[1] = c.g; p[2] = c.b;
    }
    if (rect.y1 - 1 >= 0 && rect.y1 - 1 < frame.height) {
      auto* p = frame.at(x, rect.y1 - 1);
      p[0] = c.r; p[1] = c.g; p[2] = c.b;
    }
  }
  for (int y = r.y0; y < r.y1; ++y) {
    if (rect.x0 >= 0 && rect.x0 < frame.width) {
      auto* p = frame.at(rect.x0, y);
      p[0] = c.r; p[1] = c.g; p[2] = c.b;
    }
    if (rect.x1 - 1 >= 0 && rect.x1 - 1 < frame.width) {
      auto* p = frame.at(rect.x1 - 1, y);
      p[0] = c.r; p[1] = c.g; p[2] = c.b;
    }
  }
}

// Bytes outside printable ASCII paint as '?'. Multi-byte characters widen
// to one '?' per byte.
char drawable(char c) { return (c >= 32 && c <= 126) ? c : '?'; }

void draw_text_plan(Frame& frame, const TextPlan& plan, const PixelRect& clip, Color c,
                    const GlyphFont& font) {
  const int adv = font.advance(plan.size);
  const PixelRect bounds = clip.clipped(frame.width, frame.height);
  if (bounds.empty()) return;
  for (const TextLine& line : plan.lines) {
    for (size_t i = 0; i < line.text.size(); ++i) {
      const char ch = drawable(line.text[i]);
      const int gx = line.x + static_cast<int>(i) * adv;
      for (int py = 0; py < plan.size; ++py) {
        const int y = line.y + py;
        if (y < bounds.y0 || y >= bounds.y1) continue;
        for (int px = 0; px < adv; ++px) {
          const int x = gx + px;
          if (x < bounds.x0 || x >= bounds.x1) continue;
          if (font.pixel(ch, plan.size, px, py)) {
            auto* p = frame.at(x, y);
            p[0] = static_cast<uint8_t>(c.r);
            p[1] = static_cast<uint8_t>(c.g);
            p[2] = static_cast<uint8_t>(c.b);
          }
        }
      }
    }
  }
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::string word;
  for (char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!word.empty()) words.push_back(std::move(word)), word.clear();
    } else {
      word.push_back(c);
    }
  }
  if (!word.empty()) words.push_back(std::move(word));
  return words;
}

// Greedy word wrap at `size`; nullopt when some word alone exceeds the
// width or the stacked lines exceed the height.
std::optional<std::vector<std::string>> wrap_lines(const std::vector<std::string>& words,
                                                   const GlyphFont& font, int size,
                                                   double max_w, double max_h) {
  const int adv = font.advance(size);
  std::vector<std::string> lines;
  std::string current;
  for (const std::string& word : words) {
    if (static_cast<double>(word.size()) * adv > max_w) return std::nullopt;
    const std::string candidate = current.empty() ? word : current + " " + word;
    if (static_cast<double>(candidate.size()) * adv <= max_w) {
      current = candidate;
    } else {
      lines.push_back(std::move(current));
      current = word;
    }
  }
  if (!current.empty()) lines.push_back(std::move(current));
  if (lines.empty()) return std::nullopt;
  if (static_cast<double>(lines.size()) * size > max_h) return std::nullopt;
  return lines;
}

TextPlan center_lines(const std::vector<std::string>& lines, int size, const BBox& bbox,
                      const GlyphFont& font) {
  TextPlan plan;
  plan.size = size;
  const int adv = font.advance(size);
  const double block_h = static_cast<double>(lines.size()) * size;
  const double y_top = bbox.y1 + (bbox.h - block_h) / 2.0;
  for (size_t i = 0; i < lines.size(); ++i) {
    const double line_w = static_cast<double>(lines[i].size()) * adv;
    TextLine out;
    out.text = lines[i];
    out.x = static_cast<int>(std::llround(bbox.x1 + (bbox.w - line_w) / 2.0));
    out.y = static_cast<int>(std::llround(y_top + static_cast<double>(i) * size));
    plan.lines.push_back(std::move(out));
  }
  return plan;
}

}  // namespace

std::optional<TextPlan> fit_text(const std::string& text, const BBox& bbox,
                                 const GlyphFont& font) {
  if (bbox.area() <= 0.0) return std::nullopt;
  const double max_w = 0.9 * bbox.w;
  const double max_h = 0.9 * bbox.h;
  const int size_cap = static_cast<int>(std::floor(max_h));
  if (size_cap < 4) return std::nullopt;

  const auto fits_single = [&](int size) {
    return static_cast<double>(text.size()) * font.advance(size) <= max_w;
  };

  // Largest single-line size under the height cap. Advance is monotone in
  // size, so binary search works.
  int single = 0;
  {
    int lo = 1, hi = size_cap;
    while (lo <= hi) {
      const int mid = (lo + hi) / 2;
      if (fits_single(mid)) {
        single = mid;
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
  }
  if (single >= 8) {
    return center_lines({text}, single, bbox, font);
  }

  // Single-line would drop below 8 px: wrap at spaces instead.
  const std::vector<std::string> words = split_words(text);
  for (int size = size_cap; size >= 4; --size) {
    if (auto lines = wrap_lines(words, font, size, max_w, max_h)) {
      return center_lines(*lines, size, bbox, font);
    }
  }
  return std::nullopt;
}

namespace {

BBox scaled(const BBox& b, double s) { return {b.x1 * s, b.y1 * s, b.w * s, b.h * s}; }

void note(std::vector<std::string>* warnings, std::string message) {
  if (warnings) warnings->push_back(std::move(message));
}

void draw_object(Frame& frame, const LayoutObject& obj, const BBox& box, const RenderConfig& cfg,
                 std::vector<std::string>* warnings) {
  const PixelRect rect = to_pixels(box, cfg.scale);
  if (obj.cls == ObjectClass::Logo) {
    fill_rect(frame, rect, cfg.logo_placeholder);
    draw_border(frame, rect, kLogoBorder);
    return;
  }
  const TextAttrs& attrs = *obj.attrs;
  if (attrs.textbox_color) fill_rect(frame, rect, *attrs.textbox_color);
  const auto plan = fit_text(attrs.raw_text, scaled(box, cfg.scale), cfg.glyph_font());
  if (!plan) {
    note(warnings, "text \"" + attrs.raw_text + "\" does not fit its box; glyphs skipped");
    return;
  }
  draw_text_plan(frame, *plan, rect, attrs.text_color, cfg.glyph_font());
}

void paint_background(Frame& frame, const VideoST& doc, const RenderConfig& cfg,
                      std::vector<std::string>* warnings) {
  if (doc.background.kind == BackgroundKind::SolidColor) {
    fill_rect(frame, {0, 0, frame.width, frame.height}, doc.background.color);
    return;
  }
  std::optional<Frame> image;
  if (cfg.background_image_dir) {
    image = read_png(*cfg.background_image_dir / (fnv1a64_hex(doc.background.caption) + ".png"));
  }
  if (!image) {
    if (!cfg.allow_missing_background) {
      throw RenderError("no background image for caption \"" + doc.background.caption + "\"");
    }
    note(warnings, "no background image for caption \"" + doc.background.caption +
                       "\"; used flat gray");
    fill_rect(frame, {0, 0, frame.width, frame.height}, kMissingBackgroundGray);
    return;
  }
  // Nearest-neighbor resample onto the canvas.
  for (int y = 0; y < frame.height; ++y) {
    const int sy = static_cast<int>(static_cast<int64_t>(y) * image->height / frame.height);
    for (int x = 0; x < frame.width; ++x) {
      const int sx = static_cast<int>(static_cast<int64_t>(x) * image->width / frame.width);
      const uint8_t* s = image->at(sx, sy);
      uint8_t* d = frame.at(x, y);
      d[0] = s[0], d[1] = s[1], d[2] = s[2];
    }
  }
}

}  // namespace

Frame render_frame(const VideoST& doc, int frame_index, const RenderConfig& cfg,
                   std::vector<std::string>* warnings) {
  if (cfg.scale <= 0.0) throw std::invalid_argument("render: scale must be > 0");
  if (frame_index < 0 || frame_index >= doc.animation.duration) {
    throw std::out_of_range("render_frame: frame index outside the animation");
  }

  Frame frame(std::max(1, static_cast<int>(std::llround(doc.canvas.width * cfg.scale))),
              std::max(1, static_cast<int>(std::llround(doc.canvas.height * cfg.scale))));

  paint_background(frame, doc, cfg, warnings);

  for (size_t i = 0; i < doc.foreground.size(); ++i) {
    const auto box = object_box_at(doc, static_cast<int>(i), frame_index);
    if (box) draw_object(frame, doc.foreground[i], *box, cfg, warnings);
  }
  for (const Banner& banner : doc.banners) {
    fill_rect(frame, to_pixels(banner.bbox, cfg.scale), banner.color);
  }
  for (const Banner& banner : doc.banners) {
    for (const LayoutObject& obj : banner.objects) {
      draw_object(frame, obj, obj.bbox, cfg, warnings);
    }
  }
  return frame;
}

std::string RenderManifest::to_json() const {
  nlohmann::json j;
  j["fps"] = fps;
  j["frames"] = frames;
  j["width"] = width;
  j["height"] = height;
  j["warnings"] = warnings;
  return j.dump();
}

RenderManifest render_video(const VideoST& doc, const RenderConfig& cfg,
                            const std::filesystem::path& out_dir, int jobs) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + out_dir.string());

  const int frames = doc.animation.duration;
  std::set<std::string> warning_set;
  std::mutex mutex;
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error;

  const auto worker = [&] {
    for (int f = next.fetch_add(1); f < frames && !failed; f = next.fetch_add(1)) {
      try {
        std::vector<std::string> local;
        const Frame frame = render_frame(doc, f, cfg, &local);
        char name[32];
        std::snprintf(name, sizeof(name), "frame_%05d.png", f);
        write_png(out_dir / name, frame);
        if (!local.empty()) {
          std::lock_guard<std::mutex> lock(mutex);
          warning_set.insert(local.begin(), local.end());
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!failed.exchange(true)) error = e.what();
      }
    }
  };

  const int n_workers = std::clamp(jobs, 1, std::max(1, frames));
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed) throw std::runtime_error(error);

  RenderManifest manifest;
  manifest.fps = doc.canvas.fps;
  manifest.frames = frames;
  manifest.width = std::max(1, static_cast<int>(std::llround(doc.canvas.width * cfg.scale)));
  manifest.height = std::max(1, static_cast<int>(std::llround(doc.canvas.height * cfg.scale)));
  manifest.warnings.assign(warning_set.begin(), warning_set.end());

  std::FILE* fp = std::fopen((out_dir / "manifest.json").string().c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot write manifest.json in " + out_dir.string());
  const std::string text = manifest.to_json();
  std::fwrite(text.data(), 1, text.size(), fp);
  std::fclose(fp);
  return manifest;
}

}  // namespace animlayout
