/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "animlayout/maskproc.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace animlayout {

namespace {

// Inclusive pixel bounds of one object.
struct Bounds {
  int x1, y1, x2, y2;

  double area() const { return double(x2 - x1 + 1) * double(y2 - y1 + 1); }
};

struct ObjectPixels {
  std::vector<int> row_count;  // active pixels per full-width row
  int y_min, y_max;
};

struct ScanResult {
  int y1, y2;
  bool early_stop = false;
};

ScanResult scan_top_down(const ObjectPixels& px, double high_frac) {
  const int extent = px.y_max - px.y_min;
  for (int y = px.y_min; y <= px.y_max; ++y) {
    if (px.row_count[static_cast<size_t>(y)] == 0) {
      ScanResult r{px.y_min, y - 1};
      r.early_stop = extent > 0 &&
                     static_cast<double>(y - px.y_min) / extent < high_frac;
      return r;
    }
  }
  return {px.y_min, px.y_max, false};
}

ScanResult scan_bottom_up(const ObjectPixels& px, double low_frac) {
  const int extent = px.y_max - px.y_min;
  for (int y = px.y_max; y >= px.y_min; --y) {
    if (px.row_count[static_cast<size_t>(y)] == 0) {
      ScanResult r{y + 1, px.y_max};
      r.early_stop = extent > 0 &&
                     static_cast<double>(y - px.y_min) / extent > low_frac;
      return r;
    }
  }
  return {px.y_min, px.y_max, false};
}

std::pair<int, int> scan_from_middle(const ObjectPixels& px, int y_mid) {
  int y1 = y_mid, y2 = y_mid;
  while (y1 - 1 >= px.y_min && px.row_count[static_cast<size_t>(y1 - 1)] > 0) --y1;
  while (y2 + 1 <= px.y_max && px.row_count[static_cast<size_t>(y2 + 1)] > 0) ++y2;
  return {y1, y2};
}

int col_count(const IdMask& mask, uint32_t id, int x, int y1, int y2) {
  int n = 0;
  for (int y = y1; y <= y2; ++y)
    if (mask.at(x, y) == id) ++n;
  return n;
}

int row_count_in(const IdMask& mask, uint32_t id, int y, int x1, int x2) {
  int n = 0;
  for (int x = x1; x <= x2; ++x)
    if (mask.at(x, y) == id) ++n;
  return n;
}

std::optional<Bounds> refine_x(const IdMask& mask, uint32_t id, Bounds b, double ratio) {
  const int span = b.y2 - b.y1 + 1;
  while (b.x1 <= b.x2 && col_count(mask, id, b.x1, b.y1, b.y2) < ratio * span) ++b.x1;
  while (b.x1 <= b.x2 && col_count(mask, id, b.x2, b.y1, b.y2) < ratio * span) --b.x2;
  if (b.x1 > b.x2) return std::nullopt;
  return b;
}

std::optional<Bounds> refine_y(const IdMask& mask, uint32_t id, Bounds b, double ratio) {
  const int span = b.x2 - b.x1 + 1;
  while (b.y1 <= b.y2 && row_count_in(mask, id, b.y1, b.x1, b.x2) < ratio * span) ++b.y1;
  while (b.y1 <= b.y2 && row_count_in(mask, id, b.y2, b.x1, b.x2) < ratio * span) --b.y2;
  if (b.y1 > b.y2) return std::nullopt;
  return b;
}

std::optional<Bounds> refine_x_then_y(const IdMask& mask, uint32_t id, Bounds b, double ratio) {
  auto bx = refine_x(mask, id, b, ratio);
  if (!bx) return std::nullopt;
  return refine_y(mask, id, *bx, ratio);
}

std::optional<Bounds> refine_y_then_x(const IdMask& mask, uint32_t id, Bounds b, double ratio) {
  auto by = refine_y(mask, id, b, ratio);
  if (!by) return std::nullopt;
  return refine_x(mask, id, *by, ratio);
}

}  // namespace

std::map<uint32_t, BBox> extract_boxes(const IdMask& mask, TrackState& state, bool is_first,
                                       const Alg2Params& params) {
  // One pass gathers each object's vertical profile and extremes.
  std::map<uint32_t, ObjectPixels> profile;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const uint32_t id = mask.at(x, y);
      if (id == 0) continue;
      auto [it, fresh] = profile.try_emplace(id);
      ObjectPixels& px = it->second;
      if (fresh) {
        px.row_count.assign(static_cast<size_t>(mask.height), 0);
        px.y_min = px.y_max = y;
      }
      px.row_count[static_cast<size_t>(y)]++;
      px.y_min = std::min(px.y_min, y);
      px.y_max = std::max(px.y_max, y);
    }
  }

  std::map<uint32_t, BBox> boxes;
  for (auto& [id, px] : profile) {
    // Vertical bounds via bidirectional scanning with early-stop checks.
    const int y_mid = (px.y_min + px.y_max) / 2;
    const ScanResult down = scan_top_down(px, params.early_stop_high);
    const ScanResult up = scan_bottom_up(px, params.early_stop_low);

    int y1, y2;
    if (down.early_stop && up.early_stop && px.row_count[static_cast<size_t>(y_mid)] > 0) {
      std::tie(y1, y2) = scan_from_middle(px, y_mid);
    } else if (down.y2 - down.y1 >= up.y2 - up.y1) {
      y1 = down.y1, y2 = down.y2;
    } else {
      y1 = up.y1, y2 = up.y2;
    }

    // Horizontal bounds from the vertically cropped mask.
    int x1 = mask.width, x2 = -1;
    for (int y = y1; y <= y2; ++y) {
      for (int x = 0; x < mask.width; ++x) {
        if (mask.at(x, y) == id) {
          x1 = std::min(x1, x);
          x2 = std::max(x2, x);
        }
      }
    }
    if (x2 < x1) continue;  // the selected rows hold no pixels

    const Bounds coarse{x1, y1, x2, y2};
    const auto box_xy = refine_x_then_y(mask, id, coarse, params.refine_ratio);
    const auto box_yx = refine_y_then_x(mask, id, coarse, params.refine_ratio);
    std::optional<Bounds> final_box;
    if (box_xy && box_yx) {
      final_box = box_xy->area() >= box_yx->area() ? box_xy : box_yx;
    } else {
      final_box = box_xy ? box_xy : box_yx;
    }
    if (!final_box) continue;  // refinement consumed the whole region

    const double size = final_box->area();
    double max_value = 0.0;
    if (!is_first) {
      auto it = state.max_values.find(id);
      if (it != state.max_values.end()) max_value = it->second;
    }
    if (is_first || size >= params.size_factor * max_value) {
      boxes[id] = BBox{static_cast<double>(final_box->x1), static_cast<double>(final_box->y1),
                       static_cast<double>(final_box->x2 - final_box->x1 + 1),
                       static_cast<double>(final_box->y2 - final_box->y1 + 1)};
      if (is_first) state.max_values[id] = size;
    }
  }
  return boxes;
}

std::vector<ObjectTrack> assemble_tracks(std::span<const IdMask> masks_last_first,
                                         const Alg2Params& params) {
  if (masks_last_first.empty()) return {};
  const int w = masks_last_first.front().width;
  const int h = masks_last_first.front().height;
  for (const IdMask& mask : masks_last_first) {
    if (mask.width != w || mask.height != h) {
      throw std::invalid_argument("assemble_tracks: mask dimensions differ");
    }
  }

  TrackState state;
  for (size_t i = 0; i < masks_last_first.size(); ++i) {
    state.boxes_by_frame.push_back(extract_boxes(masks_last_first[i], state, i == 0, params));
  }

  std::set<uint32_t> ids;
  for (const auto& frame_boxes : state.boxes_by_frame)
    for (const auto& [id, box] : frame_boxes) ids.insert(id);

  const size_t n = masks_last_first.size();
  std::vector<ObjectTrack> tracks;
  for (uint32_t id : ids) {
    ObjectTrack track;
    track.object_id = id;
    track.boxes.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const auto& frame_boxes = state.boxes_by_frame[i];
      auto it = frame_boxes.find(id);
      if (it != frame_boxes.end()) track.boxes[n - 1 - i] = it->second;  // reindex forward
    }
    tracks.push_back(std::move(track));
  }
  return tracks;
}

namespace {

double box_deviation(const BBox& a, const BBox& b) {
  return std::max(std::max(std::abs(a.x1 - b.x1), std::abs(a.y1 - b.y1)),
                  std::max(std::abs(a.w - b.w), std::abs(a.h - b.h)));
}

BBox lerp_box(const BBox& a, const BBox& b, double u) {
  return {a.x1 + u * (b.x1 - a.x1), a.y1 + u * (b.y1 - a.y1), a.w + u * (b.w - a.w),
          a.h + u * (b.h - a.h)};
}

// Douglas-Peucker over (frame, box) samples: split at the sample farthest
// from the chord until every deviation is within tol.
void simplify(const std::vector<std::pair<int, BBox>>& samples, size_t i0, size_t i1, double tol,
              std::set<size_t>& keep) {
  if (i1 <= i0 + 1) return;
  const auto& [f0, b0] = samples[i0];
  const auto& [f1, b1] = samples[i1];
  double worst = -1.0;
  size_t worst_idx = i0;
  for (size_t k = i0 + 1; k < i1; ++k) {
    const double u = static_cast<double>(samples[k].first - f0) / static_cast<double>(f1 - f0);
    const double dev = box_deviation(samples[k].second, lerp_box(b0, b1, u));
    if (dev > worst) {
      worst = dev;
      worst_idx = k;
    }
  }
  if (worst > tol) {
    keep.insert(worst_idx);
    simplify(samples, i0, worst_idx, tol, keep);
    simplify(samples, worst_idx, i1, tol, keep);
  }
}

}  // namespace

ObjectAnimation compress_keyframes(const ObjectTrack& track, double tol, int object_index) {
  if (tol < 0) throw std::invalid_argument("compress_keyframes: tol must be >= 0");
  std::vector<std::pair<int, BBox>> samples;
  for (size_t f = 0; f < track.boxes.size(); ++f) {
    if (track.boxes[f]) samples.emplace_back(static_cast<int>(f), *track.boxes[f]);
  }
  if (samples.empty()) throw std::invalid_argument("compress_keyframes: empty track");

  ObjectAnimation anim;
  anim.object_index = object_index;

  // A track constant within tol holds its first box for the whole scene.
  bool constant = true;
  for (const auto& [f, box] : samples) {
    if (box_deviation(box, samples.front().second) > tol) {
      constant = false;
      break;
    }
  }
  if (constant) {
    anim.keyframes.push_back({samples.front().first, samples.front().second});
    return anim;
  }

  std::set<size_t> keep{0, samples.size() - 1};
  simplify(samples, 0, samples.size() - 1, tol, keep);
  for (size_t idx : keep) {
    anim.keyframes.push_back({samples[idx].first, samples[idx].second});
  }
  return anim;
}

IdMask read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open PGM: " + path.string());

  const auto next_token = [&in, &path]() -> std::string {
    std::string tok;
    char c;
    while (in.get(c)) {
      if (c == '#') {  // comment to end of line
        while (in.get(c) && c != '\n') {
        }
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!tok.empty()) return tok;
        continue;
      }
      tok.push_back(c);
    }
    if (tok.empty()) throw std::runtime_error("truncated PGM header: " + path.string());
    return tok;
  };

  if (next_token() != "P5") throw std::runtime_error("not a binary PGM (P5): " + path.string());
  const int width = std::stoi(next_token());
  const int height = std::stoi(next_token());
  const int maxval = std::stoi(next_token());
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    throw std::runtime_error("bad PGM header: " + path.string());
  }

  IdMask mask(width, height);
  const size_t count = static_cast<size_t>(width) * height;
  if (maxval < 256) {
    std::vector<uint8_t> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
    if (!in) throw std::runtime_error("truncated PGM data: " + path.string());
    for (size_t i = 0; i < count; ++i) mask.ids[i] = raw[i];
  } else {
    std::vector<uint8_t> raw(count * 2);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 2));
    if (!in) throw std::runtime_error("truncated PGM data: " + path.string());
    for (size_t i = 0; i < count; ++i) {
      mask.ids[i] = (static_cast<uint32_t>(raw[2 * i]) << 8) | raw[2 * i + 1];
    }
  }
  return mask;
}

void write_pgm(const std::filesystem::path& path, const IdMask& mask) {
  uint32_t max_id = 1;
  for (uint32_t id : mask.ids) max_id = std::max(max_id, id);
  if (max_id > 65535) throw std::runtime_error("object ids above 65535 do not fit a PGM");
  const int maxval = max_id < 256 ? 255 : 65535;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write PGM: " + path.string());
  out << "P5\n" << mask.width << " " << mask.height << "\n" << maxval << "\n";
  if (maxval == 255) {
    std::vector<uint8_t> raw(mask.ids.size());
    for (size_t i = 0; i < mask.ids.size(); ++i) raw[i] = static_cast<uint8_t>(mask.ids[i]);
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  } else {
    std::vector<uint8_t> raw(mask.ids.size() * 2);
    for (size_t i = 0; i < mask.ids.size(); ++i) {
      raw[2 * i] = static_cast<uint8_t>(mask.ids[i] >> 8);
      raw[2 * i + 1] = static_cast<uint8_t>(mask.ids[i] & 0xFF);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  }
  if (!out) throw std::runtime_error("short write: " + path.string());
}

MaskDataset load_mask_index(const std::filesystem::path& dir) {
  std::ifstream in(dir / "index.json");
  if (!in) throw std::runtime_error("cannot open " + (dir / "index.json").string());
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("frames") || !j["frames"].is_array()) {
    throw std::runtime_error("malformed index.json in " + dir.string());
  }

  MaskDataset dataset;
  for (const auto& name : j["frames"]) {
    if (!name.is_string()) throw std::runtime_error("index.json frames must be file names");
    dataset.frame_paths.push_back(dir / name.get<std::string>());
  }

  if (j.contains("objects")) {
    for (const auto& [key, meta] : j["objects"].items()) {
      const uint32_t id = static_cast<uint32_t>(std::stoul(key));
      LayoutObject obj;
      const std::string cls = meta.value("class", "text");
      if (cls == "logo") {
        obj.cls = ObjectClass::Logo;
      } else {
        obj.cls = ObjectClass::Text;
        TextAttrs attrs;
        attrs.raw_text = meta.value("text", "object " + key);
        attrs.text_color = Color::from_hex(meta.value("text_color", "#FFFFFF")).value_or(Color{255, 255, 255});
        const std::string tb = meta.value("textbox_color", "transparent");
        attrs.textbox_color = tb == "transparent" ? std::nullopt : Color::from_hex(tb);
        obj.attrs = std::move(attrs);
      }
      dataset.objects[id] = std::move(obj);
    }
  }

  if (j.contains("canvas")) {
    Canvas canvas;
    canvas.width = j["canvas"].value("width", 1920);
    canvas.height = j["canvas"].value("height", 1080);
    canvas.fps = j["canvas"].value("fps", 30);
    dataset.canvas = canvas;
  }
  return dataset;
}

Animation extract_animation(const MaskDataset& dataset, double tol, const Alg2Params& params) {
  if (dataset.frame_paths.empty()) {
    throw std::invalid_argument("extract_animation: no frames listed");
  }
  std::vector<IdMask> reversed;
  reversed.reserve(dataset.frame_paths.size());
  for (auto it = dataset.frame_paths.rbegin(); it != dataset.frame_paths.rend(); ++it) {
    reversed.push_back(read_pgm(*it));
  }

  const auto tracks = assemble_tracks(reversed, params);

  // object_index = rank of the id among the declared objects.
  std::vector<uint32_t> declared;
  for (const auto& [id, obj] : dataset.objects) declared.push_back(id);

  Animation anim;
  anim.duration = static_cast<int>(dataset.frame_paths.size());
  for (const ObjectTrack& track : tracks) {
    int index;
    if (declared.empty()) {
      index = static_cast<int>(track.object_id) - 1;  // ids are 1-based
    } else {
      auto it = std::find(declared.begin(), declared.end(), track.object_id);
      if (it == declared.end()) {
        throw std::runtime_error("mask object id " + std::to_string(track.object_id) +
                                 " is not declared in index.json");
      }
      index = static_cast<int>(it - declared.begin());
    }
    anim.tracks.push_back(compress_keyframes(track, tol, index));
  }
  return anim;
}

}  // namespace animlayout
