/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "animlayout/st_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include <json.hpp>

namespace animlayout {

using nlohmann::json;

std::string Color::to_hex() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", r, g, b);
  return buf;
}

std::optional<Color> Color::from_hex(const std::string& s) {
  if (s.size() != 7 || s[0] != '#') return std::nullopt;
  int v[6];
  for (int i = 0; i < 6; ++i) {
    char c = s[i + 1];
    if (c >= '0' && c <= '9') v[i] = c - '0';
    else if (c >= 'a' && c <= 'f') v[i] = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v[i] = c - 'A' + 10;
    else return std::nullopt;
  }
  return Color{v[0] * 16 + v[1], v[2] * 16 + v[3], v[4] * 16 + v[5]};
}

std::string stage_name(Stage s) {
  switch (s) {
    case Stage::Banner: return "banner";
    case Stage::Mainground: return "mainground";
    case Stage::Animation: return "animation";
    case Stage::Full: return "full";
  }
  return "?";
}

std::optional<Stage> stage_from_name(const std::string& s) {
  if (s == "banner") return Stage::Banner;
  if (s == "mainground") return Stage::Mainground;
  if (s == "animation") return Stage::Animation;
  if (s == "full") return Stage::Full;
  return std::nullopt;
}

double iou(const BBox& a, const BBox& b) {
  const double ix = std::max(0.0, std::min(a.x1 + a.w, b.x1 + b.w) - std::max(a.x1, b.x1));
  const double iy = std::max(0.0, std::min(a.y1 + a.h, b.y1 + b.h) - std::max(a.y1, b.y1));
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

namespace {

[[noreturn]] void fail(StErrorKind kind, const std::string& path, const std::string& msg) {
  throw StError(kind, path, msg);
}

// Required keys first (in declaration order), then unknown keys. Matches the
// error the failure taxonomy expects for documents of the wrong stage.
void check_keys(const json& obj, const std::string& path,
                const std::vector<std::string>& required,
                const std::vector<std::string>& optional = {}) {
  if (!obj.is_object()) fail(StErrorKind::WrongType, path, "expected a JSON object");
  for (const auto& key : required) {
    if (!obj.contains(key)) fail(StErrorKind::MissingKey, path, "missing key: " + key);
  }
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::find(required.begin(), required.end(), key) == required.end() &&
        std::find(optional.begin(), optional.end(), key) == optional.end()) {
      fail(StErrorKind::UnknownKey, path, "unknown key: " + key);
    }
  }
}

const json& expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(StErrorKind::WrongType, path, "expected a JSON array");
  return j;
}

double expect_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(StErrorKind::WrongType, path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(StErrorKind::InvariantBreach, path, "number is not finite");
  return v;
}

int expect_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(StErrorKind::WrongType, path, "expected an integer");
  return j.get<int>();
}

std::string expect_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(StErrorKind::WrongType, path, "expected a string");
  return j.get<std::string>();
}

Color parse_color(const json& j, const std::string& path) {
  const std::string s = expect_string(j, path);
  auto c = Color::from_hex(s);
  if (!c) fail(StErrorKind::BadEnum, path, "expected a #RRGGBB color, got \"" + s + "\"");
  return *c;
}

BBox parse_bbox(const json& j, const std::string& path) {
  expect_array(j, path);
  if (j.size() != 4) fail(StErrorKind::WrongType, path, "bbox must be [x1, y1, w, h]");
  BBox b;
  b.x1 = expect_number(j[0], path + "/0");
  b.y1 = expect_number(j[1], path + "/1");
  b.w = expect_number(j[2], path + "/2");
  b.h = expect_number(j[3], path + "/3");
  if (b.w < 0 || b.h < 0) fail(StErrorKind::InvariantBreach, path, "bbox width/height must be >= 0");
  return b;
}

void check_in_canvas(const BBox& b, const Canvas& canvas, const std::string& path) {
  if (b.x1 < 0 || b.y1 < 0 || b.x1 + b.w > canvas.width || b.y1 + b.h > canvas.height) {
    fail(StErrorKind::InvariantBreach, path,
         "bbox lies outside the " + std::to_string(canvas.width) + "x" +
             std::to_string(canvas.height) + " canvas");
  }
}

void check_inside(const BBox& inner, const BBox& outer, const std::string& path) {
  if (inner.x1 < outer.x1 || inner.y1 < outer.y1 ||
      inner.x1 + inner.w > outer.x1 + outer.w || inner.y1 + inner.h > outer.y1 + outer.h) {
    fail(StErrorKind::InvariantBreach, path, "object bbox is not contained in its banner bbox");
  }
}

LayoutObject parse_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(StErrorKind::WrongType, path, "expected a JSON object");
  if (!j.contains("class")) fail(StErrorKind::MissingKey, path, "missing key: class");
  const std::string cls = expect_string(j["class"], path + "/class");

  LayoutObject obj;
  if (cls == "text") {
    obj.cls = ObjectClass::Text;
    check_keys(j, path, {"class", "bbox", "text", "text_color", "textbox_color"});
    obj.bbox = parse_bbox(j["bbox"], path + "/bbox");
    TextAttrs attrs;
    attrs.raw_text = expect_string(j["text"], path + "/text");
    std::string trimmed = attrs.raw_text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r\n"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r\n") + 1);
    if (trimmed.empty()) fail(StErrorKind::InvariantBreach, path + "/text", "raw text is empty");
    attrs.text_color = parse_color(j["text_color"], path + "/text_color");
    const json& tb = j["textbox_color"];
    if (tb.is_string() && tb.get<std::string>() == "transparent") {
      attrs.textbox_color = std::nullopt;
    } else {
      attrs.textbox_color = parse_color(tb, path + "/textbox_color");
    }
    obj.attrs = std::move(attrs);
  } else if (cls == "logo") {
    obj.cls = ObjectClass::Logo;
    check_keys(j, path, {"class", "bbox"});
    obj.bbox = parse_bbox(j["bbox"], path + "/bbox");
  } else {
    fail(StErrorKind::BadEnum, path + "/class", "object class must be \"text\" or \"logo\"");
  }
  return obj;
}

BannerPosition parse_position(const json& j, const std::string& path) {
  const std::string s = expect_string(j, path);
  if (s == "bottom") return BannerPosition::Bottom;
  if (s == "top_left") return BannerPosition::TopLeft;
  if (s == "top_right") return BannerPosition::TopRight;
  fail(StErrorKind::BadEnum, path, "position must be \"bottom\", \"top_left\" or \"top_right\"");
}

Banner parse_banner(const json& j, const std::string& path, const Canvas& canvas) {
  check_keys(j, path, {"position", "bbox", "color", "objects"});
  Banner banner;
  banner.position = parse_position(j["position"], path + "/position");
  banner.bbox = parse_bbox(j["bbox"], path + "/bbox");
  check_in_canvas(banner.bbox, canvas, path + "/bbox");
  banner.color = parse_color(j["color"], path + "/color");
  const json& objs = expect_array(j["objects"], path + "/objects");
  for (size_t i = 0; i < objs.size(); ++i) {
    const std::string opath = path + "/objects/" + std::to_string(i);
    LayoutObject obj = parse_object(objs[i], opath);
    check_inside(obj.bbox, banner.bbox, opath + "/bbox");
    banner.objects.push_back(std::move(obj));
  }
  return banner;
}

std::vector<Banner> parse_banner_list(const json& j, const std::string& path, const Canvas& canvas) {
  expect_array(j, path);
  if (j.size() > 3) fail(StErrorKind::InvariantBreach, path, "at most 3 banners are allowed");
  std::vector<Banner> banners;
  for (size_t i = 0; i < j.size(); ++i) {
    banners.push_back(parse_banner(j[i], path + "/" + std::to_string(i), canvas));
  }
  for (size_t i = 0; i < banners.size(); ++i) {
    for (size_t k = i + 1; k < banners.size(); ++k) {
      if (banners[i].position == banners[k].position) {
        fail(StErrorKind::InvariantBreach, path + "/" + std::to_string(k) + "/position",
             "banner positions must be pairwise distinct");
      }
    }
  }
  return banners;
}

Background parse_background(const json& j, const std::string& path) {
  if (!j.is_object()) fail(StErrorKind::WrongType, path, "expected a JSON object");
  if (!j.contains("kind")) fail(StErrorKind::MissingKey, path, "missing key: kind");
  const std::string kind = expect_string(j["kind"], path + "/kind");
  Background bg;
  if (kind == "solid_color") {
    bg.kind = BackgroundKind::SolidColor;
    check_keys(j, path, {"kind", "color"});
    bg.color = parse_color(j["color"], path + "/color");
  } else if (kind == "image") {
    bg.kind = BackgroundKind::Image;
    check_keys(j, path, {"kind", "caption"});
    bg.caption = expect_string(j["caption"], path + "/caption");
  } else {
    fail(StErrorKind::BadEnum, path + "/kind", "background kind must be \"solid_color\" or \"image\"");
  }
  return bg;
}

std::vector<LayoutObject> parse_foreground(const json& j, const std::string& path, const Canvas& canvas) {
  expect_array(j, path);
  std::vector<LayoutObject> objects;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string opath = path + "/" + std::to_string(i);
    LayoutObject obj = parse_object(j[i], opath);
    check_in_canvas(obj.bbox, canvas, opath + "/bbox");
    objects.push_back(std::move(obj));
  }
  return objects;
}

Animation parse_animation(const json& j, const std::string& path, const Canvas& canvas) {
  check_keys(j, path, {"duration", "tracks"});
  Animation anim;
  anim.duration = expect_int(j["duration"], path + "/duration");
  if (anim.duration < 1) {
    fail(StErrorKind::InvariantBreach, path + "/duration", "duration must be >= 1");
  }
  const json& tracks = expect_array(j["tracks"], path + "/tracks");
  for (size_t i = 0; i < tracks.size(); ++i) {
    const std::string tpath = path + "/tracks/" + std::to_string(i);
    check_keys(tracks[i], tpath, {"object_index", "keyframes"});
    ObjectAnimation track;
    track.object_index = expect_int(tracks[i]["object_index"], tpath + "/object_index");
    if (track.object_index < 0) {
      fail(StErrorKind::InvariantBreach, tpath + "/object_index", "object_index must be >= 0");
    }
    const json& kfs = expect_array(tracks[i]["keyframes"], tpath + "/keyframes");
    if (kfs.empty()) {
      fail(StErrorKind::InvariantBreach, tpath + "/keyframes", "a track needs at least one keyframe");
    }
    for (size_t k = 0; k < kfs.size(); ++k) {
      const std::string kpath = tpath + "/keyframes/" + std::to_string(k);
      check_keys(kfs[k], kpath, {"frame", "bbox"});
      Keyframe kf;
      kf.frame = expect_int(kfs[k]["frame"], kpath + "/frame");
      if (kf.frame < 0) fail(StErrorKind::InvariantBreach, kpath + "/frame", "frame must be >= 0");
      if (kf.frame >= anim.duration) {
        fail(StErrorKind::InvariantBreach, kpath + "/frame",
             "keyframe frame exceeds the animation duration");
      }
      if (!track.keyframes.empty() && kf.frame <= track.keyframes.back().frame) {
        fail(StErrorKind::InvariantBreach, kpath + "/frame",
             "keyframe frames must be strictly increasing");
      }
      kf.bbox = parse_bbox(kfs[k]["bbox"], kpath + "/bbox");
      check_in_canvas(kf.bbox, canvas, kpath + "/bbox");
      track.keyframes.push_back(kf);
    }
    for (const ObjectAnimation& prev : anim.tracks) {
      if (prev.object_index == track.object_index) {
        fail(StErrorKind::InvariantBreach, tpath + "/object_index",
             "at most one track per object index");
      }
    }
    anim.tracks.push_back(std::move(track));
  }
  return anim;
}

Canvas parse_canvas(const json& j, const std::string& path) {
  check_keys(j, path, {"width", "height", "fps"});
  Canvas canvas;
  canvas.width = expect_int(j["width"], path + "/width");
  canvas.height = expect_int(j["height"], path + "/height");
  canvas.fps = expect_int(j["fps"], path + "/fps");
  if (canvas.width < 1 || canvas.height < 1 || canvas.fps < 1) {
    fail(StErrorKind::InvariantBreach, path, "canvas width/height/fps must be >= 1");
  }
  return canvas;
}

json parse_document(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(StErrorKind::JsonSyntax, "", "malformed JSON");
  return j;
}

// ---- serialization ----------------------------------------------------

// Pixel values are conceptually integers most of the time; print them
// without the trailing ".0" so canonical text matches hand-written fixtures.
json number_json(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.0e15) {
    return json(static_cast<int64_t>(v));
  }
  return json(v);
}

json bbox_json(const BBox& b) {
  return json::array({number_json(b.x1), number_json(b.y1), number_json(b.w), number_json(b.h)});
}

json object_json(const LayoutObject& obj) {
  json j;
  j["bbox"] = bbox_json(obj.bbox);
  if (obj.cls == ObjectClass::Text) {
    j["class"] = "text";
    j["text"] = obj.attrs->raw_text;
    j["text_color"] = obj.attrs->text_color.to_hex();
    j["textbox_color"] =
        obj.attrs->textbox_color ? json(obj.attrs->textbox_color->to_hex()) : json("transparent");
  } else {
    j["class"] = "logo";
  }
  return j;
}

json banner_json(const Banner& banner) {
  json j;
  switch (banner.position) {
    case BannerPosition::Bottom: j["position"] = "bottom"; break;
    case BannerPosition::TopLeft: j["position"] = "top_left"; break;
    case BannerPosition::TopRight: j["position"] = "top_right"; break;
  }
  j["bbox"] = bbox_json(banner.bbox);
  j["color"] = banner.color.to_hex();
  j["objects"] = json::array();
  for (const auto& obj : banner.objects) j["objects"].push_back(object_json(obj));
  return j;
}

json background_json(const Background& bg) {
  json j;
  if (bg.kind == BackgroundKind::SolidColor) {
    j["kind"] = "solid_color";
    j["color"] = bg.color.to_hex();
  } else {
    j["kind"] = "image";
    j["caption"] = bg.caption;
  }
  return j;
}

json animation_json(const Animation& anim) {
  json j;
  j["duration"] = anim.duration;
  j["tracks"] = json::array();
  for (const auto& track : anim.tracks) {
    json t;
    t["object_index"] = track.object_index;
    t["keyframes"] = json::array();
    for (const auto& kf : track.keyframes) {
      json k;
      k["frame"] = kf.frame;
      k["bbox"] = bbox_json(kf.bbox);
      t["keyframes"].push_back(std::move(k));
    }
    j["tracks"].push_back(std::move(t));
  }
  return j;
}

json foreground_json(const std::vector<LayoutObject>& foreground) {
  json arr = json::array();
  for (const auto& obj : foreground) arr.push_back(object_json(obj));
  return arr;
}

}  // namespace

BannerSt parse_banner_st(const std::string& text, const Canvas& canvas) {
  json j = parse_document(text);
  check_keys(j, "", {"banners"});
  return BannerSt{parse_banner_list(j["banners"], "/banners", canvas)};
}

MaingroundSt parse_mainground_st(const std::string& text, const Canvas& canvas) {
  json j = parse_document(text);
  check_keys(j, "", {"foreground", "background"});
  MaingroundSt st;
  st.foreground = parse_foreground(j["foreground"], "/foreground", canvas);
  st.background = parse_background(j["background"], "/background");
  return st;
}

Animation parse_animation_st(const std::string& text, const Canvas& canvas) {
  json j = parse_document(text);
  return parse_animation(j, "", canvas);
}

VideoST parse_video_st(const std::string& text, const Canvas& default_canvas) {
  json j = parse_document(text);
  check_keys(j, "", {"banners", "foreground", "background", "animation"}, {"canvas"});
  VideoST doc;
  doc.canvas = j.contains("canvas") ? parse_canvas(j["canvas"], "/canvas") : default_canvas;
  doc.banners = parse_banner_list(j["banners"], "/banners", doc.canvas);
  doc.foreground = parse_foreground(j["foreground"], "/foreground", doc.canvas);
  doc.background = parse_background(j["background"], "/background");
  doc.animation = parse_animation(j["animation"], "/animation", doc.canvas);
  for (size_t i = 0; i < doc.animation.tracks.size(); ++i) {
    if (doc.animation.tracks[i].object_index >= static_cast<int>(doc.foreground.size())) {
      fail(StErrorKind::InvariantBreach,
           "/animation/tracks/" + std::to_string(i) + "/object_index",
           "track references a foreground object that does not exist");
    }
  }
  return doc;
}

StFragment parse_st(const std::string& text, Stage expected, const Canvas& canvas) {
  switch (expected) {
    case Stage::Banner: return parse_banner_st(text, canvas);
    case Stage::Mainground: return parse_mainground_st(text, canvas);
    case Stage::Animation: return parse_animation_st(text, canvas);
    case Stage::Full: return parse_video_st(text, canvas);
  }
  throw std::invalid_argument("unreachable stage");
}

std::string serialize_st(const VideoST& doc) {
  json j;
  j["canvas"] = {{"width", doc.canvas.width}, {"height", doc.canvas.height}, {"fps", doc.canvas.fps}};
  j["banners"] = json::array();
  for (const auto& banner : doc.banners) j["banners"].push_back(banner_json(banner));
  j["foreground"] = foreground_json(doc.foreground);
  j["background"] = background_json(doc.background);
  j["animation"] = animation_json(doc.animation);
  return j.dump();
}

std::string serialize_st(const BannerSt& fragment) {
  json j;
  j["banners"] = json::array();
  for (const auto& banner : fragment.banners) j["banners"].push_back(banner_json(banner));
  return j.dump();
}

std::string serialize_st(const MaingroundSt& fragment) {
  json j;
  j["foreground"] = foreground_json(fragment.foreground);
  j["background"] = background_json(fragment.background);
  return j.dump();
}

std::string serialize_st(const Animation& fragment) { return animation_json(fragment).dump(); }

std::string serialize_foreground(const std::vector<LayoutObject>& foreground) {
  json j;
  j["foreground"] = foreground_json(foreground);
  return j.dump();
}

}  // namespace animlayout
