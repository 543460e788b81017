/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace animlayout {

/// Axis-aligned box in canvas pixels: top-left corner plus extent.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
  bool operator==(const BBox&) const = default;
};

/// 8-bit RGB color.
struct Color {
  int r = 0;
  int g = 0;
  int b = 0;

  bool operator==(const Color&) const = default;

  // "#RRGGBB", uppercase. Parsing accepts either case.
  std::string to_hex() const;
  static std::optional<Color> from_hex(const std::string& s);
};

enum class ObjectClass { Text, Logo };

struct TextAttrs {
  std::string raw_text;
  Color text_color;
  // nullopt encodes the "transparent" textbox.
  std::optional<Color> textbox_color;

  bool operator==(const TextAttrs&) const = default;
};

/// A text or logo element. Text objects carry attrs, logos never do.
struct LayoutObject {
  ObjectClass cls = ObjectClass::Text;
  BBox bbox;
  std::optional<TextAttrs> attrs;

  bool operator==(const LayoutObject&) const = default;
};

enum class BannerPosition { Bottom, TopLeft, TopRight };

/// Fixed chrome region with static contained objects.
struct Banner {
  BannerPosition position = BannerPosition::Bottom;
  BBox bbox;
  Color color;
  std::vector<LayoutObject> objects;

  bool operator==(const Banner&) const = default;
};

enum class BackgroundKind { SolidColor, Image };

struct Background {
  BackgroundKind kind = BackgroundKind::SolidColor;
  Color color;          // meaningful iff kind == SolidColor
  std::string caption;  // meaningful iff kind == Image

  bool operator==(const Background&) const = default;
};

struct Keyframe {
  int frame = 0;
  BBox bbox;

  bool operator==(const Keyframe&) const = default;
};

/// Keyframed trajectory of one foreground object.
struct ObjectAnimation {
  int object_index = 0;
  std::vector<Keyframe> keyframes;  // frames strictly increasing, K >= 1

  bool operator==(const ObjectAnimation&) const = default;
};

struct Animation {
  int duration = 1;  // total frame count l >= 1
  std::vector<ObjectAnimation> tracks;

  bool operator==(const Animation&) const = default;
};

struct Canvas {
  int width = 1920;
  int height = 1080;
  int fps = 30;

  bool operator==(const Canvas&) const = default;
};

/// The full document: (Banner, Foreground, Background, Animation) plus canvas.
struct VideoST {
  Canvas canvas;
  std::vector<Banner> banners;  // at most 3, pairwise distinct positions
  std::vector<LayoutObject> foreground;
  Background background;
  Animation animation;

  bool operator==(const VideoST&) const = default;
};

/// Banner-stage fragment.
struct BannerSt {
  std::vector<Banner> banners;

  bool operator==(const BannerSt&) const = default;
};

/// Mainground-stage fragment: foreground plus background.
struct MaingroundSt {
  std::vector<LayoutObject> foreground;
  Background background;

  bool operator==(const MaingroundSt&) const = default;
};

/// The generation stages, plus Full for assembled documents.
enum class Stage { Banner, Mainground, Animation, Full };

std::string stage_name(Stage s);
std::optional<Stage> stage_from_name(const std::string& s);

enum class StErrorKind {
  JsonSyntax,       // malformed JSON text
  MissingKey,       // required key absent
  UnknownKey,       // extra key present
  WrongType,        // value has the wrong JSON type or shape
  BadEnum,          // string outside the allowed enum members
  InvariantBreach,  // well-typed value violating a domain invariant
};

/// Parse/validation failure with a JSON-pointer-style path to the culprit.
class StError : public std::runtime_error {
 public:
  StError(StErrorKind kind, std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        kind_(kind),
        path_(std::move(path)),
        message_(message) {}

  StErrorKind kind() const { return kind_; }
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  StErrorKind kind_;
  std::string path_;
  std::string message_;
};

using StFragment = std::variant<BannerSt, MaingroundSt, Animation, VideoST>;

/// Decode one stage document. Establishes every type invariant or throws
/// StError. Unknown keys are rejected. Fragments are checked against
/// `canvas` (the stage documents carry no canvas of their own); a Full
/// document may override the canvas with its own "canvas" key.
StFragment parse_st(const std::string& text, Stage expected,
                    const Canvas& canvas = Canvas{});

BannerSt parse_banner_st(const std::string& text, const Canvas& canvas = Canvas{});
MaingroundSt parse_mainground_st(const std::string& text, const Canvas& canvas = Canvas{});
Animation parse_animation_st(const std::string& text, const Canvas& canvas = Canvas{});
VideoST parse_video_st(const std::string& text, const Canvas& default_canvas = Canvas{});

/// Canonical JSON: sorted keys, integral numbers printed without a
/// fractional part. parse_st(serialize_st(d)) == d for every valid d.
std::string serialize_st(const VideoST& doc);
std::string serialize_st(const BannerSt& fragment);
std::string serialize_st(const MaingroundSt& fragment);
std::string serialize_st(const Animation& fragment);

/// Serialized foreground list alone: {"foreground":[...]}. This is the
/// payload handed to the temporal stage.
std::string serialize_foreground(const std::vector<LayoutObject>& foreground);

/// Intersection over union. Zero-area unions give 0.
double iou(const BBox& a, const BBox& b);

}  // namespace animlayout
