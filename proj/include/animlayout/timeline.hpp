/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <optional>
#include <vector>

#include "animlayout/st_model.hpp"

namespace animlayout {

/// Per-frame boxes for one object across the whole scene. A missing entry
/// means the object is not visible yet (before its first keyframe).
struct FrameTrack {
  int object_index = 0;
  std::vector<std::optional<BBox>> boxes;  // length == animation duration
};

/// Component-wise linear interpolation between two keyframes. Exact at the
/// endpoints. Throws std::out_of_range when f is outside [k0, k1].
BBox interpolate(const Keyframe& k0, const Keyframe& k1, int frame);

/// Hidden before the first keyframe, interpolated between keyframes, last
/// keyframe held through frame duration-1.
FrameTrack expand_track(const ObjectAnimation& track, int duration);

/// Expand every track of a document.
std::vector<FrameTrack> expand_all(const VideoST& doc);

/// Box of a foreground object at one frame: the expanded track value when
/// the object is animated, its static bbox otherwise.
std::optional<BBox> object_box_at(const VideoST& doc, int object_index, int frame);

}  // namespace animlayout
