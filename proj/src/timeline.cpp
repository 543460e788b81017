/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "animlayout/timeline.hpp"

#include <stdexcept>

namespace animlayout {

BBox interpolate(const Keyframe& k0, const Keyframe& k1, int frame) {
  if (k0.frame >= k1.frame) throw std::invalid_argument("interpolate: k0.frame must be < k1.frame");
  if (frame < k0.frame || frame > k1.frame) {
    throw std::out_of_range("interpolate: frame outside the keyframe interval");
  }
  // Keyframe frames must reproduce the stored box bit-for-bit.
  if (frame == k0.frame) return k0.bbox;
  if (frame == k1.frame) return k1.bbox;
  const double u = static_cast<double>(frame - k0.frame) / static_cast<double>(k1.frame - k0.frame);
  return BBox{
      k0.bbox.x1 + u * (k1.bbox.x1 - k0.bbox.x1),
      k0.bbox.y1 + u * (k1.bbox.y1 - k0.bbox.y1),
      k0.bbox.w + u * (k1.bbox.w - k0.bbox.w),
      k0.bbox.h + u * (k1.bbox.h - k0.bbox.h),
  };
}

FrameTrack expand_track(const ObjectAnimation& track, int duration) {
  if (track.keyframes.empty()) throw std::invalid_argument("expand_track: no keyframes");
  if (duration < 1) throw std::invalid_argument("expand_track: duration must be >= 1");
  if (track.keyframes.back().frame >= duration) {
    throw std::invalid_argument("expand_track: keyframe past the end of the animation");
  }

  FrameTrack out;
  out.object_index = track.object_index;
  out.boxes.resize(static_cast<size_t>(duration));

  size_t seg = 0;
  for (int f = track.keyframes.front().frame; f < duration; ++f) {
    while (seg + 1 < track.keyframes.size() && track.keyframes[seg + 1].frame <= f) ++seg;
    if (seg + 1 < track.keyframes.size()) {
      out.boxes[static_cast<size_t>(f)] = interpolate(track.keyframes[seg], track.keyframes[seg + 1], f);
    } else {
      out.boxes[static_cast<size_t>(f)] = track.keyframes[seg].bbox;  // hold after last
    }
  }
  return out;
}

std::vector<FrameTrack> expand_all(const VideoST& doc) {
  std::vector<FrameTrack> tracks;
  tracks.reserve(doc.animation.tracks.size());
  for (const ObjectAnimation& track : doc.animation.tracks) {
    tracks.push_back(expand_track(track, doc.animation.duration));
  }
  return tracks;
}

std::optional<BBox> object_box_at(const VideoST& doc, int object_index, int frame) {
  for (const ObjectAnimation& track : doc.animation.tracks) {
    if (track.object_index == object_index) {
      return expand_track(track, doc.animation.duration).boxes[static_cast<size_t>(frame)];
    }
  }
  return doc.foreground[static_cast<size_t>(object_index)].bbox;
}

}  // namespace animlayout
