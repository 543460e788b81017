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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "animlayout/st_model.hpp"

namespace animlayout {

/// Per-frame object-ID raster: 0 is background, k > 0 is object k.
struct IdMask {
  int width = 0;
  int height = 0;
  std::vector<uint32_t> ids;

  IdMask() = default;
  IdMask(int w, int h) : width(w), height(h), ids(static_cast<size_t>(w) * h, 0) {}

  uint32_t at(int x, int y) const { return ids[static_cast<size_t>(y) * width + x]; }
  uint32_t& at(int x, int y) { return ids[static_cast<size_t>(y) * width + x]; }
};

/// Thresholds of the box post-processing algorithm.
struct Alg2Params {
  double early_stop_low = 0.3;   // bottom-up scan trips below this height fraction
  double early_stop_high = 0.7;  // top-down scan trips above this height fraction
  double refine_ratio = 0.5;     // boundary lines advance while active fraction is below
  double size_factor = 0.2;      // boxes below factor * historical max area drop
};

/// Carried across frames of one video. The reference frame (the last one
/// chronologically) seeds max_values; later frames only read them.
struct TrackState {
  std::map<uint32_t, double> max_values;
  // One entry per processed frame, in processing order (last frame first).
  std::vector<std::map<uint32_t, BBox>> boxes_by_frame;
};

/// Noise-tolerant boxes for every object in one mask. Scans between the
/// mask extremes for empty rows in both directions, falls back to a
/// middle-out rescan when both directions stop early, refines boundaries
/// at the active-ratio threshold, and drops boxes smaller than
/// size_factor times the object's historical maximum.
std::map<uint32_t, BBox> extract_boxes(const IdMask& mask, TrackState& state, bool is_first,
                                       const Alg2Params& params = {});

/// Per-object boxes in forward chronological order; a missing entry means
/// no surviving box at that frame.
struct ObjectTrack {
  uint32_t object_id = 0;
  std::vector<std::optional<BBox>> boxes;
};

/// Process masks ordered last-frame-first and reindex the result forward.
/// Throws std::invalid_argument when mask dimensions differ.
std::vector<ObjectTrack> assemble_tracks(std::span<const IdMask> masks_last_first,
                                         const Alg2Params& params = {});

/// Greedy polyline simplification: the expansion of the result stays within
/// `tol` of every observed box, linear segments keep only their endpoints,
/// and a track constant within tol collapses to one keyframe.
ObjectAnimation compress_keyframes(const ObjectTrack& track, double tol, int object_index);

/// Binary PGM (P5) with pixel value = object id. Maxval up to 65535.
IdMask read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const IdMask& mask);

/// A mask directory: index.json names the frame files in forward
/// chronological order and maps object ids to class/attrs metadata.
struct MaskDataset {
  std::vector<std::filesystem::path> frame_paths;
  std::map<uint32_t, LayoutObject> objects;  // bbox fields unused here
  std::optional<Canvas> canvas;
};

MaskDataset load_mask_index(const std::filesystem::path& dir);

/// Full mask-to-Animation pipeline: read frames, assemble tracks in
/// reverse, compress each track. Track object_index is the rank of the
/// object id among the dataset's declared objects.
Animation extract_animation(const MaskDataset& dataset, double tol,
                            const Alg2Params& params = {});

}  // namespace animlayout
