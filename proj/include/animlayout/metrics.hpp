/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "animlayout/st_model.hpp"

namespace animlayout {

/// Relative motion of one box against its first visible frame, normalized
/// by the canvas dimensions: (dx/W, dy/H, dw/W, dh/H).
struct MotionVector {
  double dx = 0.0;
  double dy = 0.0;
  double dw = 0.0;
  double dh = 0.0;
};

/// Gaussian summary of a motion-vector set.
struct MotionStats {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  int n = 0;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which elements take part in the layout metrics.
struct MetricOptions {
  bool include_banner_objects = false;
};

/// Pool the relative motion vectors of every animated object across every
/// visible frame after its first. Objects visible for a single frame
/// contribute nothing.
std::vector<MotionVector> motion_vectors(const VideoST& doc);

/// Sample mean and covariance (divisor n-1), regularized with 1e-10 * I.
/// Throws InsufficientSamples for n < 2.
MotionStats gaussian_stats(std::span<const MotionVector> vectors);

/// Tr((Sr * Sg)^{1/2}) via the symmetric route Sr^{1/2} Sg Sr^{1/2}.
/// Eigenvalues below -1e-8 raise NumericalFailure; tiny negatives clamp to 0.
double trace_sqrt_product(const Eigen::Matrix4d& sr, const Eigen::Matrix4d& sg);

/// Fréchet motion distance between two Gaussian summaries:
/// |mu_r - mu_g|^2 + Tr(S_r + S_g - 2 (S_r S_g)^{1/2}).
double fmd(const MotionStats& real, const MotionStats& gen);

/// Mean IoU over unordered element pairs at the final frame; 0 with fewer
/// than two elements.
double overlap(const VideoST& doc, const MetricOptions& opts = {});

/// Maximum-IoU alignment between generated and real layouts at the final
/// frame, matched per object class. Exact assignment up to 8 elements per
/// class, greedy above that. Two empty layouts score 1.
double max_iou(const VideoST& gen, const VideoST& real, const MetricOptions& opts = {});

/// Final-frame (class, box) pairs entering overlap / max_iou.
std::vector<std::pair<ObjectClass, BBox>> final_frame_boxes(const VideoST& doc,
                                                            const MetricOptions& opts = {});

/// Best total IoU over one-to-one matchings between two box sets. Sets
/// larger than 8 on both sides fall back to greedy matching; `used_greedy`
/// (optional) reports which route ran.
double assignment_total_iou(std::span<const BBox> a, std::span<const BBox> b,
                            bool* used_greedy = nullptr);

}  // namespace animlayout
