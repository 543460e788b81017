/*
 * AnimLayout - structured animated-layout toolkit
 *
 * Copyright 2026 AnimLayout Authors.
 * Licensed under the terms of the Apache 2.0 License.
 * See LICENSE file in the project root for terms.
 */

#include "animlayout/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "animlayout/timeline.hpp"

namespace animlayout {

namespace {

constexpr double kCovEpsilon = 1e-10;
constexpr double kEigClamp = 1e-8;

}  // namespace

std::vector<MotionVector> motion_vectors(const VideoST& doc) {
  const double w = doc.canvas.width;
  const double h = doc.canvas.height;
  std::vector<MotionVector> vectors;
  for (const ObjectAnimation& track : doc.animation.tracks) {
    const FrameTrack expanded = expand_track(track, doc.animation.duration);
    const int first = track.keyframes.front().frame;
    const BBox b0 = *expanded.boxes[static_cast<size_t>(first)];
    for (int t = first + 1; t < doc.animation.duration; ++t) {
      const BBox& bt = *expanded.boxes[static_cast<size_t>(t)];
      vectors.push_back({(bt.x1 - b0.x1) / w, (bt.y1 - b0.y1) / h,
                         (bt.w - b0.w) / w, (bt.h - b0.h) / h});
    }
  }
  return vectors;
}

MotionStats gaussian_stats(std::span<const MotionVector> vectors) {
  const int n = static_cast<int>(vectors.size());
  if (n < 2) throw InsufficientSamples("gaussian_stats: need at least 2 motion vectors");

  MotionStats stats;
  stats.n = n;
  for (const MotionVector& v : vectors) {
    stats.mean += Eigen::Vector4d(v.dx, v.dy, v.dw, v.dh);
  }
  stats.mean /= static_cast<double>(n);
  for (const MotionVector& v : vectors) {
    const Eigen::Vector4d d = Eigen::Vector4d(v.dx, v.dy, v.dw, v.dh) - stats.mean;
    stats.cov += d * d.transpose();
  }
  stats.cov /= static_cast<double>(n - 1);
  stats.cov += kCovEpsilon * Eigen::Matrix4d::Identity();
  return stats;
}

namespace {

// Clamp the spectrum to [0, inf); anything below -kEigClamp is an error.
Eigen::Vector4d clamped_eigenvalues(const Eigen::Vector4d& values, const char* what) {
  Eigen::Vector4d out = values;
  for (int i = 0; i < 4; ++i) {
    if (out[i] < -kEigClamp) {
      throw NumericalFailure(std::string(what) + ": eigenvalue " + std::to_string(out[i]) +
                             " below the clamp tolerance");
    }
    out[i] = std::max(out[i], 0.0);
  }
  return out;
}

}  // namespace

double trace_sqrt_product(const Eigen::Matrix4d& sr, const Eigen::Matrix4d& sg) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es_r(0.5 * (sr + sr.transpose()));
  const Eigen::Vector4d lr = clamped_eigenvalues(es_r.eigenvalues(), "trace_sqrt_product");
  const Eigen::Matrix4d sqrt_r =
      es_r.eigenvectors() * lr.cwiseSqrt().asDiagonal() * es_r.eigenvectors().transpose();

  Eigen::Matrix4d m = sqrt_r * sg * sqrt_r;
  m = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es_m(m);
  const Eigen::Vector4d lm = clamped_eigenvalues(es_m.eigenvalues(), "trace_sqrt_product");
  return lm.cwiseSqrt().sum();
}

double fmd(const MotionStats& real, const MotionStats& gen) {
  const double mean_term = (real.mean - gen.mean).squaredNorm();
  const double trace_term =
      real.cov.trace() + gen.cov.trace() - 2.0 * trace_sqrt_product(real.cov, gen.cov);
  double result = mean_term + trace_term;
  if (result < 0.0) {
    if (result < -kEigClamp) {
      throw NumericalFailure("fmd: distance " + std::to_string(result) + " below zero");
    }
    result = 0.0;
  }
  return result;
}

std::vector<std::pair<ObjectClass, BBox>> final_frame_boxes(const VideoST& doc,
                                                            const MetricOptions& opts) {
  std::vector<std::pair<ObjectClass, BBox>> boxes;
  const int last = doc.animation.duration - 1;
  for (size_t i = 0; i < doc.foreground.size(); ++i) {
    auto box = object_box_at(doc, static_cast<int>(i), last);
    if (box) boxes.emplace_back(doc.foreground[i].cls, *box);
  }
  if (opts.include_banner_objects) {
    for (const Banner& banner : doc.banners)
      for (const LayoutObject& obj : banner.objects) boxes.emplace_back(obj.cls, obj.bbox);
  }
  return boxes;
}

double overlap(const VideoST& doc, const MetricOptions& opts) {
  const auto boxes = final_frame_boxes(doc, opts);
  if (boxes.size() < 2) return 0.0;
  double total = 0.0;
  size_t pairs = 0;
  for (size_t i = 0; i < boxes.size(); ++i) {
    for (size_t j = i + 1; j < boxes.size(); ++j) {
      total += iou(boxes[i].second, boxes[j].second);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

namespace {

double greedy_total_iou(std::span<const BBox> a, std::span<const BBox> b) {
  struct Pair {
    double value;
    size_t i, j;
  };
  std::vector<Pair> pairs;
  pairs.reserve(a.size() * b.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) pairs.push_back({iou(a[i], b[j]), i, j});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) {
    if (l.value != r.value) return l.value > r.value;
    if (l.i != r.i) return l.i < r.i;
    return l.j < r.j;
  });
  std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
  double total = 0.0;
  for (const Pair& p : pairs) {
    if (used_a[p.i] || used_b[p.j]) continue;
    used_a[p.i] = used_b[p.j] = true;
    total += p.value;
  }
  return total;
}

// Exact assignment by subset DP over the smaller side.
double exact_total_iou(std::span<const BBox> a, std::span<const BBox> b) {
  std::span<const BBox> small = a.size() <= b.size() ? a : b;
  std::span<const BBox> large = a.size() <= b.size() ? b : a;
  const size_t ns = small.size();
  const size_t masks = size_t{1} << ns;

  std::vector<double> dp(masks, 0.0);
  for (const BBox& item : large) {
    std::vector<double> next = dp;  // leaving `item` unmatched
    for (size_t mask = 0; mask < masks; ++mask) {
      for (size_t s = 0; s < ns; ++s) {
        if (mask & (size_t{1} << s)) continue;
        const size_t with = mask | (size_t{1} << s);
        next[with] = std::max(next[with], dp[mask] + iou(small[s], item));
      }
    }
    dp = std::move(next);
  }
  return *std::max_element(dp.begin(), dp.end());
}

}  // namespace

double assignment_total_iou(std::span<const BBox> a, std::span<const BBox> b, bool* used_greedy) {
  if (a.empty() || b.empty()) {
    if (used_greedy) *used_greedy = false;
    return 0.0;
  }
  const bool greedy = a.size() > 8 || b.size() > 8;
  if (used_greedy) *used_greedy = greedy;
  return greedy ? greedy_total_iou(a, b) : exact_total_iou(a, b);
}

double max_iou(const VideoST& gen, const VideoST& real, const MetricOptions& opts) {
  const auto gen_boxes = final_frame_boxes(gen, opts);
  const auto real_boxes = final_frame_boxes(real, opts);

  double total = 0.0;
  double denom = 0.0;
  for (ObjectClass cls : {ObjectClass::Text, ObjectClass::Logo}) {
    std::vector<BBox> g, r;
    for (const auto& [c, box] : gen_boxes)
      if (c == cls) g.push_back(box);
    for (const auto& [c, box] : real_boxes)
      if (c == cls) r.push_back(box);
    if (g.empty() && r.empty()) continue;
    total += assignment_total_iou(g, r);
    denom += static_cast<double>(std::max(g.size(), r.size()));
  }
  if (denom == 0.0) return 1.0;  // vacuous agreement
  return total / denom;
}

}  // namespace animlayout
