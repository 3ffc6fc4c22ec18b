// Copyright 2026 The tinytrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TINYTRACK_EVALUATOR_HPP_
#define TINYTRACK_EVALUATOR_HPP_

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "tinytrack/geometry.hpp"

namespace tinytrack {

// Keyframe annotations: at most one box per (frame, gt_id). Frames between
// two consecutive keyframes of the same id are linearly interpolated.
struct Annotation {
  int frame = 0;
  int gt_id = 0;
  Rect bbox;
};

struct AnnotationSet {
  std::vector<Annotation> entries;
  int keyframe_stride = 10;
};

// One labelled box on one frame, on either side of the evaluation.
struct LabelledBox {
  int id = 0;
  BoxF box;
};

// frame index -> boxes present on that frame
using BoxSeries = std::map<int, std::vector<LabelledBox>>;

struct EvalConfig {
  int window = 10;                  // frames per association window (K)
  double distance_threshold = 50.0; // reciprocal-IoU gate (== IoU 0.02)
  double iou_epsilon = 1e-6;        // added to IoU before taking reciprocals

  void validate() const;
};

struct FrameEvents {
  int frame = 0;
  int gt = 0;
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int idsw = 0;
};

struct EventCounts {
  std::vector<FrameEvents> per_frame;
  long long tp = 0, fp = 0, fn = 0, idsw = 0, gt = 0;
  double iou_sum = 0.0;    // sum of matched IoUs
  long long match_count = 0;
};

struct MetricsReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double jaccard = 0.0;
  double mota = 0.0;  // -inf when GT is empty but FP/IDSW exist
  double motp = 0.0;
};

struct FrameMatch {
  int hyp_id = 0;
  int gt_id = 0;
  double iou = 0.0;
};

// frame index -> accepted matches on that frame
using MatchSeries = std::map<int, std::vector<FrameMatch>>;

// Linear interpolation between consecutive keyframes of each gt id over
// [frame_begin, frame_end]; outside an id's keyframe span no box is emitted.
BoxSeries interpolate_ground_truth(const AnnotationSet& annotations,
                                   int frame_begin, int frame_end);

// Intersection over union of half-open rectangles; 0 for disjoint boxes.
double iou(const BoxF& a, const BoxF& b);

// Reciprocal-IoU cost matrix: entry (i, j) = 1 / (iou + epsilon),
// hypotheses as rows, ground truths as columns.
Eigen::MatrixXd cost_matrix(const std::vector<LabelledBox>& hypotheses,
                            const std::vector<LabelledBox>& ground_truths,
                            double epsilon);

// Protocol steps 1-4: per-frame Hungarian matching inside windows of
// `config.window` frames, discarding matched pairs whose distance exceeds
// config.distance_threshold. Frames are processed in index order; the
// window is identity bookkeeping for the IDSW count downstream.
MatchSeries associate_window(const BoxSeries& hypotheses,
                             const BoxSeries& ground_truths,
                             const EvalConfig& config);

// TP/FP/FN per frame plus identity switches: a gt whose matched hypothesis
// id differs from the one at its most recent previously matched frame
// counts one IDSW (carried across window boundaries).
EventCounts count_events(const MatchSeries& matches,
                         const BoxSeries& hypotheses,
                         const BoxSeries& ground_truths);

// Precision, Recall, F1, Jaccard, MOTA, MOTP with explicit zero-denominator
// conventions (see README).
MetricsReport metrics(const EventCounts& counts);

struct EvaluationResult {
  EventCounts counts;
  MetricsReport report;
};

// End-to-end: associate, count, score.
EvaluationResult evaluate(const BoxSeries& hypotheses,
                          const BoxSeries& ground_truths,
                          const EvalConfig& config);

}  // namespace tinytrack

#endif  // TINYTRACK_EVALUATOR_HPP_
